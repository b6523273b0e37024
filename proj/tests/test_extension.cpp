#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "modcoh/extension.hpp"
#include "oracle.hpp"

using namespace modcoh::ext;
using modcoh::group::builtin_group;
using modcoh::group::CoboundarySolver;

namespace {

Cochain random_cocycle(const FiniteGroup& p, const AbelianCoefficients& a, std::mt19937_64& rng) {
  const auto reps = class_representatives(p, a);
  Cochain phi(p, a, 1);
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = static_cast<std::uint32_t>(rng() % a.size());
  return reps[rng() % reps.size()] + modcoh::group::coboundary(phi);
}

// The defect f(y,z) - f(xy,z) + f(x,yz) - f(x,y) computed from tables.
std::uint32_t cocycle_defect(const Cochain& f, std::size_t x, std::size_t y, std::size_t z) {
  const auto& p = f.group();
  const auto& a = f.coefficients();
  return a.sub(a.add(a.sub(f.at(y, z), f.at(p.mul(x, y), z)), f.at(x, p.mul(y, z))), f.at(x, y));
}

oracle::Table table_of(const Cochain& c) { return {c.values().begin(), c.values().end()}; }

const std::vector<std::pair<const char*, const char*>> kCases = {
    {"z2", "z2"}, {"z3", "z3"}, {"z4", "z2"}, {"klein4", "z2"}, {"s3", "z2"}, {"q8", "z2"}, {"z2", "2,2"}};

}  // namespace

TEST_CASE("extension tables follow the multiplication rule and are exact") {
  std::mt19937_64 rng(51);
  for (const auto& [g, c] : kCases) {
    CAPTURE(g);
    CAPTURE(c);
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    for (int trial = 0; trial < 4; ++trial) {
      const auto w = random_cocycle(p, a, rng);
      const auto e = build_extension(p, a, w);
      CHECK(e.carrier.order() == p.order() * a.size());
      for (std::uint32_t x = 0; x < a.size(); ++x)
        for (std::size_t u = 0; u < p.order(); ++u)
          for (std::uint32_t y = 0; y < a.size(); ++y)
            for (std::size_t v = 0; v < p.order(); ++v) {
              const auto prod = e.carrier.mul(e.encode(x, u), e.encode(y, v));
              CHECK(e.kernel_part(prod) == a.sub(a.add(x, y), w.at(u, v)));
              CHECK(e.base_part(prod) == p.mul(u, v));
            }
      const auto r = check_exactness(e);
      CHECK(r.ok());
      CHECK(e.carrier.identity() == e.encode(w.at(p.identity(), p.identity()), p.identity()));
    }
  }
}

TEST_CASE("non-cocycles are rejected with a failing triple") {
  std::mt19937_64 rng(52);
  for (const auto& [g, c] : kCases) {
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    auto w = random_cocycle(p, a, rng);
    w[1 + rng() % (w.size() - 1)] = a.add(w[1], 1);
    w[w.size() - 1] = a.add(w[w.size() - 1], 1);
    if (modcoh::group::coboundary(w).is_zero()) continue;
    try {
      build_extension(p, a, w);
      FAIL("expected NotACocycle");
    } catch (const NotACocycle& ex) {
      const auto t = ex.triple();
      CHECK(cocycle_defect(w, t[0], t[1], t[2]) != 0);
    }
  }
}

TEST_CASE("section cocycles") {
  std::mt19937_64 rng(53);
  for (const auto& [g, c] : kCases) {
    CAPTURE(g);
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    const auto w = random_cocycle(p, a, rng);
    const auto e = build_extension(p, a, w);
    const auto s0 = extract_section(e, SectionConvention::canonical);
    CHECK(cocycle_of_section(e, s0) == w);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto s = extract_section(e, SectionConvention::random, seed);
      for (std::size_t q = 0; q < p.order(); ++q) CHECK(e.projection(s.values[q]) == q);
      const auto ws = cocycle_of_section(e, s);
      CHECK(modcoh::group::coboundary(ws).is_zero());
      const auto d = section_difference(e, s0, s);
      CHECK(ws == w - modcoh::group::coboundary(d));
      CHECK(CoboundarySolver(p, a, 2).is_coboundary(ws - w));
    }
    // the same seed reproduces the same section
    CHECK(extract_section(e, SectionConvention::random, 9).values ==
          extract_section(e, SectionConvention::random, 9).values);
  }
}

TEST_CASE("equivalence matches the coboundary relation and yields an isomorphism") {
  std::mt19937_64 rng(54);
  for (const auto& [g, c] : std::vector<std::pair<const char*, const char*>>{{"z2", "z2"}, {"z3", "z3"}, {"z4", "z2"},
                                                                            {"klein4", "z2"}}) {
    CAPTURE(g);
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    const auto b = oracle::all_2coboundaries(p, oracle::abelian(a));
    for (int trial = 0; trial < 8; ++trial) {
      const auto w1 = random_cocycle(p, a, rng), w2 = random_cocycle(p, a, rng);
      const auto e1 = build_extension(p, a, w1), e2 = build_extension(p, a, w2);
      const auto eq = are_equivalent(e1, e2);
      CHECK(eq.has_value() == (b.count(table_of(w1 - w2)) == 1));
      if (!eq) continue;
      CHECK(w1 - w2 == modcoh::group::coboundary(eq->phi));
      const auto& m = eq->map;
      std::set<std::size_t> image(m.begin(), m.end());
      CHECK(image.size() == m.size());
      for (std::size_t x = 0; x < m.size(); ++x) {
        CHECK(e1.projection(m[x]) == e2.projection(x));
        for (std::size_t y = 0; y < m.size(); ++y) CHECK(m[e2.carrier.mul(x, y)] == e1.carrier.mul(m[x], m[y]));
      }
      for (std::uint32_t k = 0; k < a.size(); ++k) CHECK(m[e2.embedding[k]] == e1.embedding[k]);
    }
  }
}

TEST_CASE("cocycles fall into |H^2| classes of size |B^2|") {
  for (const auto& [g, c] : std::vector<std::pair<const char*, const char*>>{{"z2", "z2"}, {"z3", "z3"}, {"z4", "z2"}}) {
    CAPTURE(g);
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    const auto z = modcoh::group::enumerate_cocycles(p, a, 2);
    std::vector<CentralExtensionTable> tables;
    for (const auto& w : z) tables.push_back(build_extension(p, a, w));
    std::vector<std::size_t> cls(z.size(), z.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (cls[i] != z.size()) continue;
      for (std::size_t j = i; j < z.size(); ++j)
        if (cls[j] == z.size() && are_equivalent(tables[i], tables[j])) cls[j] = n;
      ++n;
    }
    std::map<std::size_t, std::size_t> sizes;
    for (auto k : cls) ++sizes[k];
    const auto h2 = modcoh::group::cohomology_group(p, a, 2).order();
    const auto b2 = oracle::all_2coboundaries(p, oracle::abelian(a)).size();
    CHECK(n == h2);
    for (const auto& [k, s] : sizes) CHECK(s == b2);
    CHECK(class_representatives(p, a).size() == n);
  }
  // Z^2(Z2, Z2) has four elements, so each of the two classes has two
  const auto z = modcoh::group::enumerate_cocycles(builtin_group("z2"), AbelianCoefficients({2}), 2);
  CHECK(z.size() == 4);
}

TEST_CASE("class representatives are normalized, pairwise inequivalent and start at zero") {
  for (const auto& [g, c] : kCases) {
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    const auto reps = class_representatives(p, a);
    REQUIRE(!reps.empty());
    CHECK(reps.front().is_zero());
    CHECK(reps.size() == modcoh::group::cohomology_group(p, a, 2).order());
    const CoboundarySolver solver(p, a, 2);
    std::set<std::vector<Integer>> coords;
    for (const auto& r : reps) {
      CHECK(r.is_normalized());
      CHECK(modcoh::group::coboundary(r).is_zero());
      coords.insert(solver.class_coordinates(r));
    }
    CHECK(coords.size() == reps.size());
  }
}

TEST_CASE("splitting detection") {
  std::mt19937_64 rng(55);
  for (const auto& [g, c] : kCases) {
    const auto p = builtin_group(g);
    const auto a = AbelianCoefficients::parse(c);
    const CoboundarySolver solver(p, a, 2);
    for (int trial = 0; trial < 4; ++trial) {
      const auto w = random_cocycle(p, a, rng);
      const auto e = build_extension(p, a, w);
      const auto s = is_split(e);
      CHECK(s.has_value() == solver.is_coboundary(w));
      if (!s) continue;
      for (std::size_t q = 0; q < p.order(); ++q) CHECK(e.projection((*s)(q)) == q);
    }
  }
}

TEST_CASE("the nontrivial extension of Z2 by Z2 is cyclic of order four") {
  const auto p = builtin_group("z2");
  const AbelianCoefficients a({2});
  const auto reps = class_representatives(p, a);
  REQUIRE(reps.size() == 2);
  const auto e = build_extension(p, a, reps[1]);
  std::size_t max_order = 0;
  for (std::size_t x = 0; x < 4; ++x) max_order = std::max(max_order, e.carrier.element_order(x));
  CHECK(max_order == 4);
  CHECK_FALSE(is_split(e));
  const auto e0 = build_extension(p, a, reps[0]);
  for (std::size_t x = 0; x < 4; ++x) CHECK(e0.carrier.element_order(x) <= 2);
}

TEST_CASE("splitting on a covering group") {
  const auto z4 = builtin_group("z4"), z2 = builtin_group("z2");
  const AbelianCoefficients a({2});
  const GroupHom sigma(z4, z2, {0, 1, 0, 1});
  const auto w = class_representatives(z2, a)[1];
  const auto e = build_extension(z2, a, w);
  const auto inf = modcoh::group::inflation(sigma, w).cochain;
  const auto phi = CoboundarySolver(z4, a, 2).solve(inf);
  REQUIRE(phi);
  const auto u = construct_splitting(z4, sigma, e, *phi);
  for (std::size_t g = 0; g < 4; ++g) {
    CHECK(e.projection(u(g)) == sigma(g));
    CHECK(e.kernel_part(u(g)) == (*phi)[g]);
  }
  auto bad = *phi;
  bad[1] = a.add(bad[1], 1);
  CHECK_THROWS_AS(construct_splitting(z4, sigma, e, bad), SplittingRejected);
}

TEST_CASE("H^1 / H^2 correspondence") {
  const AbelianCoefficients z2a({2}), z3a({3});
  SUBCASE("Z4 onto Z2 with Z2 coefficients") {
    const auto r = h1_h2_correspondence_check(builtin_group("z4"), GroupHom(builtin_group("z4"), builtin_group("z2"),
                                                                            {0, 1, 0, 1}),
                                              z2a);
    CHECK(r.kernel_elements == std::vector<std::size_t>{0, 2});
    CHECK(r.h1_order == 2);
    CHECK(r.h2_order == 2);
    CHECK(r.applicable);
    CHECK(r.bijective);
    REQUIRE(r.classes.size() == 2);
    CHECK(r.classes[0].psi == std::vector<std::uint32_t>{0, 0});
    CHECK(r.classes[1].psi == std::vector<std::uint32_t>{0, 1});
  }
  SUBCASE("identity on Z2 does not kill the nontrivial class") {
    const auto z2 = builtin_group("z2");
    const auto r = h1_h2_correspondence_check(z2, GroupHom(z2, z2, {0, 1}), z2a);
    CHECK(r.h1_order == 1);
    CHECK(r.h2_order == 2);
    CHECK_FALSE(r.applicable);
    CHECK_FALSE(r.bijective);
  }
  SUBCASE("coprime coefficients give trivial groups") {
    const auto z2 = builtin_group("z2");
    const auto r = h1_h2_correspondence_check(z2, GroupHom(z2, z2, {0, 1}), z3a);
    CHECK(r.h2_order == 1);
    CHECK(r.applicable);
    CHECK(r.bijective);
  }
  SUBCASE("projection of the Klein group") {
    const auto v = builtin_group("klein4");
    const auto z2 = builtin_group("z2");
    std::optional<GroupHom> sigma;
    for (const auto& h : modcoh::group::homomorphisms(v, z2))
      if (h.is_surjective()) {
        sigma = h;
        break;
      }
    REQUIRE(sigma);
    const auto r = h1_h2_correspondence_check(v, *sigma, z2a);
    CHECK(r.h1_order == 2);
    CHECK_FALSE(r.applicable);
  }
}
