// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and runtime
// bounds are fixed below. Exit status is nonzero when a criterion fails,
// except for criteria listed in kKnownUnattainable, which must still print
// their FAIL line with the reason.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "modcoh/extension.hpp"
#include "modcoh/liecoh.hpp"
#include "modcoh/modular.hpp"
#include "modcoh/spacetime.hpp"
#include "oracle.hpp"

using namespace modcoh;

namespace {

constexpr double kTol = 1e-10;

struct Verdict {
  bool pass;
  std::string detail;
  bool rest_ok = true;  // parts of the criterion outside a known-unattainable clause
};

struct Criterion {
  int id;
  const char* name;
  double bound_s;  // 0: no runtime bound
  std::function<Verdict()> run;
};

// criterion id -> why it cannot pass as stated
const std::map<int, const char*> kKnownUnattainable = {
    {4, "|Z^2(Z2,Z2)| = 4 (|C^1| = 4, |Hom| = 2, |B^2| = 2), so the classes have sizes {2,2}, not {4,4}"},
};

const std::vector<std::string> kGroups = {"z2", "z3", "z4", "klein4", "s3", "q8"};
const std::vector<std::string> kCoeffs = {"z2", "z3", "z4", "klein4"};

group::Cochain random_cochain(const group::FiniteGroup& p, const group::AbelianCoefficients& a, std::size_t n,
                              std::mt19937_64& rng) {
  group::Cochain f(p, a, n);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(a.size() - 1));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = pick(rng);
  return f;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

Verdict c1_complex() {
  std::mt19937_64 rng(20240601);
  std::size_t checked = 0;
  for (const auto& pn : kGroups)
    for (const auto& an : kCoeffs) {
      const auto p = group::builtin_group(pn);
      const auto a = group::AbelianCoefficients::parse(an);
      for (std::size_t n = 0; n <= 1; ++n)
        for (int k = 0; k < 50; ++k) {
          const auto f = random_cochain(p, a, n, rng);
          if (!group::coboundary(group::coboundary(f)).is_zero())
            return {false, "d d != 0 for " + pn + ", " + an + ", n=" + std::to_string(n)};
          ++checked;
        }
    }
  return {true, std::to_string(checked) + " cochains, d_{n+1} d_n = 0 exactly"};
}

Verdict c2_h1_hom() {
  for (const auto& pn : kGroups)
    for (const auto& an : kCoeffs) {
      const auto p = group::builtin_group(pn);
      const auto a = group::AbelianCoefficients::parse(an);
      const auto h1 = group::cohomology_group(p, a, 1).order();
      const auto homs = oracle::hom_count(p, oracle::abelian(a));
      if (h1 != homs)
        return {false, pn + ", " + an + ": |H^1| = " + h1.get_str() + ", oracle " + std::to_string(homs)};
    }
  return {true, "24 pairs match the brute-force Hom count"};
}

Verdict c3_h2_oracle() {
  std::size_t pairs = 0;
  for (const auto& pn : kGroups)
    for (const auto& an : kCoeffs) {
      const auto p = group::builtin_group(pn);
      const auto a = group::AbelianCoefficients::parse(an);
      if (std::pow(static_cast<double>(a.size()), static_cast<double>(p.order() * p.order())) > (1 << 20)) continue;
      const auto oa = oracle::abelian(a);
      const auto z = oracle::all_2cocycles(p, oa);
      const auto b = oracle::all_2coboundaries(p, oa);
      const auto expect = oracle::quotient_structure(z, b, oa);
      const auto got = group::cohomology_group(p, a, 2).invariant_factors;
      if (got != expect) return {false, pn + ", " + an + ": linear algebra and enumeration disagree"};
      ++pairs;
    }
  return {true, std::to_string(pairs) + " pairs with |A|^(|P|^2) <= 2^20 agree"};
}

Verdict c4_extensions() {
  const auto p = group::builtin_group("z2");
  const group::AbelianCoefficients a({2});
  group::Cochain nontrivial(p, a, 2), trivial(p, a, 2);
  nontrivial[nontrivial.index_of(std::vector<std::size_t>{1, 1})] = 1;
  const auto e1 = ext::build_extension(p, a, nontrivial);
  const auto e0 = ext::build_extension(p, a, trivial);
  bool cyclic4 = false;
  for (std::size_t g = 0; g < e1.carrier.order(); ++g) cyclic4 |= e1.carrier.element_order(g) == 4;
  bool klein = e0.carrier.order() == 4 && e0.carrier.is_abelian();
  for (std::size_t g = 0; g < e0.carrier.order(); ++g)
    if (g != e0.carrier.identity()) klein &= e0.carrier.element_order(g) == 2;

  const auto z2 = group::enumerate_cocycles(p, a, 2);
  std::vector<std::size_t> cls(z2.size(), SIZE_MAX);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < z2.size(); ++i) {
    if (cls[i] != SIZE_MAX) continue;
    cls[i] = sizes.size();
    sizes.push_back(1);
    const auto ei = ext::build_extension(p, a, z2[i]);
    for (std::size_t j = i + 1; j < z2.size(); ++j)
      if (cls[j] == SIZE_MAX && ext::are_equivalent(ei, ext::build_extension(p, a, z2[j]))) {
        cls[j] = cls[i];
        ++sizes.back();
      }
  }
  std::sort(sizes.begin(), sizes.end());
  const bool partition = sizes == std::vector<std::size_t>{4, 4};
  std::string d = std::string("nontrivial -> ") + (cyclic4 ? "Z4" : "not Z4") + ", trivial -> " +
                  (klein ? "Klein four" : "not Klein four") + ", class sizes " + join(sizes) + " (stated {4,4})";
  return {cyclic4 && klein && partition, d, cyclic4 && klein};
}

Verdict c5_round_trip() {
  std::size_t n = 0;
  for (const char* pn : {"z2", "klein4"}) {
    const auto p = group::builtin_group(pn);
    const group::AbelianCoefficients a({2});
    for (const auto& w : group::enumerate_cocycles(p, a, 2)) {
      const auto e = ext::build_extension(p, a, w);
      const auto s = ext::extract_section(e, ext::SectionConvention::canonical);
      if (!(ext::cocycle_of_section(e, s) == w)) return {false, std::string("round trip fails over ") + pn};
      ++n;
    }
  }
  return {true, std::to_string(n) + " cocycles recovered exactly"};
}

Verdict c6_splitting() {
  const auto z4 = group::builtin_group("z4");
  const auto z2 = group::builtin_group("z2");
  const group::AbelianCoefficients a({2});
  group::Cochain w(z2, a, 2);
  w[w.index_of(std::vector<std::size_t>{1, 1})] = 1;
  const group::GroupHom sigma(z4, z2, {0, 1, 0, 1});
  const auto infl = group::inflation(sigma, w).cochain;
  const auto phi = group::CoboundarySolver(z4, a, 2).solve(infl);
  if (!phi) return {false, "inflated cocycle is not a coboundary"};
  const auto e = ext::build_extension(z2, a, w);
  const auto u = ext::construct_splitting(z4, sigma, e, *phi);
  for (std::size_t g = 0; g < 4; ++g)
    if (e.projection(u(g)) != sigma(g)) return {false, "pi U != sigma"};
  if (group::GroupHom::first_violation(z4, e.carrier, u.images())) return {false, "U is not a homomorphism"};
  return {true, "U = " + join(u.images()) + ", homomorphism with pi U = sigma"};
}

Verdict c7_lie() {
  const auto p4 = lie::poincare(4), p2 = lie::poincare(2);
  const bool perfect4 = lie::is_perfect(p4);
  const auto h2_p4 = liecoh::lie_cohomology_dim(p4, 2);
  const bool perfect2 = lie::is_perfect(p2);
  const auto h2_ab = liecoh::lie_cohomology_dim(lie::abelian(2), 2);
  const auto h2_p2 = liecoh::lie_cohomology_dim(p2, 2);
  const bool ok = perfect4 && h2_p4 == 0 && !perfect2 && h2_ab == 1 && h2_p2 == 1;
  return {ok, std::string("poincare4 perfect=") + (perfect4 ? "true" : "false") + " H2=" + std::to_string(h2_p4) +
                  ", poincare2 perfect=" + (perfect2 ? "true" : "false") + " H2=" + std::to_string(h2_p2) +
                  ", abelian2 H2=" + std::to_string(h2_ab)};
}

Verdict c8_boosts() {
  const auto six = spacetime::boost_generation(spacetime::six_wedges());
  const auto coord = spacetime::boost_generation(spacetime::coordinate_wedges());
  return {six.closure_dim == 10 && coord.closure_dim == 6,
          "six wedges close to " + std::to_string(six.closure_dim) + ", coordinate wedges to " +
              std::to_string(coord.closure_dim)};
}

Verdict c9_ideals() {
  const auto g = lie::poincare(4);
  const auto t = lie::translation_ideal(g);
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.dim(); ++i, ++n)
    if (!lie::ideal_closure(g, lie::LieElement::basis(g, i)).contains(t))
      return {false, "ideal of " + g.labels()[i] + " misses the translations"};
  std::mt19937_64 rng(9001);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  while (n < 110) {
    lie::RationalVector v(g.dim());
    for (auto& c : v) {
      c = lie::Rational(num(rng), den(rng));
      c.canonicalize();
    }
    const lie::LieElement x(g, v);
    if (x.is_zero()) continue;
    if (!lie::ideal_closure(g, x).contains(t)) return {false, "ideal of " + x.to_string() + " misses the translations"};
    ++n;
  }
  return {true, std::to_string(n) + " ideals contain span(P0..P3)"};
}

Verdict c10_tomita() {
  using namespace modular;
  const auto m = m2_tensor_one();
  const auto mc = commutant(m);
  const std::vector<double> ts = {0.1, 0.5, 1.0, std::numbers::pi};
  double worst = 0;
  for (double p : {0.5, 2.0 / 3.0, 0.9}) {
    const auto omega = entangled_state(p);
    const auto t = tomita(m, omega);
    std::vector<double> expect = {p / (1 - p), (1 - p) / p, 1, 1};
    std::sort(expect.rbegin(), expect.rend());
    const auto spec = t.spectrum();
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(spec[i] - expect[i]));
    worst = std::max(worst, modular_flow_defect(t, m, ts));
    worst = std::max(worst, kms_defect(m, omega, t.delta, 100, 77));
    worst = std::max(worst, subspace_distance(reflect(t, m), mc));
    worst = std::max(worst, operator_norm(tomita(mc, omega).delta - t.delta_power(-1)));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst defect %.2e over p in {1/2, 2/3, 0.9} (tol %.0e)", worst, kTol);
  return {worst <= kTol, buf};
}

Verdict c11_correspondence() {
  const auto z4 = group::builtin_group("z4");
  const auto z2 = group::builtin_group("z2");
  const group::AbelianCoefficients a({2});
  const auto r = ext::h1_h2_correspondence_check(z4, group::GroupHom(z4, z2, {0, 1, 0, 1}), a);
  std::string d = "|H^1(S,A)| = " + std::to_string(r.h1_order) + ", |H^2(P,A)| = " + r.h2_order.get_str();
  for (const auto& c : r.classes) {
    std::vector<std::size_t> psi(c.psi.begin(), c.psi.end());
    d += ", class -> psi " + join(psi);
  }
  return {r.h1_order == 2 && r.h2_order == 2 && r.applicable && r.bijective, d};
}

Verdict c12_negative() {
  // corrupted constants: sl2 with one structure constant changed
  const auto sl = lie::sl2();
  auto c = sl.constants();
  const std::size_t d = sl.dim();
  bool altered = false;
  for (std::size_t k = 0; k < d && !altered; ++k)
    if (c[(0 * d + 1) * d + k] != 0) {
      c[(0 * d + 1) * d + k] *= 3;
      c[(1 * d + 0) * d + k] *= 3;
      altered = true;
    }
  const auto bad = lie::LieAlgebra::from_constants("sl2-corrupt", sl.labels(), c);
  const auto v = lie::validate(bad);
  const bool jacobi_fails = !v.ok() && v.jacobi_triple.has_value();

  const auto z3 = group::builtin_group("z3");
  const group::AbelianCoefficients a({2});
  group::Cochain w(z3, a, 2);
  w[w.index_of(std::vector<std::size_t>{1, 1})] = 1;
  std::string triple = "none";
  try {
    ext::build_extension(z3, a, w);
  } catch (const ext::NotACocycle& e) {
    triple = "(" + std::to_string(e.triple()[0]) + "," + std::to_string(e.triple()[1]) + "," +
             std::to_string(e.triple()[2]) + ")";
  }

  const auto m = modular::m2_tensor_one();
  const auto t = modular::tomita(m, modular::entangled_state(2.0 / 3.0));
  const double wrong = modular::modular_flow_defect(modular::swap_top_eigenvalues(t.delta), m,
                                                    {0.1, 0.5, 1.0, std::numbers::pi});
  char buf[160];
  std::snprintf(buf, sizeof buf, "Jacobi %s, non-cocycle rejected at %s, wrong-Delta flow defect %.3f",
                jacobi_fails ? "fails" : "holds", triple.c_str(), wrong);
  return {jacobi_fails && triple != "none" && wrong > 0.1, buf};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cochain complex d d = 0", 10, c1_complex},
      {2, "H^1 = Hom", 5, c2_h1_hom},
      {3, "H^2 linear algebra = enumeration", 60, c3_h2_oracle},
      {4, "extension semantics", 1, c4_extensions},
      {5, "section round trip", 0, c5_round_trip},
      {6, "splitting construction", 0, c6_splitting},
      {7, "Lie inputs", 30, c7_lie},
      {8, "boost generation", 1, c8_boosts},
      {9, "ideals contain translations", 5, c9_ideals},
      {10, "Tomita suite", 5, c10_tomita},
      {11, "H^1(S,A) vs H^2(P,A)", 0, c11_correspondence},
      {12, "negative controls", 0, c12_negative},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = v.pass;
    std::string timing = std::to_string(secs).substr(0, 5) + " s";
    if (c.bound_s > 0) {
      timing += " < " + std::to_string(static_cast<int>(c.bound_s)) + " s";
      if (secs >= c.bound_s) {
        pass = false;
        timing += " EXCEEDED";
      }
    }
    std::printf("%s %2d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), timing.c_str());
    const auto known = kKnownUnattainable.find(c.id);
    if (known != kKnownUnattainable.end()) {
      std::printf("     unattainable as stated: %s\n", known->second);
      if (pass || !v.rest_ok) ++unexpected;  // stale list, or another clause broke
    } else if (!pass) {
      ++unexpected;
    }
  }
  return unexpected == 0 ? 0 : 1;
}
