#include "modcoh/extension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace modcoh::ext {

using group::CoboundarySolver;
using group::Integer;

namespace {

std::vector<std::vector<std::size_t>> carrier_rows(const FiniteGroup& p, const AbelianCoefficients& a,
                                                   const Cochain& w) {
  const std::size_t np = p.order(), n = a.size() * np;
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto ax = static_cast<std::uint32_t>(x / np), ay = static_cast<std::uint32_t>(y / np);
      const std::size_t px = x % np, py = y % np;
      rows[x][y] = a.sub(a.add(ax, ay), w.at(px, py)) * np + p.mul(px, py);
    }
  return rows;
}

}  // namespace

CentralExtensionTable build_extension(const FiniteGroup& p, const AbelianCoefficients& a, const Cochain& w) {
  if (w.degree() != 2 || !w.group().same_as(p) || !(w.coefficients() == a))
    throw InvalidArgument("cocycle must be a 2-cochain on the base group with values in the kernel");
  const auto rows = carrier_rows(p, a, w);
  // Associativity of the carrier is equivalent to the cocycle condition; scan
  // it directly so a failure names a concrete triple of base elements.
  const std::size_t np = p.order();
  for (std::size_t x = 0; x < np; ++x)
    for (std::size_t y = 0; y < np; ++y)
      for (std::size_t z = 0; z < np; ++z)
        if (rows[rows[x][y]][z] != rows[x][rows[y][z]])
          throw NotACocycle({x, y, z}, "2-cochain is not a cocycle: multiplication fails associativity on (" +
                                           std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z) +
                                           ")");
  const std::uint32_t w11 = w.at(p.identity(), p.identity());
  FiniteGroup g = FiniteGroup::from_table(a.name() + "." + p.name(), rows, w11 * np + p.identity());
  std::vector<std::size_t> proj(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) proj[x] = x % np;
  GroupHom pi(g, p, std::move(proj));
  std::vector<std::size_t> emb(a.size());
  for (std::uint32_t c = 0; c < a.size(); ++c) emb[c] = a.add(c, w11) * np + p.identity();
  CentralExtensionTable e{p, a, w, std::move(g), std::move(pi), std::move(emb)};
  if (!check_exactness(e).ok()) throw std::logic_error("built extension fails exactness");
  return e;
}

ExactnessReport check_exactness(const CentralExtensionTable& e) {
  ExactnessReport r;
  const FiniteGroup& g = e.carrier;
  r.order_ok = g.order() == e.kernel.size() * e.base.order();
  r.surjective_ok = e.projection.is_surjective();
  std::vector<std::size_t> image(e.embedding);
  std::sort(image.begin(), image.end());
  r.injective_ok = std::adjacent_find(image.begin(), image.end()) == image.end();
  for (std::uint32_t a = 0; a < e.kernel.size() && r.injective_ok; ++a)
    for (std::uint32_t b = 0; b < e.kernel.size() && r.injective_ok; ++b)
      r.injective_ok = g.mul(e.embedding[a], e.embedding[b]) == e.embedding[e.kernel.add(a, b)];
  auto kernel = e.projection.kernel();
  std::sort(kernel.begin(), kernel.end());
  r.kernel_ok = kernel == image;
  r.central_ok = true;
  for (auto z : e.embedding)
    for (std::size_t x = 0; x < g.order() && r.central_ok; ++x) r.central_ok = g.mul(z, x) == g.mul(x, z);
  return r;
}

Section extract_section(const CentralExtensionTable& e, SectionConvention convention, std::uint64_t seed) {
  Section s;
  s.values.resize(e.base.order());
  std::mt19937_64 rng(seed);
  for (std::size_t p = 0; p < e.base.order(); ++p) {
    const std::uint32_t a =
        convention == SectionConvention::canonical ? 0 : static_cast<std::uint32_t>(rng() % e.kernel.size());
    s.values[p] = e.encode(a, p);
  }
  return s;
}

namespace {

void require_section(const CentralExtensionTable& e, const Section& s) {
  if (s.values.size() != e.base.order()) throw InvalidArgument("section has wrong length");
  for (std::size_t p = 0; p < s.values.size(); ++p)
    if (s.values[p] >= e.carrier.order() || e.projection(s.values[p]) != p)
      throw InvalidArgument("not a section: pi(s(" + std::to_string(p) + ")) != " + std::to_string(p));
}

std::uint32_t embedding_inverse(const CentralExtensionTable& e, std::size_t g) {
  const auto it = std::find(e.embedding.begin(), e.embedding.end(), g);
  if (it == e.embedding.end()) throw std::logic_error("element is not in the kernel");
  return static_cast<std::uint32_t>(it - e.embedding.begin());
}

}  // namespace

Cochain cocycle_of_section(const CentralExtensionTable& e, const Section& s) {
  require_section(e, s);
  const FiniteGroup& g = e.carrier;
  Cochain w(e.base, e.kernel, 2);
  for (std::size_t p = 0; p < e.base.order(); ++p)
    for (std::size_t q = 0; q < e.base.order(); ++q) {
      const std::size_t prod = g.mul(s.values[p], s.values[q]);
      const std::size_t k = g.mul(s.values[e.base.mul(p, q)], g.inverse(prod));
      w[p * e.base.order() + q] = embedding_inverse(e, k);
    }
  return w;
}

Cochain section_difference(const CentralExtensionTable& e, const Section& s1, const Section& s2) {
  require_section(e, s1);
  require_section(e, s2);
  Cochain d(e.base, e.kernel, 1);
  for (std::size_t p = 0; p < e.base.order(); ++p)
    d[p] = embedding_inverse(e, e.carrier.mul(e.carrier.inverse(s1.values[p]), s2.values[p]));
  return d;
}

namespace {

std::optional<std::vector<std::size_t>> equivalence_map(const CentralExtensionTable& e1,
                                                        const CentralExtensionTable& e2, const Cochain& phi) {
  const std::size_t n = e2.carrier.order();
  std::vector<std::size_t> m(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t p = e2.base_part(x);
    m[x] = e1.encode(e1.kernel.add(e2.kernel_part(x), phi[p]), p);
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (e1.projection(m[x]) != e2.projection(x)) return std::nullopt;
    for (std::size_t y = 0; y < n; ++y)
      if (m[e2.carrier.mul(x, y)] != e1.carrier.mul(m[x], m[y])) return std::nullopt;
  }
  for (std::uint32_t a = 0; a < e2.kernel.size(); ++a)
    if (m[e2.embedding[a]] != e1.embedding[a]) return std::nullopt;
  return m;
}

std::optional<Cochain> exhaustive_preimage(const Cochain& target) {
  for (const auto& phi : group::enumerate_cochains(target.group(), target.coefficients(), 1,
                                                   kExhaustiveEquivalenceLimit))
    if (group::coboundary(phi) == target) return phi;
  return std::nullopt;
}

}  // namespace

std::optional<Equivalence> are_equivalent(const CentralExtensionTable& e1, const CentralExtensionTable& e2) {
  if (!e1.base.same_as(e2.base)) throw InvalidArgument("extensions have different base groups");
  if (!(e1.kernel == e2.kernel)) throw InvalidArgument("extensions have different kernels");
  const Cochain diff = e1.cocycle - e2.cocycle;
  CoboundarySolver solver(e1.base, e1.kernel, 2);
  auto phi = solver.solve(diff);
  const double space = std::pow(static_cast<double>(e1.kernel.size()), static_cast<double>(e1.base.order()));
  if (space <= kExhaustiveEquivalenceLimit) {
    const auto brute = exhaustive_preimage(diff);
    if (brute.has_value() != phi.has_value())
      throw std::logic_error("linear and exhaustive equivalence searches disagree");
  }
  if (!phi) return std::nullopt;
  auto m = equivalence_map(e1, e2, *phi);
  if (!m) throw std::logic_error("equivalence witness does not induce an isomorphism");
  return Equivalence{std::move(*phi), std::move(*m)};
}

std::optional<GroupHom> is_split(const CentralExtensionTable& e) {
  CoboundarySolver solver(e.base, e.kernel, 2);
  const auto phi = solver.solve(e.cocycle);
  if (!phi) return std::nullopt;
  std::vector<std::size_t> s(e.base.order());
  for (std::size_t p = 0; p < s.size(); ++p) s[p] = e.encode((*phi)[p], p);
  return GroupHom(e.base, e.carrier, std::move(s));
}

GroupHom construct_splitting(const FiniteGroup& e_group, const GroupHom& sigma, const CentralExtensionTable& e,
                             const Cochain& phi) {
  if (!sigma.source().same_as(e_group) || !sigma.target().same_as(e.base))
    throw InvalidArgument("sigma must map the covering group onto the extension's base");
  if (phi.degree() != 1 || !phi.group().same_as(e_group) || !(phi.coefficients() == e.kernel))
    throw InvalidArgument("phi must be a 1-cochain on the covering group with values in the kernel");
  const Cochain inflated = group::inflation(sigma, e.cocycle).cochain;
  const Cochain dphi = group::coboundary(phi);
  const std::size_t n = e_group.order();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (dphi.at(g, h) != inflated.at(g, h))
        throw SplittingRejected({g, h}, "d phi differs from the inflated cocycle at (" + std::to_string(g) + ", " +
                                            std::to_string(h) + ")");
  std::vector<std::size_t> u(n);
  for (std::size_t g = 0; g < n; ++g) u[g] = e.encode(phi[g], sigma(g));
  GroupHom hom(e_group, e.carrier, std::move(u));
  for (std::size_t g = 0; g < n; ++g)
    if (e.projection(hom(g)) != sigma(g)) throw std::logic_error("splitting does not lift sigma");
  return hom;
}

std::vector<Cochain> class_representatives(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t limit) {
  const auto h2 = group::cohomology_group(p, a, 2);
  if (h2.order() > limit)
    throw SizeLimitExceeded("class enumeration", h2.order().get_d(), static_cast<double>(limit));
  const auto z2 = group::cocycle_space(p, a, 2);
  CoboundarySolver solver(p, a, 2);
  std::vector<Cochain> reps{Cochain(p, a, 2)};
  std::set<std::vector<Integer>> seen{solver.class_coordinates(reps[0])};
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& gen : z2.generators) {
      Cochain next = reps[i] + gen;
      if (seen.insert(solver.class_coordinates(next)).second) reps.push_back(std::move(next));
    }
  if (reps.size() != h2.order()) throw std::logic_error("class enumeration does not match |H^2|");
  // normalize: the constant 1-cochain c has d_1 c = c everywhere
  for (auto& w : reps) {
    const auto c = w.at(p.identity(), p.identity());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.sub(w[i], c);
  }
  return reps;
}

CorrespondenceReport h1_h2_correspondence_check(const FiniteGroup& e_group, const GroupHom& sigma,
                                                const AbelianCoefficients& a) {
  if (!sigma.source().same_as(e_group)) throw InvalidArgument("sigma must be defined on E");
  if (!sigma.is_surjective()) throw InvalidArgument("sigma must be surjective");
  const FiniteGroup& p = sigma.target();
  CorrespondenceReport r;
  r.kernel_elements = sigma.kernel();
  for (auto s : r.kernel_elements)
    for (std::size_t g = 0; g < e_group.order(); ++g)
      if (e_group.mul(s, g) != e_group.mul(g, s)) throw InvalidArgument("ker sigma is not central in E");
  const FiniteGroup s_group = e_group.subgroup(r.kernel_elements, "ker");
  r.h1_order = group::hom_group(s_group, a).size();
  r.h2_order = group::cohomology_group(p, a, 2).order();

  // Restrictions of Hom(E, A) to S: psi is only defined modulo these.
  std::set<std::vector<std::uint32_t>> restrictions;
  for (const auto& chi : group::hom_group(e_group, a)) {
    std::vector<std::uint32_t> v;
    for (auto s : r.kernel_elements) v.push_back(static_cast<std::uint32_t>(chi(s)));
    restrictions.insert(std::move(v));
  }
  r.restriction_ambiguity = restrictions.size();

  CoboundarySolver p_solver(p, a, 2);
  CoboundarySolver e_solver(e_group, a, 2);
  r.applicable = true;
  for (auto& w : class_representatives(p, a)) {
    CorrespondenceEntry entry{w, p_solver.class_coordinates(w), std::nullopt, {}};
    entry.phi = e_solver.solve(group::inflation(sigma, w).cochain);
    if (entry.phi) {
      const std::uint32_t phi1 = (*entry.phi)[e_group.identity()];
      std::vector<std::uint32_t> psi;
      for (auto s : r.kernel_elements) psi.push_back(a.sub((*entry.phi)[s], phi1));
      std::vector<std::uint32_t> best;
      for (const auto& chi : restrictions) {
        std::vector<std::uint32_t> cand(psi.size());
        for (std::size_t k = 0; k < psi.size(); ++k) cand[k] = a.add(psi[k], chi[k]);
        if (best.empty() || cand < best) best = std::move(cand);
      }
      entry.psi = best.empty() ? psi : best;
    } else {
      r.applicable = false;
    }
    r.classes.push_back(std::move(entry));
  }
  if (r.applicable) {
    std::set<std::vector<std::uint32_t>> images;
    for (const auto& c : r.classes) images.insert(c.psi);
    r.injective = images.size() == r.classes.size();
    r.bijective = r.injective && r.classes.size() == r.h1_order && r.restriction_ambiguity == 1;
  } else {
    r.note = "correspondence not applicable: some class of H^2(P, A) does not split after inflation to E";
  }
  return r;
}

}  // namespace modcoh::ext
