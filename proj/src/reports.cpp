#include "modcoh/reports.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modcoh/liecoh.hpp"

namespace modcoh::report {

using exact::Integer;

namespace {

json labels_of(const lie::LieAlgebra& g, std::span<const std::size_t> idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(g.labels()[i]);
  return out;
}

json basis_json(const lie::Subspace& s) {
  json out = json::array();
  for (const auto& b : s.basis()) out.push_back(b.to_string());
  return out;
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json integers(const std::vector<Integer>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(integer_json(x));
  return out;
}

json cohomology_json(const group::CohomologyGroup& h) {
  return {{"invariant_factors", integers(h.invariant_factors)},
          {"order", integer_json(h.order())},
          {"trivial", h.invariant_factors.empty()},
          {"text", h.to_string()}};
}

json section_json(const group::GroupHom& s) { return s.images(); }

}  // namespace

// ---------------------------------------------------------------------------

json lie_validate(const lie::LieAlgebra& g) {
  const auto r = lie::validate(g);
  json out = {{"algebra", g.name()}, {"dim", g.dim()}, {"ok", r.ok()},
              {"jacobi_defect", io::rational_to_json(r.jacobi_defect)}};
  out["antisymmetry_violation"] = r.antisymmetry_violation ? labels_of(g, *r.antisymmetry_violation) : json();
  out["jacobi_triple"] = r.jacobi_triple ? labels_of(g, *r.jacobi_triple) : json();
  return out;
}

json lie_perfect(const lie::LieAlgebra& g) {
  const auto d = lie::derived_subalgebra(g);
  return {{"algebra", g.name()}, {"dim", g.dim()}, {"derived_dim", d.dim()}, {"perfect", d.dim() == g.dim()}};
}

json lie_cohomology(const lie::LieAlgebra& g, std::size_t degree) {
  const auto h = liecoh::lie_cohomology(g, degree);
  json out = {{"algebra", g.name()}, {"degree", degree}, {"dim_Z", h.dim_z}, {"dim_B", h.dim_b}, {"dim_H", h.dim_h}};
  if (degree > 3) out["warnings"] = json::array({"degree above 3: cochain spaces grow binomially"});
  return out;
}

json lie_generate(const lie::LieAlgebra& g, const std::vector<lie::LieElement>& gens) {
  std::size_t rounds = 0;
  const auto s = lie::generated_subalgebra(g, gens, rounds);
  json gj = json::array();
  for (const auto& x : gens) gj.push_back(x.to_string());
  return {{"algebra", g.name()}, {"generators", gj}, {"closure_dim", s.dim()}, {"rounds", rounds},
          {"whole_algebra", s.dim() == g.dim()}, {"basis", basis_json(s)}};
}

json lie_ideal(const lie::LieAlgebra& g, const lie::LieElement& x) {
  const auto s = lie::ideal_closure(g, x);
  json out = {{"algebra", g.name()}, {"element", x.to_string()}, {"ideal_dim", s.dim()}, {"basis", basis_json(s)}};
  if (g.name() == "poincare4") out["contains_translations"] = s.contains(lie::translation_ideal(g));
  return out;
}

// ---------------------------------------------------------------------------

json group_cohomology(const group::FiniteGroup& p, const group::AbelianCoefficients& a, std::size_t degree) {
  json out = {{"group", p.name()}, {"coeff", a.name()}, {"degree", degree}};
  out.update(cohomology_json(group::cohomology_group(p, a, degree)));
  return out;
}

json group_cocycles(const group::FiniteGroup& p, const group::AbelianCoefficients& a, std::size_t degree) {
  const auto z = group::cocycle_space(p, a, degree);
  json gens = json::array();
  for (std::size_t i = 0; i < z.generators.size(); ++i)
    gens.push_back({{"order", integer_json(z.generator_orders[i])}, {"cochain", io::cochain_to_json(z.generators[i])}});
  return {{"group", p.name()},
          {"coeff", a.name()},
          {"degree", degree},
          {"order", integer_json(z.order())},
          {"invariant_factors", integers(z.invariant_factors)},
          {"generators", gens}};
}

// ---------------------------------------------------------------------------

json extension_summary(const ext::CentralExtensionTable& e) {
  const auto ex = ext::check_exactness(e);
  const auto split = ext::is_split(e);
  std::vector<std::size_t> orders;
  for (std::size_t g = 0; g < e.carrier.order(); ++g) orders.push_back(e.carrier.element_order(g));
  const auto n = e.carrier.order();
  json out = {{"base", e.base.name()},
              {"kernel", e.kernel.name()},
              {"order", n},
              {"carrier", e.carrier.table()},
              {"identity", e.carrier.identity()},
              {"projection", e.projection.images()},
              {"embedding", e.embedding},
              {"element_orders", orders},
              {"abelian", e.carrier.is_abelian()},
              {"cyclic", std::find(orders.begin(), orders.end(), n) != orders.end()},
              {"exactness",
               {{"ok", ex.ok()},
                {"order", ex.order_ok},
                {"kernel", ex.kernel_ok},
                {"central", ex.central_ok},
                {"surjective", ex.surjective_ok},
                {"injective", ex.injective_ok}}},
              {"is_split", split.has_value()}};
  out["splitting"] = split ? section_json(*split) : json();
  return out;
}

json extension_equivalence(const ext::CentralExtensionTable& e1, const ext::CentralExtensionTable& e2) {
  if (!e1.base.same_as(e2.base) || !(e1.kernel == e2.kernel))
    throw InvalidArgument("extensions must share base group and kernel");
  const auto eq = ext::are_equivalent(e1, e2);
  json out = {{"base", e1.base.name()}, {"kernel", e1.kernel.name()}, {"equivalent", eq.has_value()}};
  if (eq) {
    out["phi"] = io::cochain_to_json(eq->phi)["values"];
    out["map"] = eq->map;
  }
  return out;
}

json extension_split(const ext::CentralExtensionTable& e) {
  const auto s = ext::is_split(e);
  json out = {{"base", e.base.name()}, {"kernel", e.kernel.name()}, {"is_split", s.has_value()}};
  out["section"] = s ? section_json(*s) : json();
  return out;
}

json correspondence(const group::FiniteGroup& e, const group::FiniteGroup& p, std::vector<std::size_t> sigma,
                    const group::AbelianCoefficients& a) {
  std::optional<group::GroupHom> hom;
  if (sigma.empty()) {
    for (const auto& h : group::homomorphisms(e, p)) {
      if (!h.is_surjective()) continue;
      const auto k = h.kernel();
      const bool central = std::all_of(k.begin(), k.end(), [&](std::size_t s) {
        for (std::size_t g = 0; g < e.order(); ++g)
          if (e.mul(s, g) != e.mul(g, s)) return false;
        return true;
      });
      if (central) {
        hom = h;
        break;
      }
    }
    if (!hom) throw MathError("no surjection with central kernel from " + e.name() + " onto " + p.name());
  } else {
    if (sigma.size() != e.order()) throw InvalidArgument("sigma must list one image per element of the covering group");
    for (auto x : sigma)
      if (x >= p.order()) throw InvalidArgument("sigma image out of range");
    if (auto bad = group::GroupHom::first_violation(e, p, sigma))
      throw MathError("sigma is not a homomorphism at (" + std::to_string(bad->first) + ", " +
                      std::to_string(bad->second) + ")");
    hom.emplace(e, p, sigma);
  }
  const auto r = ext::h1_h2_correspondence_check(e, *hom, a);
  json classes = json::array();
  for (const auto& c : r.classes) {
    json entry = {{"cocycle", io::cochain_to_json(c.representative)["values"]},
                  {"coordinates", integers(c.coordinates)},
                  {"psi", c.psi}};
    entry["phi"] = c.phi ? io::cochain_to_json(*c.phi)["values"] : json();
    classes.push_back(entry);
  }
  return {{"covering", e.name()},
          {"group", p.name()},
          {"coeff", a.name()},
          {"sigma", hom->images()},
          {"kernel", r.kernel_elements},
          {"h1_order", r.h1_order},
          {"h2_order", integer_json(r.h2_order)},
          {"applicable", r.applicable},
          {"injective", r.injective},
          {"bijective", r.bijective},
          {"restriction_ambiguity", r.restriction_ambiguity},
          {"classes", classes},
          {"note", r.note}};
}

// ---------------------------------------------------------------------------

json modular(const io::AlgebraState& input, std::uint64_t seed, std::size_t samples) {
  using namespace modcoh::modular;
  const auto m = algebra_closure(input.generators);
  json out = {{"dimension", input.state.size()}, {"algebra_dim", m.dim()}};
  if (input.exact) out["exact_algebra_dim"] = exact_closure_dimension(input.exact_generators);
  out["cyclic"] = is_cyclic(m, input.state);
  out["separating"] = is_separating(m, input.state);

  const auto t = tomita(m, input.state);
  const std::vector<double> ts = {0.1, 0.5, 1.0, std::numbers::pi};
  const auto d = triple_defects(t, m);
  const auto mc = commutant(m);
  const auto tc = tomita(mc, input.state);
  const Matrix delta_inv = t.delta_power(-1);

  out["spectrum"] = t.spectrum();
  out["condition"] = t.condition;
  out["defects"] = {{"s_action", d.s_action}, {"polar", d.polar},         {"j_squared", d.j_squared},
                    {"j_delta_j", d.j_delta_j}, {"delta_omega", d.delta_omega}, {"j_omega", d.j_omega}};
  out["flow"] = {{"ts", ts}, {"defect", modular_flow_defect(t, m, ts)}};
  out["kms"] = {{"samples", samples}, {"seed", seed}, {"defect", kms_defect(m, input.state, t.delta, samples, seed)}};
  out["commutant_dim"] = mc.dim();
  out["jmj_commutant_distance"] = subspace_distance(reflect(t, m), mc);
  out["commutant_delta_inverse_distance"] = operator_norm(tc.delta - delta_inv);
  out["controls"] = {
      {"swapped_delta_flow_defect", modular_flow_defect(swap_top_eigenvalues(t.delta), m, ts)},
      {"identity_delta_kms_defect",
       kms_defect(m, input.state, Matrix::Identity(t.delta.rows(), t.delta.cols()), samples, seed)}};
  return out;
}

json modular_example(const std::string& name, double p) {
  using namespace modcoh::modular;
  Matrix e12 = Matrix::Zero(2, 2), e21 = Matrix::Zero(2, 2);
  e12(0, 1) = 1;
  e21(1, 0) = 1;
  const Matrix i2 = Matrix::Identity(2, 2);
  const std::vector<Matrix> gens = {kron(e12, i2), kron(e21, i2)};
  Vector state;
  if (name == "tracial") {
    state = entangled_state(0.5);
  } else if (name == "entangled") {
    if (!(p > 0 && p < 1)) throw InvalidArgument("entangled example needs 0 < p < 1");
    state = entangled_state(p);
  } else if (name == "product") {
    state = Vector::Zero(4);
    state(0) = 1;
  } else {
    throw InvalidArgument("unknown example '" + name + "' (tracial, entangled, product)");
  }
  auto doc = io::algebra_state_to_json(gens, state);
  // integer entries keep the exact closure path available
  for (auto& g : doc["generators"])
    for (auto& row : g)
      for (auto& z : row) z = json::array({static_cast<int>(z[0].get<double>()), static_cast<int>(z[1].get<double>())});
  return doc;
}

// ---------------------------------------------------------------------------

json spacetime_boost(double t) {
  const Eigen::Matrix4d b = spacetime::boost_matrix(t);
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(b(i, k) + 0.0);  // no negative zeros
    rows.push_back(row);
  }
  Eigen::Matrix4d eta = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  const double metric = (b.transpose() * eta * b - eta).cwiseAbs().maxCoeff();
  const double ident = (b - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
  return {{"t", t}, {"matrix", rows}, {"identity", ident == 0.0}, {"metric_defect", metric}};
}

json spacetime_boost_generation(const std::string& family) {
  std::vector<spacetime::Wedge> wedges;
  if (family == "six") wedges = spacetime::six_wedges();
  else if (family == "coordinate-only") wedges = spacetime::coordinate_wedges();
  else throw InvalidArgument("unknown wedge family '" + family + "' (six, coordinate-only)");
  const auto r = spacetime::boost_generation(wedges);
  json gens = json::array();
  for (std::size_t i = 0; i < r.generators.size(); ++i)
    gens.push_back({{"wedge", io::wedge_to_json(wedges[i])},
                    {"generator", r.generators[i].element.to_string()},
                    {"exact", r.generators[i].exact},
                    {"warnings", r.generators[i].warnings}});
  return {{"wedges", family},
          {"generators", gens},
          {"closure_dim", r.closure_dim},
          {"rounds", r.rounds},
          {"contains_translations", r.contains_translations},
          {"success", r.success}};
}

json spacetime_complement(const spacetime::Wedge& w) {
  std::vector<double> ts;
  for (int k = -8; k <= 8; ++k) ts.push_back(k / 8.0);
  const auto c = spacetime::check_complement(w, ts);
  const auto wc = spacetime::wedge_complement(w);
  json out = {{"wedge", io::wedge_to_json(w)},
              {"complement", io::wedge_to_json(wc)},
              {"boost_defect", c.boost_defect},
              {"product_defect", c.product_defect},
              {"involution", c.involution},
              {"symbolic_metric", spacetime::boost_preserves_metric_symbolic()},
              {"symbolic_complement_identity", spacetime::complement_identity_symbolic()}};
  out["exact_identity"] = c.exact_identity ? json(*c.exact_identity) : json();
  return out;
}

}  // namespace modcoh::report
