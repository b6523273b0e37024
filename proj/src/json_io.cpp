#include "modcoh/json_io.hpp"

#include <cmath>
#include <sstream>

namespace modcoh::io {

using exact::Rational;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t index_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

// Exact value if the entry is a string, an integer, or a double that is an
// integer; otherwise nullopt.
std::optional<Rational> exact_rational(const json& j) {
  if (j.is_string()) return exact::parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15) return Rational(static_cast<long>(d));
  }
  return std::nullopt;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return exact::parse_rational(j.get<std::string>()).get_d();
  fail("expected a number or a rational string");
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return exact::parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    // decimal text as written, so 0.5 means 1/2 exactly
    std::ostringstream os;
    os << j;
    return exact::parse_rational(os.str());
  }
  fail("expected a rational (string \"p/q\" or number)");
}

json rational_to_json(const Rational& q) { return exact::to_string(q); }

// ---------------------------------------------------------------------------
// Lie algebras

namespace {

std::size_t label_index(const std::vector<std::string>& labels, const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s) return i;
    fail("unknown basis label '" + s + "'");
  }
  const std::size_t i = index_from_json(j, "basis index");
  if (i >= labels.size()) fail("basis index " + std::to_string(i) + " out of range");
  return i;
}

}  // namespace

lie::LieAlgebra lie_from_json(const json& j) {
  if (j.is_string()) return lie::builtin(j.get<std::string>());
  const std::size_t dim = index_from_json(field(j, "dim"), "dim");
  if (dim == 0 || dim > 64) fail("dim must be between 1 and 64");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) fail("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != dim) fail("labels must have dim entries");
  } else {
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("x" + std::to_string(i + 1));
  }
  std::vector<lie::LieAlgebra::Bracket> brackets;
  for (const auto& b : j.value("brackets", json::array())) {
    lie::LieAlgebra::Bracket br{label_index(labels, field(b, "i")), label_index(labels, field(b, "j")), {}};
    const auto& coeffs = field(b, "coeffs");
    if (coeffs.is_object()) {
      for (auto it = coeffs.begin(); it != coeffs.end(); ++it)
        br.terms.push_back({label_index(labels, json(it.key())), rational_from_json(it.value())});
    } else if (coeffs.is_array()) {
      if (coeffs.size() != dim) fail("bracket coefficient array must have dim entries");
      for (std::size_t k = 0; k < dim; ++k) br.terms.push_back({k, rational_from_json(coeffs[k])});
    } else {
      fail("bracket coeffs must be an object or an array");
    }
    brackets.push_back(std::move(br));
  }
  return lie::LieAlgebra::from_brackets(j.value("name", std::string("custom")), std::move(labels), brackets);
}

json lie_to_json(const lie::LieAlgebra& g) {
  json brackets = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = i + 1; k < g.dim(); ++k) {
      json coeffs = json::object();
      for (std::size_t l = 0; l < g.dim(); ++l)
        if (sgn(g.constant(i, k, l)) != 0) coeffs[g.labels()[l]] = rational_to_json(g.constant(i, k, l));
      if (!coeffs.empty()) brackets.push_back({{"i", g.labels()[i]}, {"j", g.labels()[k]}, {"coeffs", coeffs}});
    }
  return {{"name", g.name()}, {"dim", g.dim()}, {"labels", g.labels()}, {"brackets", brackets}};
}

lie::LieElement element_from_json(const lie::LieAlgebra& g, const json& j) {
  exact::RationalVector v(g.dim());
  const json& c = j.is_object() && j.contains("coeffs") ? j.at("coeffs") : j;
  if (c.is_object()) {
    for (auto it = c.begin(); it != c.end(); ++it) v[label_index(g.labels(), json(it.key()))] += rational_from_json(it.value());
  } else if (c.is_array()) {
    if (c.size() != g.dim()) fail("element coefficient array must have dim entries");
    for (std::size_t k = 0; k < g.dim(); ++k) v[k] = rational_from_json(c[k]);
  } else if (c.is_string()) {
    return lie::LieElement::basis(g, label_index(g.labels(), c));
  } else {
    fail("element must be a label, an object of coefficients, or an array");
  }
  return lie::LieElement(g, std::move(v));
}

json element_to_json(const lie::LieElement& x) {
  json coeffs = json::object();
  for (std::size_t i = 0; i < x.coeffs().size(); ++i)
    if (sgn(x[i]) != 0) coeffs[x.parent().labels()[i]] = rational_to_json(x[i]);
  return {{"coeffs", coeffs}, {"text", x.to_string()}};
}

std::vector<lie::LieElement> elements_from_json(const lie::LieAlgebra& g, const json& j) {
  const json& list = j.is_object() ? field(j, "generators") : j;
  if (!list.is_array()) fail("expected an array of elements");
  std::vector<lie::LieElement> out;
  for (const auto& e : list) out.push_back(element_from_json(g, e));
  return out;
}

// ---------------------------------------------------------------------------
// Groups and cochains

group::FiniteGroup group_from_json(const json& j) {
  if (j.is_string()) return group::builtin_group(j.get<std::string>());
  const std::size_t order = index_from_json(field(j, "order"), "order");
  const auto& t = field(j, "table");
  if (!t.is_array() || t.size() != order) fail("table must have 'order' rows");
  std::vector<std::vector<std::size_t>> rows;
  for (const auto& r : t) {
    if (!r.is_array() || r.size() != order) fail("table rows must have 'order' entries");
    std::vector<std::size_t> row;
    for (const auto& v : r) row.push_back(index_from_json(v, "table entry"));
    rows.push_back(std::move(row));
  }
  return group::FiniteGroup::from_table(j.value("name", std::string("custom")), std::move(rows),
                                        index_from_json(field(j, "identity"), "identity"));
}

json group_to_json(const group::FiniteGroup& g) {
  return {{"name", g.name()}, {"order", g.order()}, {"table", g.table()}, {"identity", g.identity()}};
}

group::AbelianCoefficients coefficients_from_json(const json& j) {
  if (j.is_string()) return group::AbelianCoefficients::parse(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::uint32_t> orders;
    for (const auto& m : j) orders.push_back(static_cast<std::uint32_t>(index_from_json(m, "coefficient order")));
    return group::AbelianCoefficients(std::move(orders));
  }
  fail("coefficients must be a name such as \"z2xz2\" or a list of orders");
}

json coefficients_to_json(const group::AbelianCoefficients& a) { return a.orders(); }

namespace {

std::uint32_t coefficient_value(const group::AbelianCoefficients& a, const json& v) {
  if (v.is_array()) {
    std::vector<std::int64_t> comps;
    for (const auto& c : v) {
      if (!c.is_number_integer()) fail("coefficient components must be integers");
      comps.push_back(c.get<std::int64_t>());
    }
    if (comps.size() != a.rank()) fail("coefficient value has the wrong number of components");
    return a.encode(comps);
  }
  if (!v.is_number_integer()) fail("cochain value must be an integer or a component list");
  const auto x = v.get<std::int64_t>();
  if (a.rank() == 1) {
    const std::int64_t comps[1] = {x};
    return a.encode(comps);
  }
  if (x < 0 || static_cast<std::size_t>(x) >= a.size()) fail("cochain value out of range");
  return static_cast<std::uint32_t>(x);
}

json coefficient_to_json(const group::AbelianCoefficients& a, std::uint32_t v) {
  if (a.rank() == 1) return v;
  json comps = json::array();
  for (std::size_t i = 0; i < a.rank(); ++i) comps.push_back(a.component(v, i));
  return comps;
}

}  // namespace

group::Cochain cochain_from_json(const json& j) {
  const auto g = group_from_json(field(j, "group"));
  const auto a = coefficients_from_json(field(j, "coeff"));
  const std::size_t degree = index_from_json(field(j, "degree"), "degree");
  if (degree > 3) fail("cochain degree must be at most 3");
  group::Cochain f(g, a, degree);
  const auto& values = j.value("values", json::array());
  auto assign = [&](const json& args, const json& value) {
    if (!args.is_array() || args.size() != degree) fail("cochain arguments must be a list of 'degree' elements");
    std::vector<std::size_t> idx;
    for (const auto& x : args) {
      const std::size_t p = index_from_json(x, "cochain argument");
      if (p >= g.order()) fail("cochain argument out of range");
      idx.push_back(p);
    }
    f[f.index_of(idx)] = coefficient_value(a, value);
  };
  if (values.is_array()) {
    for (const auto& e : values) assign(field(e, "args"), field(e, "value"));
  } else if (values.is_object()) {
    for (auto it = values.begin(); it != values.end(); ++it) {
      json args = json::array();
      std::stringstream ss(it.key());
      std::string part;
      while (std::getline(ss, part, ',')) {
        try {
          args.push_back(std::stoul(part));
        } catch (const std::exception&) {
          fail("bad cochain argument key '" + it.key() + "'");
        }
      }
      assign(args, it.value());
    }
  } else {
    fail("cochain values must be a list or an object");
  }
  return f;
}

json cochain_to_json(const group::Cochain& f) {
  json values = json::array();
  const std::size_t n = f.group().order();
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (f[idx] == 0) continue;
    std::vector<std::size_t> args(f.degree());
    std::size_t rest = idx;
    for (std::size_t k = f.degree(); k-- > 0;) {
      args[k] = rest % n;
      rest /= n;
    }
    values.push_back({{"args", args}, {"value", coefficient_to_json(f.coefficients(), f[idx])}});
  }
  return {{"group", group_to_json(f.group())},
          {"coeff", coefficients_to_json(f.coefficients())},
          {"degree", f.degree()},
          {"values", values}};
}

json extension_to_json(const ext::CentralExtensionTable& e) {
  json emb = json::array();
  for (auto x : e.embedding) emb.push_back(x);
  return {{"base", group_to_json(e.base)},
          {"kernel", coefficients_to_json(e.kernel)},
          {"cocycle", cochain_to_json(e.cocycle)},
          {"carrier", group_to_json(e.carrier)},
          {"projection", e.projection.images()},
          {"embedding", emb}};
}

ext::CentralExtensionTable extension_from_json(const json& j) {
  const auto base = group_from_json(field(j, "base"));
  const auto kernel = coefficients_from_json(field(j, "kernel"));
  const auto cocycle = cochain_from_json(field(j, "cocycle"));
  if (!cocycle.group().same_as(base) || !(cocycle.coefficients() == kernel))
    throw MathError("stored cocycle does not match the stored base and kernel");
  auto e = ext::build_extension(base, kernel, cocycle);
  const auto carrier = group_from_json(field(j, "carrier"));
  if (!carrier.same_as(e.carrier)) throw MathError("stored carrier table differs from the rebuilt one");
  const auto& proj = field(j, "projection");
  if (proj.get<std::vector<std::size_t>>() != e.projection.images())
    throw MathError("stored projection differs from the rebuilt one");
  if (field(j, "embedding").get<std::vector<std::size_t>>() != e.embedding)
    throw MathError("stored embedding differs from the rebuilt one");
  return e;
}

// ---------------------------------------------------------------------------
// Matrices and states

namespace {

std::complex<double> complex_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) fail("complex entries are [re, im] pairs");
    return {real_from_json(j[0]), real_from_json(j[1])};
  }
  return {real_from_json(j), 0.0};
}

std::optional<std::pair<Rational, Rational>> exact_complex(const json& j) {
  if (j.is_array() && j.size() == 2) {
    auto re = exact_rational(j[0]), im = exact_rational(j[1]);
    if (re && im) return std::make_pair(*re, *im);
    return std::nullopt;
  }
  if (auto re = exact_rational(j)) return std::make_pair(*re, Rational(0));
  return std::nullopt;
}

}  // namespace

json matrix_to_json(const modular::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

modular::Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail("matrix must be a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  modular::Matrix m(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json vector_to_json(const modular::Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

modular::Vector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail("vector must be a non-empty list");
  modular::Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

AlgebraState algebra_state_from_json(const json& j) {
  AlgebraState s;
  const auto& gens = field(j, "generators");
  if (!gens.is_array() || gens.empty()) fail("generators must be a non-empty list of matrices");
  s.exact = true;
  for (const auto& g : gens) {
    s.generators.push_back(matrix_from_json(g));
    const auto n = static_cast<std::size_t>(s.generators.back().rows());
    if (s.generators.back().cols() != s.generators.back().rows()) fail("generators must be square");
    auto e = modular::ExactComplexMatrix::zero(n);
    for (std::size_t r = 0; r < n && s.exact; ++r)
      for (std::size_t c = 0; c < n && s.exact; ++c) {
        const auto z = exact_complex(g[r][c]);
        if (!z) {
          s.exact = false;
          break;
        }
        e.re[r * n + c] = z->first;
        e.im[r * n + c] = z->second;
      }
    if (s.exact) s.exact_generators.push_back(std::move(e));
  }
  if (!s.exact) s.exact_generators.clear();
  s.state = vector_from_json(field(j, "state"));
  if (j.contains("dimension") && index_from_json(j.at("dimension"), "dimension") != static_cast<std::size_t>(s.state.size()))
    fail("dimension does not match the state length");
  for (const auto& g : s.generators)
    if (g.rows() != s.state.size()) fail("generator size does not match the state length");
  return s;
}

json algebra_state_to_json(const std::vector<modular::Matrix>& generators, const modular::Vector& state) {
  json gens = json::array();
  for (const auto& g : generators) gens.push_back(matrix_to_json(g));
  return {{"dimension", state.size()}, {"generators", gens}, {"state", vector_to_json(state)}};
}

// ---------------------------------------------------------------------------

spacetime::Wedge wedge_from_json(const json& j) {
  const auto& l = field(j, "lorentz");
  const auto& t = j.value("translation", json::array({0, 0, 0, 0}));
  if (!l.is_array() || l.size() != 4) fail("lorentz must be a 4x4 matrix");
  if (!t.is_array() || t.size() != 4) fail("translation must have 4 entries");
  bool exact = true;
  spacetime::ExactPoincare ge;
  spacetime::PoincareElement gd;
  for (std::size_t r = 0; r < 4; ++r) {
    if (!l[r].is_array() || l[r].size() != 4) fail("lorentz must be a 4x4 matrix");
    for (std::size_t c = 0; c < 4; ++c) {
      gd.lorentz(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = real_from_json(l[r][c]);
      if (auto q = exact_rational(l[r][c])) ge.lorentz(r, c) = *q;
      else exact = false;
    }
    gd.translation(static_cast<Eigen::Index>(r)) = real_from_json(t[r]);
    if (auto q = exact_rational(t[r])) ge.translation[r] = *q;
    else exact = false;
  }
  if (exact) return spacetime::Wedge(ge);
  return spacetime::Wedge(gd);
}

json wedge_to_json(const spacetime::Wedge& w) {
  json l = json::array(), t = json::array();
  if (w.exact()) {
    for (std::size_t r = 0; r < 4; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 4; ++c) row.push_back(rational_to_json(w.exact()->lorentz(r, c)));
      l.push_back(row);
      t.push_back(rational_to_json(w.exact()->translation[r]));
    }
  } else {
    for (Eigen::Index r = 0; r < 4; ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < 4; ++c) row.push_back(w.element().lorentz(r, c));
      l.push_back(row);
      t.push_back(w.element().translation(r));
    }
  }
  return {{"lorentz", l}, {"translation", t}};
}

}  // namespace modcoh::io
