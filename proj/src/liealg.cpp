#include "modcoh/liealg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace modcoh::lie {

// ---------------------------------------------------------------------------
// LieAlgebra

LieAlgebra LieAlgebra::from_constants(std::string name, std::vector<std::string> labels,
                                      std::vector<Rational> constants) {
  const std::size_t n = labels.size();
  if (constants.size() != n * n * n)
    throw InvalidArgument("structure constant table must have dim^3 entries");
  for (auto& c : constants) c.canonicalize();
  return LieAlgebra(std::make_shared<const Data>(
      Data{std::move(name), n, std::move(labels), std::move(constants)}));
}

LieAlgebra LieAlgebra::from_brackets(std::string name, std::vector<std::string> labels,
                                     const std::vector<Bracket>& brackets) {
  const std::size_t n = labels.size();
  std::vector<Rational> c(n * n * n);
  std::vector<bool> seen(n * n, false);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Rational& {
    return c[(i * n + j) * n + k];
  };
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n) throw InvalidArgument("bracket index out of range");
    RationalVector row(n);
    for (const auto& t : b.terms) {
      if (t.index >= n) throw InvalidArgument("bracket coefficient index out of range");
      row[t.index] += t.coeff;
    }
    if (b.i == b.j) {
      for (const auto& v : row)
        if (sgn(v) != 0)
          throw InvalidArgument("bracket of basis element " + labels[b.i] + " with itself must vanish");
      continue;
    }
    const std::size_t key = std::min(b.i, b.j) * n + std::max(b.i, b.j);
    if (seen[key]) {
      for (std::size_t k = 0; k < n; ++k)
        if (at(b.i, b.j, k) != row[k])
          throw InvalidArgument("conflicting entries for bracket [" + labels[b.i] + ", " +
                                labels[b.j] + "]");
      continue;
    }
    seen[key] = true;
    for (std::size_t k = 0; k < n; ++k) {
      at(b.i, b.j, k) = row[k];
      at(b.j, b.i, k) = -row[k];
    }
  }
  return from_constants(std::move(name), std::move(labels), std::move(c));
}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < d_->labels.size(); ++i)
    if (d_->labels[i] == label) return i;
  return std::nullopt;
}

bool LieAlgebra::same_as(const LieAlgebra& other) const {
  return d_ == other.d_ || (d_->dim == other.d_->dim && d_->c == other.d_->c);
}

// ---------------------------------------------------------------------------
// LieElement

LieElement::LieElement(LieAlgebra parent, RationalVector coeffs)
    : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != parent_.dim())
    throw InvalidArgument("element length " + std::to_string(coeffs_.size()) +
                          " does not match algebra dimension " + std::to_string(parent_.dim()));
}

LieElement LieElement::zero(const LieAlgebra& g) { return LieElement(g, RationalVector(g.dim())); }

LieElement LieElement::basis(const LieAlgebra& g, std::size_t i) {
  if (i >= g.dim()) throw InvalidArgument("basis index out of range");
  RationalVector v(g.dim());
  v[i] = 1;
  return LieElement(g, std::move(v));
}

LieElement LieElement::named(const LieAlgebra& g, const std::string& label) {
  const auto i = g.index_of(label);
  if (!i) throw InvalidArgument("no basis element labelled '" + label + "' in " + g.name());
  return basis(g, *i);
}

bool LieElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

namespace {
void require_same(const LieAlgebra& a, const LieAlgebra& b) {
  if (!a.same_as(b))
    throw InvalidArgument("elements belong to different algebras (" + a.name() + ", " + b.name() + ")");
}
}  // namespace

LieElement LieElement::operator+(const LieElement& o) const {
  require_same(parent_, o.parent_);
  RationalVector v = coeffs_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coeffs_[i];
  return LieElement(parent_, std::move(v));
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + (-o); }

LieElement LieElement::operator-() const {
  RationalVector v = coeffs_;
  for (auto& q : v) q = -q;
  return LieElement(parent_, std::move(v));
}

LieElement LieElement::operator*(const Rational& s) const {
  RationalVector v = coeffs_;
  for (auto& q : v) q *= s;
  return LieElement(parent_, std::move(v));
}

bool operator==(const LieElement& a, const LieElement& b) {
  return a.parent_.same_as(b.parent_) && a.coeffs_ == b.coeffs_;
}

std::string LieElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    const Rational mag = abs(coeffs_[i]);
    if (first)
      os << (sgn(coeffs_[i]) < 0 ? "-" : "");
    else
      os << (sgn(coeffs_[i]) < 0 ? " - " : " + ");
    if (mag != 1) os << exact::to_string(mag) << "*";
    os << parent_.labels()[i];
    first = false;
  }
  return first ? "0" : os.str();
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  require_same(x.parent(), y.parent());
  const LieAlgebra& g = x.parent();
  const std::size_t n = g.dim();
  RationalVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0 || i == j) continue;
      const Rational w = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(g.constant(i, j, k)) != 0) out[k] += w * g.constant(i, j, k);
    }
  }
  return LieElement(g, std::move(out));
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const LieAlgebra& g, const std::vector<LieElement>& vectors) {
  Subspace s(g);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

Subspace Subspace::whole(const LieAlgebra& g) {
  Subspace s(g);
  for (std::size_t i = 0; i < g.dim(); ++i) s.insert(LieElement::basis(g, i));
  return s;
}

std::vector<LieElement> Subspace::basis() const {
  std::vector<LieElement> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.emplace_back(parent_, r);
  return out;
}

RationalVector Subspace::reduce(const RationalVector& v) const {
  RationalVector r = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = r[pivots_[k]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (sgn(rows_[k][j]) != 0) r[j] -= f * rows_[k][j];
  }
  return r;
}

bool Subspace::insert(const LieElement& v) {
  require_same(parent_, v.parent());
  RationalVector r = reduce(v.coeffs());
  std::size_t pc = r.size();
  for (std::size_t j = 0; j < r.size(); ++j)
    if (sgn(r[j]) != 0) {
      pc = j;
      break;
    }
  if (pc == r.size()) return false;
  const Rational lead = r[pc];
  for (auto& q : r) q /= lead;
  for (auto& row : rows_) {
    const Rational f = row[pc];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * r[j];
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pc);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

bool Subspace::contains(const LieElement& v) const {
  require_same(parent_, v.parent());
  const RationalVector r = reduce(v.coeffs());
  return std::all_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.parent_.same_as(b.parent_) && a.rows_ == b.rows_;
}

// ---------------------------------------------------------------------------
// Derived algebra, generation, ideals

Subspace derived_subalgebra(const LieAlgebra& g) {
  Subspace s(g);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      RationalVector v(g.dim());
      for (std::size_t k = 0; k < g.dim(); ++k) v[k] = g.constant(i, j, k);
      s.insert(LieElement(g, std::move(v)));
    }
  return s;
}

bool is_perfect(const LieAlgebra& g) { return derived_subalgebra(g).dim() == g.dim(); }

Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<LieElement>& gens,
                              std::size_t& rounds) {
  if (gens.empty()) throw InvalidArgument("generated_subalgebra needs at least one generator");
  for (const auto& x : gens) require_same(g, x.parent());
  Subspace s = Subspace::span(g, gens);
  rounds = 0;
  for (;;) {
    const std::size_t before = s.dim();
    const auto current = s.basis();
    for (const auto& b : current)
      for (const auto& x : gens) s.insert(bracket(b, x));
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) s.insert(bracket(current[i], current[j]));
    ++rounds;
    if (s.dim() == before) break;
  }
  return s;
}

Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<LieElement>& gens) {
  std::size_t rounds = 0;
  return generated_subalgebra(g, gens, rounds);
}

Subspace ideal_closure(const LieAlgebra& g, const LieElement& x) {
  require_same(g, x.parent());
  Subspace s(g);
  if (!s.insert(x)) return s;
  std::vector<LieElement> frontier{x};
  while (!frontier.empty()) {
    std::vector<LieElement> next;
    for (const auto& v : frontier)
      for (std::size_t i = 0; i < g.dim(); ++i) {
        LieElement w = bracket(LieElement::basis(g, i), v);
        if (s.insert(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const LieAlgebra& g) {
  ValidationReport rep;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n && !rep.antisymmetry_violation; ++i)
    for (std::size_t j = i; j < n && !rep.antisymmetry_violation; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g.constant(i, j, k) != -g.constant(j, i, k)) {
          rep.antisymmetry_violation = std::array<std::size_t, 3>{i, j, k};
          break;
        }
  // sum_l c(i,j,l) c(l,k,m) + c(j,k,l) c(l,i,m) + c(k,i,l) c(l,j,m)
  Rational worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          Rational s = 0;
          for (std::size_t l = 0; l < n; ++l) {
            if (sgn(g.constant(i, j, l)) != 0) s += g.constant(i, j, l) * g.constant(l, k, m);
            if (sgn(g.constant(j, k, l)) != 0) s += g.constant(j, k, l) * g.constant(l, i, m);
            if (sgn(g.constant(k, i, l)) != 0) s += g.constant(k, i, l) * g.constant(l, j, m);
          }
          if (abs(s) > worst) {
            worst = abs(s);
            rep.jacobi_triple = std::array<std::size_t, 3>{i, j, k};
          }
        }
  rep.jacobi_defect = worst;
  return rep;
}

Rational jacobi_defect(const LieAlgebra& g) { return validate(g).jacobi_defect; }

// ---------------------------------------------------------------------------
// Builtins

namespace {

Rational metric(std::size_t mu) { return mu == 0 ? 1 : -1; }

struct AffineBasis {
  std::vector<std::string> labels;
  std::vector<RationalMatrix> mats;
};

AffineBasis affine_basis(int d, bool with_translations) {
  if (d < 2 || d > 4) throw InvalidArgument("spacetime dimension must be 2, 3 or 4");
  const std::size_t n = static_cast<std::size_t>(d);
  AffineBasis out;
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = mu + 1; nu < n; ++nu) {
      RationalMatrix m(n + 1, n + 1);
      // (J_{mu nu})^a_b = delta^a_mu eta_{nu b} - delta^a_nu eta_{mu b}
      m(mu, nu) = metric(nu);
      m(nu, mu) = -metric(mu);
      out.labels.push_back("J" + std::to_string(mu) + std::to_string(nu));
      out.mats.push_back(std::move(m));
    }
  if (with_translations)
    for (std::size_t mu = 0; mu < n; ++mu) {
      RationalMatrix m(n + 1, n + 1);
      m(mu, n) = 1;
      out.labels.push_back("P" + std::to_string(mu));
      out.mats.push_back(std::move(m));
    }
  return out;
}

RationalVector decompose(const AffineBasis& b, std::size_t n, const RationalMatrix& x) {
  // Each basis matrix has a distinguished entry no other basis matrix
  // touches: (mu, nu) for J_{mu nu}, (mu, n) for P_mu.
  RationalVector coeffs(b.mats.size());
  std::size_t idx = 0;
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = mu + 1; nu < n; ++nu, ++idx) coeffs[idx] = x(mu, nu) / metric(nu);
  for (; idx < b.mats.size(); ++idx) coeffs[idx] = x(idx - (b.mats.size() - n), n);
  RationalMatrix rebuilt(n + 1, n + 1);
  for (std::size_t k = 0; k < b.mats.size(); ++k)
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) rebuilt(i, j) += coeffs[k] * b.mats[k](i, j);
  if (!(rebuilt == x)) throw InvalidArgument("matrix is not an element of the Poincare algebra");
  return coeffs;
}

LieAlgebra from_matrices(std::string name, int d, bool with_translations) {
  const AffineBasis b = affine_basis(d, with_translations);
  const std::size_t n = static_cast<std::size_t>(d);
  const std::size_t dim = b.mats.size();
  std::vector<Rational> c(dim * dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      RationalMatrix comm = b.mats[i] * b.mats[j];
      const RationalMatrix back = b.mats[j] * b.mats[i];
      for (std::size_t r = 0; r <= n; ++r)
        for (std::size_t s = 0; s <= n; ++s) comm(r, s) -= back(r, s);
      const RationalVector v = decompose(b, n, comm);
      for (std::size_t k = 0; k < dim; ++k) c[(i * dim + j) * dim + k] = v[k];
    }
  return LieAlgebra::from_constants(std::move(name), b.labels, std::move(c));
}

}  // namespace

std::vector<RationalMatrix> poincare_affine_basis(int spacetime_dim) {
  return affine_basis(spacetime_dim, true).mats;
}

RationalVector decompose_poincare_affine(int spacetime_dim, const RationalMatrix& generator) {
  const auto b = affine_basis(spacetime_dim, true);
  const std::size_t n = static_cast<std::size_t>(spacetime_dim);
  if (generator.rows() != n + 1 || generator.cols() != n + 1)
    throw InvalidArgument("affine generator has the wrong shape");
  return decompose(b, n, generator);
}

LieAlgebra poincare(int d) { return from_matrices("poincare" + std::to_string(d), d, true); }
LieAlgebra lorentz(int d) { return from_matrices("lorentz" + std::to_string(d), d, false); }

LieAlgebra sl2() {
  using T = LieAlgebra::Term;
  return LieAlgebra::from_brackets("sl2", {"h", "e", "f"},
                                   {{0, 1, {T{1, 2}}}, {0, 2, {T{2, -2}}}, {1, 2, {T{0, 1}}}});
}

LieAlgebra heisenberg() {
  using T = LieAlgebra::Term;
  return LieAlgebra::from_brackets("heisenberg", {"x", "y", "z"}, {{0, 1, {T{2, 1}}}});
}

LieAlgebra abelian(std::size_t n) {
  if (n == 0) throw InvalidArgument("abelian algebra needs positive dimension");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  return LieAlgebra::from_brackets("abelian" + std::to_string(n), std::move(labels), {});
}

LieAlgebra builtin(const std::string& raw) {
  std::string name;
  for (char ch : raw)
    if (ch != '(' && ch != ')' && ch != '_' && ch != ' ')
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  auto suffix_number = [&](const std::string& prefix) -> std::optional<long> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    const std::string digits = name.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return std::nullopt;
    if (digits.size() > 6) return std::nullopt;
    return std::stol(digits);
  };
  if (name == "sl2") return sl2();
  if (name == "heisenberg") return heisenberg();
  if (auto d = suffix_number("poincare"); d && *d >= 2 && *d <= 4) return poincare(static_cast<int>(*d));
  if (auto d = suffix_number("lorentz"); d && *d >= 2 && *d <= 4) return lorentz(static_cast<int>(*d));
  if (auto n = suffix_number("abelian"); n && *n >= 1) return abelian(static_cast<std::size_t>(*n));
  throw InvalidArgument("unknown algebra '" + raw + "'");
}

Subspace translation_ideal(const LieAlgebra& g) {
  Subspace s(g);
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (!g.labels()[i].empty() && g.labels()[i][0] == 'P') s.insert(LieElement::basis(g, i));
  return s;
}

}  // namespace modcoh::lie
