#include "modcoh/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace modcoh::spacetime {

namespace {

const Eigen::Matrix4d& eta() {
  static const Eigen::Matrix4d m = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  return m;
}

RationalMatrix eta_exact() {
  RationalMatrix m(4, 4);
  m(0, 0) = 1;
  for (std::size_t i = 1; i < 4; ++i) m(i, i) = -1;
  return m;
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Rational det(RationalMatrix m) {
  const std::size_t n = m.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

// Continued-fraction approximation with bounded denominator.
Rational rationalize(double x, long max_den = 1000000) {
  const bool neg = x < 0;
  double v = std::abs(x);
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(v);
    const long h2 = static_cast<long>(a) * h1 + h0, k2 = static_cast<long>(a) * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - std::abs(x)) < 1e-12) break;
    const double frac = v - a;
    if (frac < 1e-15) break;
    v = 1 / frac;
  }
  Rational r(h1, k1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

// ---------------------------------------------------------------------------

PoincareElement PoincareElement::operator*(const PoincareElement& o) const {
  return PoincareElement{lorentz * o.lorentz, lorentz * o.translation + translation};
}

PoincareElement PoincareElement::inverse() const {
  const Eigen::Matrix4d inv = eta() * lorentz.transpose() * eta();
  return PoincareElement{inv, -(inv * translation)};
}

Eigen::Matrix<double, 5, 5> PoincareElement::affine() const {
  Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Identity();
  m.topLeftCorner<4, 4>() = lorentz;
  m.topRightCorner<4, 1>() = translation;
  return m;
}

ExactPoincare ExactPoincare::operator*(const ExactPoincare& o) const {
  ExactPoincare r;
  r.lorentz = lorentz * o.lorentz;
  r.translation = lorentz * o.translation;
  for (std::size_t i = 0; i < 4; ++i) r.translation[i] += translation[i];
  return r;
}

ExactPoincare ExactPoincare::inverse() const {
  ExactPoincare r;
  r.lorentz = eta_exact() * transpose(lorentz) * eta_exact();
  r.translation = r.lorentz * translation;
  for (auto& x : r.translation) x = -x;
  return r;
}

RationalMatrix ExactPoincare::affine() const {
  RationalMatrix m = RationalMatrix::identity(5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = lorentz(i, j);
    m(i, 4) = translation[i];
  }
  return m;
}

PoincareElement ExactPoincare::to_double() const {
  PoincareElement g;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j)
      g.lorentz(i, j) = lorentz(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    g.translation(i) = translation[static_cast<std::size_t>(i)].get_d();
  }
  return g;
}

void validate_lorentz(const Eigen::Matrix4d& l, double tol) {
  if ((l.transpose() * eta() * l - eta()).cwiseAbs().maxCoeff() > tol)
    throw InvalidArgument("matrix does not preserve the Minkowski metric");
  if (std::abs(l.determinant() - 1) > tol) throw InvalidArgument("Lorentz matrix must have determinant +1");
  if (l(0, 0) < 1 - tol) throw InvalidArgument("Lorentz matrix must be orthochronous (00 entry >= 1)");
}

void validate_lorentz(const RationalMatrix& l) {
  if (l.rows() != 4 || l.cols() != 4) throw InvalidArgument("Lorentz matrix must be 4x4");
  if (!(transpose(l) * eta_exact() * l == eta_exact()))
    throw InvalidArgument("matrix does not preserve the Minkowski metric");
  if (det(l) != 1) throw InvalidArgument("Lorentz matrix must have determinant +1");
  if (l(0, 0) < 1) throw InvalidArgument("Lorentz matrix must be orthochronous (00 entry >= 1)");
}

// ---------------------------------------------------------------------------

Wedge::Wedge(const PoincareElement& g) : g_(g) { validate_lorentz(g.lorentz); }

Wedge::Wedge(const ExactPoincare& g) : g_(g.to_double()), exact_(g) {
  if (g.translation.size() != 4) throw InvalidArgument("translation must have 4 components");
  validate_lorentz(g.lorentz);
}

Wedge Wedge::standard() { return Wedge(ExactPoincare{}); }

bool Wedge::contains(const Eigen::Vector4d& x) const {
  const Eigen::Vector4d y = g_.inverse().apply(x);
  return std::abs(y(0)) < y(1);
}

std::array<std::pair<Eigen::Vector4d, double>, 2> Wedge::normal_form() const {
  // W1 = {l1 . y > 0, l2 . y > 0} with y = L^{-1}(x - a); so u = L^{-T} l.
  const Eigen::Matrix4d linv = eta() * g_.lorentz.transpose() * eta();
  const Eigen::Vector4d ls[2] = {Eigen::Vector4d(-1, 1, 0, 0), Eigen::Vector4d(1, 1, 0, 0)};
  std::array<std::pair<Eigen::Vector4d, double>, 2> out;
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector4d u = linv.transpose() * ls[k];
    const double scale = std::abs(u(0));  // nonzero: u is a null covector
    u /= scale;
    out[static_cast<std::size_t>(k)] = {u, u.dot(g_.translation)};
  }
  auto less = [](const auto& a, const auto& b) {
    for (int i = 0; i < 4; ++i)
      if (std::abs(a.first(i) - b.first(i)) > 1e-9) return a.first(i) < b.first(i);
    return a.second < b.second - 1e-9;
  };
  if (less(out[1], out[0])) std::swap(out[0], out[1]);
  return out;
}

bool Wedge::same_as(const Wedge& other, double tol) const {
  const auto a = normal_form(), b = other.normal_form();
  for (std::size_t k = 0; k < 2; ++k)
    if ((a[k].first - b[k].first).cwiseAbs().maxCoeff() > tol || std::abs(a[k].second - b[k].second) > tol)
      return false;
  return true;
}

Eigen::Matrix4d boost_matrix(double t) {
  const double c = std::cosh(2 * std::numbers::pi * t), s = std::sinh(2 * std::numbers::pi * t);
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = -s;
  m(1, 1) = c;
  return m;
}

PoincareElement wedge_boost(const Wedge& w, double t) {
  const PoincareElement b{boost_matrix(t), Eigen::Vector4d::Zero()};
  return w.element() * b * w.element().inverse();
}

std::vector<Eigen::Vector4d> sample_wedge_points(const Wedge& w, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-5.0, 5.0), depth(0.05, 5.0);
  std::vector<Eigen::Vector4d> pts;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x0 = coord(rng);
    const double x1 = std::abs(x0) + depth(rng);
    const double x2 = coord(rng);
    const double x3 = coord(rng);
    pts.push_back(w.element().apply(Eigen::Vector4d(x0, x1, x2, x3)));
  }
  return pts;
}

std::size_t boost_escapes(const Wedge& w, double t, std::size_t samples, std::uint64_t seed) {
  const PoincareElement b = wedge_boost(w, t);
  std::size_t escaped = 0;
  for (const auto& x : sample_wedge_points(w, samples, seed)) escaped += !w.contains(b.apply(x));
  return escaped;
}

WedgeGenerator wedge_boost_generator(const Wedge& w, const lie::LieAlgebra& poincare4) {
  if (poincare4.dim() != 10) throw InvalidArgument("generator extraction needs poincare(4)");
  // d/dt B(t) at 0 is 2 pi K with K = J01 (entries (0,1) = (1,0) = -1).
  if (w.exact()) {
    const ExactPoincare& g = *w.exact();
    RationalMatrix k(5, 5);
    k(0, 1) = -1;
    k(1, 0) = -1;
    const RationalMatrix x = g.affine() * k * g.inverse().affine();
    return WedgeGenerator{lie::LieElement(poincare4, lie::decompose_poincare_affine(4, x)), true, {}};
  }
  Eigen::Matrix<double, 5, 5> k = Eigen::Matrix<double, 5, 5>::Zero();
  k(0, 1) = -1;
  k(1, 0) = -1;
  const Eigen::Matrix<double, 5, 5> x = w.element().affine() * k * w.element().inverse().affine();
  // read coordinates off the distinguished entries, as in the exact case
  RationalVector coeffs;
  const double metric[4] = {1, -1, -1, -1};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) coeffs.push_back(rationalize(x(mu, nu) / metric[nu]));
  for (int mu = 0; mu < 4; ++mu) coeffs.push_back(rationalize(x(mu, 4)));
  return WedgeGenerator{lie::LieElement(poincare4, std::move(coeffs)), false,
                        {"defining element is not exact; generator computed numerically and rationalized"}};
}

namespace {

const Eigen::Matrix4d& rotation_pi_12() {
  static const Eigen::Matrix4d r = Eigen::Vector4d(1, -1, -1, 1).asDiagonal();
  return r;
}

RationalMatrix rotation_pi_12_exact() {
  RationalMatrix r(4, 4);
  r(0, 0) = 1;
  r(1, 1) = -1;
  r(2, 2) = -1;
  r(3, 3) = 1;
  return r;
}

}  // namespace

Wedge wedge_complement(const Wedge& w) {
  if (w.exact()) {
    ExactPoincare r;
    r.lorentz = rotation_pi_12_exact();
    return Wedge(*w.exact() * r);
  }
  return Wedge(w.element() * PoincareElement{rotation_pi_12(), Eigen::Vector4d::Zero()});
}

ComplementCheck check_complement(const Wedge& w, const std::vector<double>& ts) {
  ComplementCheck c;
  const Wedge wc = wedge_complement(w);
  for (double t : ts) {
    const auto a = wedge_boost(wc, t).affine();
    const auto b = wedge_boost(w, -t).affine();
    const auto p = (wedge_boost(wc, t) * wedge_boost(w, t)).affine();
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    c.boost_defect = std::max(c.boost_defect, (a - b).cwiseAbs().maxCoeff() / scale);
    c.product_defect = std::max(c.product_defect,
                                (p - Eigen::Matrix<double, 5, 5>::Identity()).cwiseAbs().maxCoeff() / scale);
  }
  c.involution = wedge_complement(wc).same_as(w);
  if (w.exact()) {
    // Lambda_{W'}(t) = g R B(t) R g^{-1} and Lambda_W(-t) = g B(-t) g^{-1}
    const ExactPoincare& g = *w.exact();
    ExactPoincare r;
    r.lorentz = rotation_pi_12_exact();
    auto embed = [](const SymbolicMatrix& m4) {
      SymbolicMatrix m5(5, std::vector<HyperbolicPoly>(5));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m5[i][j] = m4[i][j];
      m5[4][4] = HyperbolicPoly(1);
      return m5;
    };
    const auto lhs = symbolic_product(
        symbolic_product(symbolic_constant((g * r).affine()), embed(symbolic_boost(false))),
        symbolic_constant((g * r).inverse().affine()));
    const auto rhs = symbolic_product(symbolic_product(symbolic_constant(g.affine()), embed(symbolic_boost(true))),
                                      symbolic_constant(g.inverse().affine()));
    c.exact_identity = lhs == rhs;
  }
  return c;
}

// ---------------------------------------------------------------------------

HyperbolicPoly::HyperbolicPoly(Rational constant) : p_{std::move(constant)} { trim(); }

HyperbolicPoly HyperbolicPoly::c() {
  HyperbolicPoly h;
  h.p_ = {0, 1};
  return h;
}

HyperbolicPoly HyperbolicPoly::s() {
  HyperbolicPoly h;
  h.q_ = {1};
  return h;
}

void HyperbolicPoly::trim() {
  while (!p_.empty() && sgn(p_.back()) == 0) p_.pop_back();
  while (!q_.empty() && sgn(q_.back()) == 0) q_.pop_back();
}

namespace {

std::vector<Rational> poly_add(const std::vector<Rational>& a, const std::vector<Rational>& b, int sign) {
  std::vector<Rational> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  return r;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

HyperbolicPoly HyperbolicPoly::operator+(const HyperbolicPoly& o) const {
  HyperbolicPoly h;
  h.p_ = poly_add(p_, o.p_, 1);
  h.q_ = poly_add(q_, o.q_, 1);
  h.trim();
  return h;
}

HyperbolicPoly HyperbolicPoly::operator-(const HyperbolicPoly& o) const {
  HyperbolicPoly h;
  h.p_ = poly_add(p_, o.p_, -1);
  h.q_ = poly_add(q_, o.q_, -1);
  h.trim();
  return h;
}

HyperbolicPoly HyperbolicPoly::operator-() const { return HyperbolicPoly() - *this; }

HyperbolicPoly HyperbolicPoly::operator*(const HyperbolicPoly& o) const {
  // (p1 + s q1)(p2 + s q2) = p1 p2 + s^2 q1 q2 + s (p1 q2 + q1 p2), s^2 = c^2 - 1
  HyperbolicPoly h;
  const std::vector<Rational> s2{-1, 0, 1};
  h.p_ = poly_add(poly_mul(p_, o.p_), poly_mul(s2, poly_mul(q_, o.q_)), 1);
  h.q_ = poly_add(poly_mul(p_, o.q_), poly_mul(q_, o.p_), 1);
  h.trim();
  return h;
}

bool operator==(const HyperbolicPoly& a, const HyperbolicPoly& b) { return (a - b).is_zero(); }

bool HyperbolicPoly::is_zero() const { return p_.empty() && q_.empty(); }

std::string HyperbolicPoly::to_string() const {
  std::string out;
  auto term = [&](const Rational& coeff, std::size_t k, bool with_s) {
    if (sgn(coeff) == 0) return;
    std::string mono = with_s ? "s" : "";
    if (k > 0) mono += (mono.empty() ? "" : "*") + std::string("c") + (k > 1 ? "^" + std::to_string(k) : "");
    std::string cs = exact::to_string(coeff);
    if (!out.empty()) out += sgn(coeff) < 0 ? " - " : " + ";
    else if (sgn(coeff) < 0) out += "-";
    if (sgn(coeff) < 0) cs = exact::to_string(Rational(-coeff));
    if (mono.empty()) out += cs;
    else if (cs == "1") out += mono;
    else out += cs + "*" + mono;
  };
  for (std::size_t k = 0; k < p_.size(); ++k) term(p_[k], k, false);
  for (std::size_t k = 0; k < q_.size(); ++k) term(q_[k], k, true);
  return out.empty() ? "0" : out;
}

SymbolicMatrix symbolic_boost(bool negated) {
  SymbolicMatrix m(4, std::vector<HyperbolicPoly>(4));
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = HyperbolicPoly(1);
  // cosh is even and sinh odd in t
  const HyperbolicPoly s = negated ? HyperbolicPoly::s() : -HyperbolicPoly::s();
  m[0][0] = HyperbolicPoly::c();
  m[1][1] = HyperbolicPoly::c();
  m[0][1] = s;
  m[1][0] = s;
  return m;
}

SymbolicMatrix symbolic_product(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  SymbolicMatrix r(n, std::vector<HyperbolicPoly>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) r[i][j] = r[i][j] + a[i][l] * b[l][j];
    }
  return r;
}

SymbolicMatrix symbolic_constant(const RationalMatrix& m) {
  SymbolicMatrix r(m.rows(), std::vector<HyperbolicPoly>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = HyperbolicPoly(m(i, j));
  return r;
}

namespace {
SymbolicMatrix symbolic_transpose(const SymbolicMatrix& a) {
  SymbolicMatrix t(a[0].size(), std::vector<HyperbolicPoly>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}
}  // namespace

bool boost_preserves_metric_symbolic() {
  const auto b = symbolic_boost();
  return symbolic_product(symbolic_product(symbolic_transpose(b), symbolic_constant(eta_exact())), b) ==
         symbolic_constant(eta_exact());
}

bool complement_identity_symbolic() {
  const auto r = symbolic_constant(rotation_pi_12_exact());
  return symbolic_product(symbolic_product(r, symbolic_boost()), r) == symbolic_boost(true);
}

// ---------------------------------------------------------------------------

Wedge translated(const Wedge& w, const RationalVector& a) {
  if (a.size() != 4) throw InvalidArgument("translation must have 4 components");
  ExactPoincare t;
  t.translation = a;
  if (w.exact()) return Wedge(t * *w.exact());
  return Wedge(t.to_double() * w.element());
}

namespace {

// Rotation by pi/2 taking e1 to e_k (k = 2, 3) and e_k to -e1.
ExactPoincare rotation_to(std::size_t k) {
  ExactPoincare g;
  g.lorentz(1, 1) = 0;
  g.lorentz(k, k) = 0;
  g.lorentz(k, 1) = 1;
  g.lorentz(1, k) = -1;
  return g;
}

}  // namespace

std::vector<Wedge> coordinate_wedges() {
  return {Wedge::standard(), Wedge(rotation_to(2)), Wedge(rotation_to(3))};
}

std::vector<Wedge> six_wedges() {
  std::vector<Wedge> out = coordinate_wedges();
  const RationalVector e0{1, 0, 0, 0};
  for (std::size_t k = 0; k < 3; ++k) out.push_back(translated(out[k], e0));
  return out;
}

BoostGenerationReport boost_generation(const std::vector<Wedge>& wedges) {
  if (wedges.empty()) throw InvalidArgument("boost generation needs at least one wedge");
  const lie::LieAlgebra g = lie::poincare(4);
  BoostGenerationReport r;
  std::vector<lie::LieElement> gens;
  for (const auto& w : wedges) {
    r.generators.push_back(wedge_boost_generator(w, g));
    gens.push_back(r.generators.back().element);
  }
  const lie::Subspace closure = lie::generated_subalgebra(g, gens, r.rounds);
  r.closure_dim = closure.dim();
  r.contains_translations = closure.contains(lie::translation_ideal(g));
  r.success = r.closure_dim == g.dim();
  return r;
}

}  // namespace modcoh::spacetime
