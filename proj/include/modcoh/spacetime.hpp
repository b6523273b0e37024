#pragma once

// Four-dimensional Minkowski space, metric diag(+1, -1, -1, -1), coordinates
// (x0, x1, x2, x3). The standard wedge is W1 = {x : |x0| < x1}; its boosts
//   B(t) = [[cosh 2 pi t, -sinh 2 pi t], [-sinh 2 pi t, cosh 2 pi t]]
// act on (x0, x1) and fix x2, x3. A wedge g W1 has boosts g B(t) g^{-1}.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modcoh/exactmat.hpp"
#include "modcoh/liealg.hpp"

namespace modcoh::spacetime {

using exact::Rational;
using exact::RationalMatrix;
using exact::RationalVector;

/// x -> lorentz x + translation.
struct PoincareElement {
  Eigen::Matrix4d lorentz = Eigen::Matrix4d::Identity();
  Eigen::Vector4d translation = Eigen::Vector4d::Zero();

  Eigen::Vector4d apply(const Eigen::Vector4d& x) const { return lorentz * x + translation; }
  PoincareElement operator*(const PoincareElement& o) const;
  PoincareElement inverse() const;
  /// 5x5 affine matrix.
  Eigen::Matrix<double, 5, 5> affine() const;
};

/// The same element in exact arithmetic.
struct ExactPoincare {
  RationalMatrix lorentz = RationalMatrix::identity(4);
  RationalVector translation = RationalVector(4);

  ExactPoincare operator*(const ExactPoincare& o) const;
  ExactPoincare inverse() const;
  RationalMatrix affine() const;
  PoincareElement to_double() const;
};

/// Throws InvalidArgument unless the matrix preserves the metric (to `tol`),
/// has determinant +1 and a 00 entry >= 1.
void validate_lorentz(const Eigen::Matrix4d& lorentz, double tol = 1e-10);
void validate_lorentz(const RationalMatrix& lorentz);

/// g W1 for a proper orthochronous Poincare element g.
class Wedge {
 public:
  explicit Wedge(const PoincareElement& g);
  explicit Wedge(const ExactPoincare& g);
  static Wedge standard();

  const PoincareElement& element() const noexcept { return g_; }
  const std::optional<ExactPoincare>& exact() const noexcept { return exact_; }
  bool contains(const Eigen::Vector4d& x) const;

  /// Two half-spaces {u . x > c} cutting out the wedge, each scaled so that
  /// |u0| = 1, sorted. Equal wedges have equal normal forms.
  std::array<std::pair<Eigen::Vector4d, double>, 2> normal_form() const;
  bool same_as(const Wedge& other, double tol = 1e-10) const;

 private:
  PoincareElement g_;
  std::optional<ExactPoincare> exact_;
};

Eigen::Matrix4d boost_matrix(double t);

/// Lambda_W(t) = g B(t) g^{-1}.
PoincareElement wedge_boost(const Wedge& w, double t);

/// Draws points of W from a seeded generator and checks that wedge_boost(w,
/// t) keeps them inside; returns the number that leave.
std::size_t boost_escapes(const Wedge& w, double t, std::size_t samples, std::uint64_t seed);
std::vector<Eigen::Vector4d> sample_wedge_points(const Wedge& w, std::size_t samples, std::uint64_t seed);

/// d/dt Lambda_W(t) at t = 0 equals 2 pi times `element`, an element of
/// poincare(4) (basis J01, J02, J03, J12, J13, J23, P0..P3).
struct WedgeGenerator {
  lie::LieElement element;
  bool exact = true;
  std::vector<std::string> warnings;
};

WedgeGenerator wedge_boost_generator(const Wedge& w, const lie::LieAlgebra& poincare4);

/// W' = g R W1 with R = diag(1, -1, -1, 1), the rotation by pi in the x1x2
/// plane; Lambda_{W'}(t) = Lambda_W(-t).
Wedge wedge_complement(const Wedge& w);

struct ComplementCheck {
  double boost_defect = 0;    // max |Lambda_{W'}(t) - Lambda_W(-t)| over t
  double product_defect = 0;  // max |Lambda_{W'}(t) Lambda_W(t) - 1|
  bool involution = false;    // (W')' = W
  std::optional<bool> exact_identity;  // symbolic check, when W is exact
};

ComplementCheck check_complement(const Wedge& w, const std::vector<double>& ts);

// ---------------------------------------------------------------------------
// Symbolic t: polynomials in c = cosh 2 pi t and s = sinh 2 pi t modulo
// c^2 - s^2 = 1, kept in the normal form p(c) + s q(c).

class HyperbolicPoly {
 public:
  HyperbolicPoly() = default;
  explicit HyperbolicPoly(Rational constant);
  static HyperbolicPoly c();
  static HyperbolicPoly s();

  HyperbolicPoly operator+(const HyperbolicPoly& o) const;
  HyperbolicPoly operator-(const HyperbolicPoly& o) const;
  HyperbolicPoly operator-() const;
  HyperbolicPoly operator*(const HyperbolicPoly& o) const;
  friend bool operator==(const HyperbolicPoly& a, const HyperbolicPoly& b);
  bool is_zero() const;
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> p_;  // coefficients of c^k
  std::vector<Rational> q_;  // coefficients of s c^k
};

using SymbolicMatrix = std::vector<std::vector<HyperbolicPoly>>;

/// B(t), or B(-t) when `negated`, with symbolic entries.
SymbolicMatrix symbolic_boost(bool negated = false);
SymbolicMatrix symbolic_product(const SymbolicMatrix& a, const SymbolicMatrix& b);
SymbolicMatrix symbolic_constant(const RationalMatrix& m);

/// B(t)^T eta B(t) = eta, as an identity in t.
bool boost_preserves_metric_symbolic();
/// R B(t) R^{-1} = B(-t), as an identity in t.
bool complement_identity_symbolic();

// ---------------------------------------------------------------------------

Wedge translated(const Wedge& w, const RationalVector& a);

/// W1 and its images under the rotations taking e1 to e2 and to e3.
std::vector<Wedge> coordinate_wedges();
/// coordinate_wedges() plus their translates by e0.
std::vector<Wedge> six_wedges();

struct BoostGenerationReport {
  std::vector<WedgeGenerator> generators;
  std::size_t closure_dim = 0;
  std::size_t rounds = 0;
  bool contains_translations = false;
  bool success = false;  // closure is all of poincare(4)
};

BoostGenerationReport boost_generation(const std::vector<Wedge>& wedges);

}  // namespace modcoh::spacetime
