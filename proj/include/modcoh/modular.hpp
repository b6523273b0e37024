#pragma once

// Finite-dimensional Tomita-Takesaki theory.
//
// Antilinear operators are stored as v -> U conj(v). For a unital *-algebra
// M of d x d matrices with a cyclic and separating unit vector Omega:
//   S (x Omega) = x* Omega,  Delta = S* S,  J = S Delta^{-1/2}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modcoh/error.hpp"
#include "modcoh/exactmat.hpp"

namespace modcoh::modular {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTolerance = 1e-10;

/// Span of complex matrices closed under product and adjoint, stored with a
/// basis orthonormal for <a, b> = tr(a* b).
class MatrixAlgebra {
 public:
  /// Orthonormalizes `spanning` and records the closure flags.
  static MatrixAlgebra from_spanning(std::size_t d, const std::vector<Matrix>& spanning, double tol = 1e-12);

  std::size_t ambient_dim() const noexcept { return d_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Matrix>& basis() const noexcept { return basis_; }
  bool star_closed() const noexcept { return star_closed_; }
  bool unital() const noexcept { return unital_; }
  bool product_closed() const noexcept { return product_closed_; }

  /// Hilbert-Schmidt distance from x to the span.
  double distance(const Matrix& x) const;
  bool contains(const Matrix& x, double tol = kDefaultTolerance) const { return distance(x) <= tol; }

 private:
  std::size_t d_ = 0;
  std::vector<Matrix> basis_;
  bool star_closed_ = false;
  bool unital_ = false;
  bool product_closed_ = false;
};

/// Smallest unital *-algebra containing the generators.
MatrixAlgebra algebra_closure(const std::vector<Matrix>& generators, double tol = 1e-12);

/// Square matrix over Q(i), entries stored as separate real and imaginary
/// parts in row-major order.
struct ExactComplexMatrix {
  std::size_t n = 0;
  std::vector<exact::Rational> re;
  std::vector<exact::Rational> im;

  static ExactComplexMatrix zero(std::size_t n);
  static ExactComplexMatrix identity(std::size_t n);
  ExactComplexMatrix adjoint() const;
  ExactComplexMatrix operator*(const ExactComplexMatrix& o) const;
  Matrix to_double() const;
};

/// Complex dimension of the unital *-algebra generated by exact matrices,
/// computed with rational ranks.
std::size_t exact_closure_dimension(const std::vector<ExactComplexMatrix>& generators);

/// {x : [x, b] = 0 for every basis element b}.
MatrixAlgebra commutant(const MatrixAlgebra& m, double tol = kDefaultTolerance);

bool is_cyclic(const MatrixAlgebra& m, const Vector& omega, double tol = kDefaultTolerance);

struct SeparatingCheck {
  bool separating = false;
  std::optional<Matrix> annihilator;  // nonzero x in M with x Omega = 0
};

/// Runs the kernel test on x -> x Omega and the cyclicity test for the
/// commutant; throws std::logic_error if they disagree.
SeparatingCheck separating_check(const MatrixAlgebra& m, const Vector& omega, double tol = kDefaultTolerance);
bool is_separating(const MatrixAlgebra& m, const Vector& omega, double tol = kDefaultTolerance);

/// v -> unitary * conj(v).
struct Antilinear {
  Matrix unitary;
  Vector apply(const Vector& v) const { return unitary * v.conjugate(); }
  /// A x A for antilinear A and linear x, as a linear matrix.
  Matrix conjugate(const Matrix& x) const { return unitary * x.conjugate() * unitary.conjugate(); }
};

struct ModularTriple {
  Vector omega;
  Matrix delta;
  Antilinear j;
  Antilinear s;
  double condition = 0;  // condition number of the basis {x_i Omega}

  /// Delta^{it}.
  Matrix delta_it(double t) const;
  Matrix delta_power(double exponent) const;
  std::vector<double> spectrum() const;  // descending
};

/// Omega fails to be cyclic or separating.
class NotCyclicSeparating : public MathError {
 public:
  NotCyclicSeparating(std::string property, std::optional<Matrix> annihilator, const std::string& what)
      : MathError(what), property_(std::move(property)), annihilator_(std::move(annihilator)) {}
  const std::string& property() const noexcept { return property_; }
  const std::optional<Matrix>& annihilator() const noexcept { return annihilator_; }

 private:
  std::string property_;
  std::optional<Matrix> annihilator_;
};

ModularTriple tomita(const MatrixAlgebra& m, const Vector& omega, double tol = kDefaultTolerance);

struct TripleDefects {
  double s_action = 0;      // max |S x Omega - x* Omega| over basis x
  double polar = 0;         // |S - J Delta^{1/2}|
  double j_squared = 0;     // |J^2 - 1|
  double j_delta_j = 0;     // |J Delta J - Delta^{-1}|
  double delta_omega = 0;   // |Delta Omega - Omega|
  double j_omega = 0;       // |J Omega - Omega|
  double max() const;
};

TripleDefects triple_defects(const ModularTriple& t, const MatrixAlgebra& m);

/// max over t and basis x of the distance from Delta^{it} x Delta^{-it} to M.
double modular_flow_defect(const ModularTriple& t, const MatrixAlgebra& m, const std::vector<double>& ts);
double modular_flow_defect(const Matrix& delta, const MatrixAlgebra& m, const std::vector<double>& ts);

/// max over seeded random pairs x, y in M of |<Omega, x Delta y Omega> -
/// <Omega, y x Omega>|.
double kms_defect(const MatrixAlgebra& m, const Vector& omega, std::size_t samples, std::uint64_t seed);
double kms_defect(const MatrixAlgebra& m, const Vector& omega, const Matrix& delta, std::size_t samples,
                  std::uint64_t seed);

/// J M J as an algebra.
MatrixAlgebra reflect(const ModularTriple& t, const MatrixAlgebra& m);

/// Largest distance of a basis element of either algebra from the other.
double subspace_distance(const MatrixAlgebra& a, const MatrixAlgebra& b);

/// Delta with its two largest eigenvalues exchanged (a deliberately wrong
/// modular operator).
Matrix swap_top_eigenvalues(const Matrix& delta);

/// Operator norm.
double operator_norm(const Matrix& x);

// Standard examples on C^2 (x) C^2, index 2i + j for e_i (x) e_j.
Matrix kron(const Matrix& a, const Matrix& b);
MatrixAlgebra m2_tensor_one();
MatrixAlgebra one_tensor_m2();
/// sqrt(p) e1(x)e1 + sqrt(1-p) e2(x)e2.
Vector entangled_state(double p);

}  // namespace modcoh::modular
