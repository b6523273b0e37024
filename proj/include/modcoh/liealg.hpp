#pragma once

// Finite-dimensional Lie algebras over Q given by structure constants.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modcoh/exactmat.hpp"

namespace modcoh::lie {

using exact::Rational;
using exact::RationalMatrix;
using exact::RationalVector;

/// Immutable handle; copies share the same constants. [x_i, x_j] =
/// sum_k c(i, j, k) x_k.
class LieAlgebra {
 public:
  struct Term {
    std::size_t index;
    Rational coeff;
  };
  struct Bracket {
    std::size_t i;
    std::size_t j;
    std::vector<Term> terms;
  };

  /// Constants taken verbatim (dim^3 entries, index (i*dim + j)*dim + k). No
  /// completion and no validation; see `validate`.
  static LieAlgebra from_constants(std::string name, std::vector<std::string> labels,
                                   std::vector<Rational> constants);

  /// Listed brackets plus their antisymmetric partners; everything else zero.
  /// Conflicting entries for the same unordered pair are rejected.
  static LieAlgebra from_brackets(std::string name, std::vector<std::string> labels,
                                  const std::vector<Bracket>& brackets);

  std::size_t dim() const noexcept { return d_->dim; }
  const std::string& name() const noexcept { return d_->name; }
  const std::vector<std::string>& labels() const noexcept { return d_->labels; }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return d_->c[(i * d_->dim + j) * d_->dim + k];
  }
  const std::vector<Rational>& constants() const noexcept { return d_->c; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Same constants and labels (identity of the handle is not required).
  bool same_as(const LieAlgebra& other) const;

 private:
  struct Data {
    std::string name;
    std::size_t dim;
    std::vector<std::string> labels;
    std::vector<Rational> c;
  };
  explicit LieAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

class LieElement {
 public:
  LieElement(LieAlgebra parent, RationalVector coeffs);
  static LieElement zero(const LieAlgebra& g);
  static LieElement basis(const LieAlgebra& g, std::size_t i);
  static LieElement named(const LieAlgebra& g, const std::string& label);

  const LieAlgebra& parent() const noexcept { return parent_; }
  const RationalVector& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const;

  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator-() const;
  LieElement operator*(const Rational& s) const;
  friend bool operator==(const LieElement& a, const LieElement& b);

  std::string to_string() const;

 private:
  LieAlgebra parent_;
  RationalVector coeffs_;
};

/// Linear subspace of an algebra. The basis is kept in reduced row echelon
/// form, so two subspaces are equal iff their bases are.
class Subspace {
 public:
  explicit Subspace(LieAlgebra parent) : parent_(std::move(parent)) {}
  static Subspace span(const LieAlgebra& g, const std::vector<LieElement>& vectors);
  static Subspace whole(const LieAlgebra& g);

  const LieAlgebra& parent() const noexcept { return parent_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  std::vector<LieElement> basis() const;

  /// Adds v to the span; true when the dimension grew.
  bool insert(const LieElement& v);
  bool contains(const LieElement& v) const;
  bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  RationalVector reduce(const RationalVector& v) const;

  LieAlgebra parent_;
  std::vector<RationalVector> rows_;  // RREF rows
  std::vector<std::size_t> pivots_;
};

LieElement bracket(const LieElement& x, const LieElement& y);

Subspace derived_subalgebra(const LieAlgebra& g);
bool is_perfect(const LieAlgebra& g);

/// Smallest bracket-closed subspace containing `gens`. Rounds bracket the
/// current basis with the generators, then with itself, until the dimension
/// stops growing.
Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<LieElement>& gens);

/// Number of closure rounds the last call needed is reported through this
/// overload.
Subspace generated_subalgebra(const LieAlgebra& g, const std::vector<LieElement>& gens,
                              std::size_t& rounds);

/// Smallest subspace containing x with [g, I] in I.
Subspace ideal_closure(const LieAlgebra& g, const LieElement& x);

struct ValidationReport {
  std::optional<std::array<std::size_t, 3>> antisymmetry_violation;  // (i, j, k)
  Rational jacobi_defect;
  std::optional<std::array<std::size_t, 3>> jacobi_triple;  // worst triple
  bool ok() const { return !antisymmetry_violation && sgn(jacobi_defect) == 0; }
};

ValidationReport validate(const LieAlgebra& g);

/// max over basis triples and output components of
/// |[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]|.
Rational jacobi_defect(const LieAlgebra& g);

/// Builtins: poincare2..4, lorentz2..4, sl2, heisenberg, abelian<n>. Also
/// accepts the "poincare(4)" spelling.
LieAlgebra builtin(const std::string& name);

LieAlgebra poincare(int spacetime_dim);
LieAlgebra lorentz(int spacetime_dim);
LieAlgebra sl2();
LieAlgebra heisenberg();
LieAlgebra abelian(std::size_t n);

/// Affine (d+1)x(d+1) matrices realizing the poincare(d) basis, in basis
/// order (J_{mu nu} for mu<nu, then P_mu).
std::vector<RationalMatrix> poincare_affine_basis(int spacetime_dim);

/// Coordinates of an affine generator matrix in the poincare(d) basis; throws
/// when the matrix is not in the algebra.
RationalVector decompose_poincare_affine(int spacetime_dim, const RationalMatrix& generator);

/// Span of P_0 .. P_{d-1} inside poincare(d).
Subspace translation_ideal(const LieAlgebra& poincare_d);

}  // namespace modcoh::lie
