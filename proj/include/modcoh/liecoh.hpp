#pragma once

// Chevalley-Eilenberg cohomology with trivial real coefficients.
//
// Cochains of degree k are expanded in the basis e^I of the dual exterior
// power, I running over strictly increasing index tuples in lexicographic
// order. The differential is
//   (d w)(x_0..x_k) = sum_{a<b} (-1)^{a+b} w([x_a, x_b], x_0 .. ^a .. ^b .. x_k).

#include <array>
#include <string>
#include <vector>

#include "modcoh/liealg.hpp"

namespace modcoh::liecoh {

using exact::Rational;
using exact::RationalMatrix;
using exact::RationalVector;
using lie::LieAlgebra;

/// Strictly increasing k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> wedge_basis(std::size_t n, std::size_t k);

/// Matrix of d_k : Lambda^k g* -> Lambda^{k+1} g*; 0 <= k <= dim(g).
RationalMatrix ce_differential(const LieAlgebra& g, std::size_t k);

struct CEComplex {
  LieAlgebra algebra;
  std::vector<RationalMatrix> differentials;  // d_0 .. d_max
  std::vector<std::string> warnings;
};

/// Differentials up to `max_degree` (default 3). Degrees beyond 3 are built
/// on request with a warning about the binomial growth of the cochain spaces.
CEComplex ce_complex(const LieAlgebra& g, std::size_t max_degree = 3);

struct CohomologyDims {
  std::size_t degree;
  std::size_t dim_z;
  std::size_t dim_b;
  std::size_t dim_h;
};

CohomologyDims lie_cohomology(const LieAlgebra& g, std::size_t k);
std::size_t lie_cohomology_dim(const LieAlgebra& g, std::size_t k);

/// Antisymmetric 2-cochain, stored over wedge_basis(dim, 2).
class LieCochain2 {
 public:
  LieCochain2(LieAlgebra g, RationalVector coeffs);
  static LieCochain2 zero(const LieAlgebra& g);
  /// w(x_i, x_j) = value for i<j (and antisymmetric completion).
  static LieCochain2 from_pairs(const LieAlgebra& g,
                                const std::vector<std::pair<std::array<std::size_t, 2>, Rational>>& values);

  const LieAlgebra& algebra() const noexcept { return g_; }
  const RationalVector& coeffs() const noexcept { return coeffs_; }
  Rational operator()(std::size_t i, std::size_t j) const;

 private:
  LieAlgebra g_;
  RationalVector coeffs_;
};

/// Thrown when a 2-cochain fails d_2 w = 0; carries the first basis triple
/// where (d_2 w) is nonzero.
class NotClosed : public MathError {
 public:
  NotClosed(std::array<std::size_t, 3> triple, const std::string& what)
      : MathError(what), triple_(triple) {}
  std::array<std::size_t, 3> triple() const noexcept { return triple_; }

 private:
  std::array<std::size_t, 3> triple_;
};

bool is_closed(const LieCochain2& w);

/// g (+) R z with [x, y]' = [x, y] + w(x, y) z. Rejects non-closed w.
LieAlgebra lie_central_extension(const LieAlgebra& g, const LieCochain2& w);
/// Same construction with no closedness check (for demonstrating that the
/// Jacobi identity then fails).
LieAlgebra lie_central_extension_unchecked(const LieAlgebra& g, const LieCochain2& w);

/// A phi in g* with d_1 phi = w, together with the check that x' = x - phi(x) z
/// turns the extension into g (+) R.
struct LieSplitting {
  RationalVector phi;
  bool verified;
};

std::optional<LieSplitting> split_central_extension(const LieAlgebra& g, const LieCochain2& w);

}  // namespace modcoh::liecoh
