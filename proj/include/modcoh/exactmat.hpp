#pragma once

// Exact dense linear algebra over Q, Z and prime fields.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modcoh/error.hpp"

namespace modcoh::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// Row-major dense matrix. Shape is fixed at construction.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw InvalidArgument("matrix entry count does not match shape");
  }
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& entries() const noexcept { return data_; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (sgn(v) != 0) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;
using IntegerMatrix = DenseMatrix<Integer>;
using RationalVector = std::vector<Rational>;

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
RationalVector operator*(const RationalMatrix& a, const RationalVector& x);

/// Matrix with entries reduced into [0, modulus). The modulus must be a prime
/// below 2^31 so that products fit in 64 bits.
class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix(std::uint32_t modulus, std::size_t rows, std::size_t cols);

  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Stores `value` reduced modulo the field characteristic.
  void set(std::size_t i, std::size_t j, std::int64_t value);

  static PrimeFieldMatrix reduce(const IntegerMatrix& m, std::uint32_t modulus);

 private:
  friend std::size_t rank(const PrimeFieldMatrix&);
  friend std::vector<std::vector<std::uint32_t>> kernel_basis(const PrimeFieldMatrix&);

  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

/// Bit-packed matrix over GF(2); each row is a run of 64-bit words and row
/// operations are word-parallel XORs.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    auto& w = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    w = v ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64); }

  static Gf2Matrix from(const PrimeFieldMatrix& m);

 private:
  friend std::size_t rank(const Gf2Matrix&);
  friend std::vector<std::vector<std::uint32_t>> kernel_basis(const Gf2Matrix&);

  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

bool is_prime(std::uint64_t n);

/// Fraction-free (Bareiss) row echelon form of a rational matrix after each
/// row has been scaled to integers. `pivots[k]` is the pivot column of row k.
struct Echelon {
  IntegerMatrix rows;
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return pivots.size(); }
};

Echelon echelon(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);
std::size_t rank(const PrimeFieldMatrix& m);
std::size_t rank(const Gf2Matrix& m);

/// Basis of the right null space {x : m x = 0}; one vector per free column,
/// with a 1 in that column.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);
std::vector<std::vector<std::uint32_t>> kernel_basis(const PrimeFieldMatrix& m);
std::vector<std::vector<std::uint32_t>> kernel_basis(const Gf2Matrix& m);

/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

/// Reduced row echelon basis (over Q) of the row space.
RationalMatrix row_space_basis(const RationalMatrix& m);

/// Smith normal form D = U A V with U, V unimodular. `factors` holds the
/// positive diagonal entries d_1 | d_2 | ... (units included), one per unit of
/// rank.
struct SmithForm {
  std::vector<Integer> factors;
  std::optional<IntegerMatrix> left;   // U, rows x rows
  std::optional<IntegerMatrix> right;  // V, cols x cols
  std::size_t rank() const noexcept { return factors.size(); }
};

struct SmithOptions {
  bool left = false;
  bool right = false;
};

SmithForm smith_normal_form(const IntegerMatrix& m, SmithOptions opts = {});

/// Invariant factors (each > 1, dividing in order) of the finite abelian group
/// that is the direct sum of cyclic groups with the given orders.
std::vector<Integer> invariant_factors(std::span<const Integer> cyclic_orders);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace modcoh::exact
