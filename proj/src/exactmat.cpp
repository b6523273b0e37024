#include "modcoh/exactmat.hpp"

#include <algorithm>
#include <utility>

namespace modcoh::exact {

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product shape mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product shape mismatch");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector shape mismatch");
  RationalVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) out[i] += a(i, j) * x[j];
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

namespace {

IntegerMatrix integerize_rows(const RationalMatrix& m) {
  IntegerMatrix a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (const auto& q : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& q = m(i, j);
      if (sgn(q) == 0) continue;
      a(i, j) = q.get_num() * (l / q.get_den());
    }
  }
  return a;
}

// In-place Bareiss forward elimination; returns pivot columns. Rows below the
// rank are left zero.
std::vector<std::size_t> bareiss(IntegerMatrix& a) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  Integer tmp;
  std::size_t r = 0;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (sgn(a(i, c)) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    const Integer& p = a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer f = a(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        auto& x = a(i, j);
        tmp = p * x;
        if (sgn(f) != 0) tmp -= f * a(r, j);
        mpz_divexact(x.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RationalVector back_substitute(const Echelon& e, std::size_t cols, std::size_t free_col,
                               const RationalVector* rhs) {
  // rhs (optional) gives, per echelon row, the right-hand side value.
  RationalVector x(cols);
  if (free_col < cols) x[free_col] = 1;
  for (std::size_t k = e.rank(); k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    Rational s = rhs ? (*rhs)[k] : Rational(0);
    for (std::size_t j = pc + 1; j < cols; ++j)
      if (sgn(e.rows(k, j)) != 0 && sgn(x[j]) != 0) s -= Rational(e.rows(k, j)) * x[j];
    x[pc] = s / Rational(e.rows(k, pc));
    x[pc].canonicalize();
  }
  return x;
}

}  // namespace

Echelon echelon(const RationalMatrix& m) {
  Echelon e{integerize_rows(m), {}};
  e.pivots = bareiss(e.rows);
  return e;
}

std::size_t rank(const RationalMatrix& m) { return echelon(m).rank(); }

std::size_t rank(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  return bareiss(a).size();
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
  const Echelon e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RationalVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f)
    if (!is_pivot[f]) out.push_back(back_substitute(e, m.cols(), f, nullptr));
  return out;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw InvalidArgument("right-hand side length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  RationalVector rhs(e.rank());
  for (std::size_t k = 0; k < e.rank(); ++k) rhs[k] = Rational(e.rows(k, m.cols()));
  return back_substitute(e, m.cols(), m.cols(), &rhs);
}

RationalMatrix row_space_basis(const RationalMatrix& m) {
  const Echelon e = echelon(m);
  const std::size_t r = e.rank();
  RationalMatrix out(r, m.cols());
  for (std::size_t k = 0; k < r; ++k) {
    const Rational lead(e.rows(k, e.pivots[k]));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(k, j) = Rational(e.rows(k, j)) / lead;
      out(k, j).canonicalize();
    }
  }
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      const Rational f = out(i, pc);
      if (sgn(f) == 0) continue;
      for (std::size_t j = pc; j < m.cols(); ++j) out(i, j) -= f * out(k, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Prime fields

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Reduced row echelon form mod p in place; returns pivot columns.
std::vector<std::size_t> rref_mod(std::vector<std::uint32_t>& a, std::size_t rows,
                                  std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t inv = inverse_mod(a[r * cols + c], p);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = static_cast<std::uint32_t>(a[r * cols + j] * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint64_t f = a[i * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t sub = f * a[r * cols + j] % p;
        a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + p - sub) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

PrimeFieldMatrix::PrimeFieldMatrix(std::uint32_t modulus, std::size_t rows, std::size_t cols)
    : p_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (modulus >= (1u << 31) || !is_prime(modulus))
    throw InvalidArgument("prime field modulus must be a prime below 2^31, got " +
                          std::to_string(modulus));
}

void PrimeFieldMatrix::set(std::size_t i, std::size_t j, std::int64_t value) {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  data_[i * cols_ + j] = static_cast<std::uint32_t>(r);
}

PrimeFieldMatrix PrimeFieldMatrix::reduce(const IntegerMatrix& m, std::uint32_t modulus) {
  PrimeFieldMatrix out(modulus, m.rows(), m.cols());
  const Integer p = modulus;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) == 0) continue;
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
      out.data_[i * m.cols() + j] = static_cast<std::uint32_t>(r.get_ui());
    }
  return out;
}

std::size_t rank(const PrimeFieldMatrix& m) {
  if (m.p_ == 2) return rank(Gf2Matrix::from(m));
  auto a = m.data_;
  return rref_mod(a, m.rows_, m.cols_, m.p_).size();
}

std::vector<std::vector<std::uint32_t>> kernel_basis(const PrimeFieldMatrix& m) {
  if (m.p_ == 2) return kernel_basis(Gf2Matrix::from(m));
  auto a = m.data_;
  const auto pivots = rref_mod(a, m.rows_, m.cols_, m.p_);
  std::vector<bool> is_pivot(m.cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t f = 0; f < m.cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint32_t> x(m.cols_, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const std::uint32_t v = a[k * m.cols_ + f];
      x[pivots[k]] = v == 0 ? 0 : m.p_ - v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

Gf2Matrix Gf2Matrix::from(const PrimeFieldMatrix& m) {
  if (m.modulus() != 2) throw InvalidArgument("GF(2) packing needs modulus 2");
  Gf2Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) out.set(i, j, true);
  return out;
}

namespace {

// Packed RREF; returns pivot columns.
std::vector<std::size_t> rref_gf2(std::vector<std::uint64_t>& bits, std::size_t rows,
                                  std::size_t cols, std::size_t words, bool full) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (bits[i * words + w] & mask) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(bits.begin() + piv * words, bits.begin() + (piv + 1) * words,
                       bits.begin() + r * words);
    const std::uint64_t* src = bits.data() + r * words;
    for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      std::uint64_t* dst = bits.data() + i * words;
      if (!(dst[w] & mask)) continue;
      for (std::size_t k = w; k < words; ++k) dst[k] ^= src[k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Gf2Matrix& m) {
  auto bits = m.bits_;
  return rref_gf2(bits, m.rows_, m.cols_, m.words_, false).size();
}

std::vector<std::vector<std::uint32_t>> kernel_basis(const Gf2Matrix& m) {
  auto bits = m.bits_;
  const auto pivots = rref_gf2(bits, m.rows_, m.cols_, m.words_, true);
  std::vector<bool> is_pivot(m.cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t f = 0; f < m.cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint32_t> x(m.cols_, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      x[pivots[k]] = (bits[k * m.words_ + f / 64] >> (f % 64)) & 1u;
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

class SmithReducer {
 public:
  SmithReducer(const IntegerMatrix& m, SmithOptions opts) : a_(m) {
    if (opts.left) u_ = IntegerMatrix::identity(m.rows());
    if (opts.right) v_ = IntegerMatrix::identity(m.cols());
  }

  SmithForm run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (!bring_pivot(t)) break;
      clear_cross(t);
    }
    const std::size_t r = t;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j)
        while (!mpz_divisible_p(a_(j, j).get_mpz_t(), a_(i, i).get_mpz_t())) {
          add_col(i, j, 1);
          clear_cross(i);
        }
    SmithForm out;
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(a_(i, i)) < 0) negate_row(i);
      out.factors.push_back(a_(i, i));
    }
    out.left = std::move(u_);
    out.right = std::move(v_);
    return out;
  }

 private:
  // Moves a minimal-magnitude nonzero entry of the leftmost nonzero column of
  // the trailing block to (t, t).
  bool bring_pivot(std::size_t t) {
    for (std::size_t c = t; c < a_.cols(); ++c) {
      std::size_t best = a_.rows();
      for (std::size_t i = t; i < a_.rows(); ++i) {
        if (sgn(a_(i, c)) == 0) continue;
        if (best == a_.rows() || cmpabs(a_(i, c), a_(best, c)) < 0) best = i;
      }
      if (best == a_.rows()) continue;
      swap_rows(t, best);
      swap_cols(t, c);
      return true;
    }
    return false;
  }

  void clear_cross(std::size_t t) {
    Integer q;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (sgn(a_(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (sgn(a_(i, t)) != 0) dirty = true;
      }
      if (dirty) {
        pivot_in_column(t);
        continue;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (sgn(a_(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (sgn(a_(t, j)) != 0) dirty = true;
      }
      if (dirty) {
        pivot_in_row(t);
        continue;
      }
      return;
    }
  }

  void pivot_in_column(std::size_t t) {
    std::size_t best = t;
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (sgn(a_(i, t)) != 0 && cmpabs(a_(i, t), a_(best, t)) < 0) best = i;
    swap_rows(t, best);
  }
  void pivot_in_row(std::size_t t) {
    std::size_t best = t;
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (sgn(a_(t, j)) != 0 && cmpabs(a_(t, j), a_(t, best)) < 0) best = j;
    swap_cols(t, best);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.cols(); ++k) std::swap(a_(i, k), a_(j, k));
    if (u_)
      for (std::size_t k = 0; k < u_->cols(); ++k) std::swap((*u_)(i, k), (*u_)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.rows(); ++k) std::swap(a_(k, i), a_(k, j));
    if (v_)
      for (std::size_t k = 0; k < v_->rows(); ++k) std::swap((*v_)(k, i), (*v_)(k, j));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t k = 0; k < a_.cols(); ++k)
      if (sgn(a_(src, k)) != 0) a_(dst, k) += f * a_(src, k);
    if (u_)
      for (std::size_t k = 0; k < u_->cols(); ++k)
        if (sgn((*u_)(src, k)) != 0) (*u_)(dst, k) += f * (*u_)(src, k);
  }
  // col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t k = 0; k < a_.rows(); ++k)
      if (sgn(a_(k, src)) != 0) a_(k, dst) += f * a_(k, src);
    if (v_)
      for (std::size_t k = 0; k < v_->rows(); ++k)
        if (sgn((*v_)(k, src)) != 0) (*v_)(k, dst) += f * (*v_)(k, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) = -a_(i, k);
    if (u_)
      for (std::size_t k = 0; k < u_->cols(); ++k) (*u_)(i, k) = -(*u_)(i, k);
  }

  IntegerMatrix a_;
  std::optional<IntegerMatrix> u_;
  std::optional<IntegerMatrix> v_;
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m, SmithOptions opts) {
  return SmithReducer(m, opts).run();
}

std::vector<Integer> invariant_factors(std::span<const Integer> cyclic_orders) {
  IntegerMatrix d(cyclic_orders.size(), cyclic_orders.size());
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i) d(i, i) = cyclic_orders[i];
  std::vector<Integer> out;
  for (auto& f : smith_normal_form(d).factors)
    if (f != 1) out.push_back(f);
  return out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  // base 10 throughout: GMP would read a leading 0 as octal
  auto integer = [&](const std::string& digits) {
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument(text);
    return Integer(digits[0] == '+' ? digits.substr(1) : digits, 10);
  };
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const Integer num = integer(text.substr(0, slash));
      const Integer den = integer(text.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in rational '" + text + "'");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    // decimal with optional exponent, converted exactly
    std::string mantissa = text;
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
      mantissa = text.substr(0, e);
      std::size_t used = 0;
      const std::string exp_text = text.substr(e + 1);
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size() || std::labs(exponent) > 4096) throw std::invalid_argument(text);
    }
    if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
      exponent -= static_cast<long>(mantissa.size() - dot - 1);
      mantissa.erase(dot, 1);
    }
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(integer(mantissa) * ten_pow) : Rational(integer(mantissa), ten_pow);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("malformed rational '" + text + "'");
  }
}

}  // namespace modcoh::exact
