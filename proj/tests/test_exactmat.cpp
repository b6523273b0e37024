#include <random>

#include "doctest.h"
#include "modcoh/exactmat.hpp"
#include "oracle.hpp"

using namespace modcoh::exact;

namespace {

IntegerMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

std::vector<std::vector<Rational>> rows_of(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

// Low-rank matrices come from products of thin factors.
IntegerMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_integer_matrix(rng, r, k, -3, 3) * random_integer_matrix(rng, k, c, -3, 3);
}

}  // namespace

TEST_CASE("rank and kernel of small matrices") {
  const RationalMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(m) == 2);
  const auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  const auto mk = m * ker[0];
  for (const auto& v : mk) CHECK(v == 0);
  CHECK(rank(RationalMatrix(3, 4)) == 0);
  CHECK(rank(RationalMatrix::identity(5)) == 5);
}

TEST_CASE("Bareiss rank agrees with plain Gauss-Jordan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7, k = 1 + rng() % 4;
    const auto m = to_rational(trial % 2 ? random_low_rank(rng, r, c, k) : random_integer_matrix(rng, r, c, -4, 4));
    CHECK(rank(m) == oracle::rank(rows_of(m)));
  }
}

TEST_CASE("kernel basis has the right size and is annihilated") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
    const auto m = to_rational(random_low_rank(rng, r, c, 1 + rng() % 3));
    const auto ker = kernel_basis(m);
    CHECK(ker.size() == c - rank(m));
    for (const auto& v : ker)
      for (const auto& x : m * v) CHECK(x == 0);
  }
}

TEST_CASE("solve returns a solution exactly when one exists") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    const auto m = to_rational(random_low_rank(rng, r, c, 1 + rng() % 3));
    RationalVector x(c);
    for (auto& v : x) {
      v = Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
      v.canonicalize();
    }
    const auto b = m * x;
    const auto y = solve(m, b);
    REQUIRE(y);
    CHECK(m * *y == b);
  }
  const RationalMatrix m{{1, 1}, {1, 1}};
  CHECK_FALSE(solve(m, RationalVector{1, 2}));
}

TEST_CASE("prime field and GF(2) ranks agree with rational rank mod p") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 70;
    const auto m = random_integer_matrix(rng, r, c, 0, 1);
    const auto f2 = PrimeFieldMatrix::reduce(m, 2);
    CHECK(rank(Gf2Matrix::from(f2)) == rank(f2));
    // over Z/p with p larger than any minor, ranks match the rational rank
    const auto big = PrimeFieldMatrix::reduce(m, 1000000007u);
    CHECK(rank(big) == rank(to_rational(m)));
  }
}

TEST_CASE("GF(2) kernel vectors are annihilated") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + rng() % 10, c = 1 + rng() % 130;
    Gf2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1);
    const auto ker = kernel_basis(m);
    CHECK(ker.size() == c - rank(m));
    for (const auto& v : ker)
      for (std::size_t i = 0; i < r; ++i) {
        unsigned s = 0;
        for (std::size_t j = 0; j < c; ++j) s ^= m.get(i, j) & v[j];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("Smith normal form matches determinantal divisors and its transforms") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    const auto m = trial % 3 ? random_integer_matrix(rng, r, c, -6, 6) : random_low_rank(rng, r, c, 1 + rng() % 2);
    const auto s = smith_normal_form(m, {.left = true, .right = true});
    std::vector<std::vector<Integer>> rows(r, std::vector<Integer>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) rows[i][j] = m(i, j);
    CHECK(s.factors == oracle::determinantal_factors(rows));
    for (std::size_t i = 1; i < s.factors.size(); ++i) CHECK(s.factors[i] % s.factors[i - 1] == 0);
    const auto d = *s.left * m * *s.right;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(d(i, j) == (i == j && i < s.factors.size() ? s.factors[i] : 0));
  }
}

TEST_CASE("Smith form of a coboundary-like matrix") {
  const IntegerMatrix m{{2, 0}, {0, 3}};
  CHECK(smith_normal_form(m).factors == std::vector<Integer>{1, 6});
  const IntegerMatrix z{{0, 0}, {0, 0}};
  CHECK(smith_normal_form(z).factors.empty());
}

TEST_CASE("invariant factors of direct sums of cyclic groups") {
  const std::vector<Integer> a{2, 3}, b{2, 2}, c{4, 6}, d{1, 1, 5};
  CHECK(invariant_factors(a) == std::vector<Integer>{6});
  CHECK(invariant_factors(b) == std::vector<Integer>{2, 2});
  CHECK(invariant_factors(c) == std::vector<Integer>{2, 12});
  CHECK(invariant_factors(d) == std::vector<Integer>{5});
}

TEST_CASE("rational text round trip") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("010") == Rational(10));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("1e-05") == Rational(1, 100000));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK(to_string(parse_rational("-3/9")) == "-1/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), modcoh::ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), modcoh::ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), modcoh::ParseError);
  CHECK_THROWS_AS(parse_rational(""), modcoh::ParseError);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(RationalMatrix(2, 2, {1, 2, 3}), modcoh::InvalidArgument);
  CHECK_THROWS_AS((RationalMatrix{{1, 2}, {3}}), modcoh::InvalidArgument);
  CHECK(is_prime(2));
  CHECK(is_prime(1000000007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
