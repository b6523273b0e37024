#include <cmath>
#include <complex>
#include <random>

#include <Eigen/QR>

#include "doctest.h"
#include "modcoh/modular.hpp"

using namespace modcoh::modular;
using cd = std::complex<double>;

namespace {

constexpr double kTol = 1e-10;
const double kPi = std::acos(-1.0);
const std::vector<double> kTimes = {0.1, 0.5, 1.0, kPi, -2.3};

Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1;
  return m;
}

Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

// Delta for sqrt(p) e1e1 + sqrt(1-p) e2e2 under M2 (x) 1: rho (x) rho^{-1}.
Matrix delta_oracle(double p) {
  Matrix rho = Matrix::Zero(2, 2), inv = Matrix::Zero(2, 2);
  rho(0, 0) = p;
  rho(1, 1) = 1 - p;
  inv(0, 0) = 1 / p;
  inv(1, 1) = 1 / (1 - p);
  return kron(rho, inv);
}

Matrix swap_factors() {
  Matrix f = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f(2 * j + i, 2 * i + j) = 1;
  return f;
}

ExactComplexMatrix exact_from(const std::vector<std::vector<long>>& re) {
  ExactComplexMatrix m = ExactComplexMatrix::zero(re.size());
  for (std::size_t i = 0; i < re.size(); ++i)
    for (std::size_t j = 0; j < re.size(); ++j) m.re[i * re.size() + j] = re[i][j];
  return m;
}

}  // namespace

TEST_CASE("closure of a single 2x2 generator") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = 2;
  // a self-adjoint generator only reaches its commutative functional calculus
  CHECK(algebra_closure({h}).dim() == 2);
  CHECK(exact_closure_dimension({exact_from({{1, 0}, {0, 2}})}) == 2);
  CHECK(algebra_closure({unit(2, 0, 1)}).dim() == 4);
  CHECK(exact_closure_dimension({exact_from({{0, 1}, {0, 0}})}) == 4);
  CHECK(algebra_closure({Matrix::Identity(2, 2)}).dim() == 1);
  const auto m = algebra_closure({unit(3, 0, 1)});
  CHECK(m.dim() == 5);  // M2 (+) C
  CHECK(exact_closure_dimension({exact_from({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})}) == 5);
  CHECK(m.star_closed());
  CHECK(m.unital());
  CHECK(m.product_closed());
}

TEST_CASE("random generators: numeric and exact closures agree") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<ExactComplexMatrix> ex;
    std::vector<Matrix> num;
    for (int g = 0; g < 1 + static_cast<int>(rng() % 2); ++g) {
      auto e = ExactComplexMatrix::zero(n);
      // sparse 0/1 patterns give a spread of closure dimensions
      for (std::size_t i = 0; i < n * n; ++i)
        if (rng() % 4 == 0) e.re[i] = 1;
      ex.push_back(e);
      num.push_back(e.to_double());
    }
    CHECK(algebra_closure(num).dim() == exact_closure_dimension(ex));
  }
}

TEST_CASE("commutant of M2 (x) 1 is 1 (x) M2") {
  const auto m = m2_tensor_one();
  CHECK(m.dim() == 4);
  const auto c = commutant(m);
  CHECK(c.dim() == 4);
  CHECK(subspace_distance(c, one_tensor_m2()) < kTol);
  CHECK(commutant(c).dim() == 4);
  CHECK(subspace_distance(commutant(c), m) < kTol);
}

TEST_CASE("cyclic and separating vectors") {
  const auto m = m2_tensor_one();
  for (double p : {0.5, 0.2, 0.9}) {
    const auto omega = entangled_state(p);
    CHECK(is_cyclic(m, omega));
    CHECK(is_separating(m, omega));
  }
  const auto product = entangled_state(1.0);
  CHECK_FALSE(is_cyclic(m, product));
  const auto sep = separating_check(m, product);
  CHECK_FALSE(sep.separating);
  REQUIRE(sep.annihilator);
  CHECK(sep.annihilator->norm() > 0.5);
  CHECK((*sep.annihilator * product).norm() < kTol);
  CHECK(m.contains(*sep.annihilator));
}

TEST_CASE("the product state is refused with an annihilator") {
  const auto omega = entangled_state(1.0);
  try {
    tomita(m2_tensor_one(), omega);
    FAIL("expected NotCyclicSeparating");
  } catch (const NotCyclicSeparating& e) {
    CHECK(e.property() == "separating");
    REQUIRE(e.annihilator());
    CHECK((*e.annihilator() * omega).norm() < kTol);
  }
  Vector bad = entangled_state(0.5) * 2.0;
  CHECK_THROWS_AS(tomita(m2_tensor_one(), bad), modcoh::InvalidArgument);
  CHECK_THROWS_AS(entangled_state(1.5), modcoh::InvalidArgument);
}

TEST_CASE("modular operator of the entangled state matches rho (x) rho^{-1}") {
  for (double p : {2.0 / 3.0, 0.1, 0.45, 0.999}) {
    CAPTURE(p);
    const auto m = m2_tensor_one();
    const auto t = tomita(m, entangled_state(p));
    CHECK((t.delta - delta_oracle(p)).norm() < 1e-8 * delta_oracle(p).norm());
    CHECK((t.j.unitary - swap_factors()).norm() < 1e-8);
  }
  const auto t = tomita(m2_tensor_one(), entangled_state(2.0 / 3.0));
  const auto s = t.spectrum();
  REQUIRE(s.size() == 4);
  const std::vector<double> expect = {2.0, 1.0, 1.0, 0.5};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s[i] - expect[i]) < kTol);
}

TEST_CASE("the tracial state has trivial modular operator") {
  const auto t = tomita(m2_tensor_one(), entangled_state(0.5));
  CHECK((t.delta - Matrix::Identity(4, 4)).norm() < kTol);
  CHECK((t.delta_it(1.7) - Matrix::Identity(4, 4)).norm() < kTol);
}

TEST_CASE("Tomita-Takesaki identities hold for random weights") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const auto m = m2_tensor_one();
  const auto mc = commutant(m);
  for (int trial = 0; trial < 25; ++trial) {
    const double p = u(rng);
    CAPTURE(p);
    const auto omega = entangled_state(p);
    const auto t = tomita(m, omega);
    CHECK(triple_defects(t, m).max() < kTol);
    CHECK(modular_flow_defect(t, m, kTimes) < kTol);
    CHECK(modular_flow_defect(t, mc, kTimes) < kTol);
    CHECK(kms_defect(m, omega, 50, trial) < kTol);
    CHECK(subspace_distance(reflect(t, m), mc) < kTol);
    // Delta is positive and its inverse is J Delta J
    for (double ev : t.spectrum()) CHECK(ev > 0);
    CHECK((t.delta_power(-1) - t.delta.inverse()).norm() < 1e-8 * t.delta_power(-1).norm());
    // Delta^{it} is a one-parameter unitary group
    const auto a = t.delta_it(0.3), b = t.delta_it(0.9);
    CHECK((a * b - t.delta_it(1.2)).norm() < kTol);
    CHECK((a * a.adjoint() - Matrix::Identity(4, 4)).norm() < kTol);
  }
}

TEST_CASE("the wrong operator is caught by the flow and KMS tests") {
  const double p = 2.0 / 3.0;
  const auto m = m2_tensor_one();
  const auto omega = entangled_state(p);
  const auto t = tomita(m, omega);
  CHECK(modular_flow_defect(swap_top_eigenvalues(t.delta), m, kTimes) > 1e-3);
  CHECK(kms_defect(m, omega, Matrix::Identity(4, 4), 50, 7) > 1e-3);
  CHECK(kms_defect(m, omega, t.delta, 50, 7) < kTol);
}

TEST_CASE("kms sampling is reproducible") {
  const auto m = m2_tensor_one();
  const auto omega = entangled_state(0.3);
  const Matrix wrong = Matrix::Identity(4, 4);
  CHECK(kms_defect(m, omega, wrong, 30, 5) == kms_defect(m, omega, wrong, 30, 5));
}

TEST_CASE("modular data is covariant under a unitary change of frame") {
  std::mt19937_64 rng(63);
  const auto m = m2_tensor_one();
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix u = random_unitary(4, rng);
    std::vector<Matrix> gens;
    for (const auto& b : m.basis()) gens.push_back(u * b * u.adjoint());
    const auto mu = MatrixAlgebra::from_spanning(4, gens);
    const Vector omega = entangled_state(0.3);
    const auto t = tomita(m, omega);
    const auto tu = tomita(mu, u * omega);
    CHECK((tu.delta - u * t.delta * u.adjoint()).norm() < 1e-8);
    CHECK(triple_defects(tu, mu).max() < kTol);
  }
}

TEST_CASE("exact matrix arithmetic") {
  auto a = ExactComplexMatrix::zero(2);
  a.re[1] = 1;
  a.im[2] = 3;
  const auto b = a.adjoint();
  CHECK(b.re[2] == 1);
  CHECK(b.im[1] == -3);
  const auto c = a * b;
  const Matrix cn = a.to_double() * b.to_double();
  CHECK((c.to_double() - cn).norm() < kTol);
  CHECK((ExactComplexMatrix::identity(3).to_double() - Matrix::Identity(3, 3)).norm() == 0);
}

TEST_CASE("commutants of the extreme algebras") {
  std::vector<Matrix> units;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) units.push_back(unit(3, i, j));
  const auto full = MatrixAlgebra::from_spanning(3, units);
  const auto scalars = algebra_closure({Matrix::Identity(3, 3)});
  CHECK(full.dim() == 9);
  CHECK(commutant(full).dim() == 1);
  CHECK(commutant(scalars).dim() == 9);
}

TEST_CASE("the full matrix algebra is cyclic but not separating for any vector") {
  std::mt19937_64 rng(64);
  const auto full = algebra_closure({unit(2, 0, 1)});
  for (int trial = 0; trial < 5; ++trial) {
    Vector v = random_unitary(2, rng).col(0);
    CHECK(is_cyclic(full, v));
    CHECK_FALSE(is_separating(full, v));
  }
}

TEST_CASE("the commutant's modular operator is the inverse") {
  for (double p : {0.5, 2.0 / 3.0, 0.9}) {
    const auto m = m2_tensor_one();
    const auto omega = entangled_state(p);
    const auto t = tomita(m, omega);
    const auto tc = tomita(commutant(m), omega);
    CHECK((tc.delta - t.delta.inverse()).norm() < 1e-8);
    CHECK((tc.delta_it(0.7) - t.delta_it(-0.7)).norm() < 1e-8);
  }
}
