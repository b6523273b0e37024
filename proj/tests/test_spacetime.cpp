#include <cmath>
#include <random>

#include "doctest.h"
#include "modcoh/spacetime.hpp"

using namespace modcoh::spacetime;

namespace {

constexpr double kTol = 1e-10;
const double kPi = std::acos(-1.0);

Eigen::Matrix4d metric() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

Eigen::Matrix4d rotation(int i, int j, double a) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
  r(i, i) = r(j, j) = std::cos(a);
  r(i, j) = -std::sin(a);
  r(j, i) = std::sin(a);
  return r;
}

Eigen::Matrix4d boost_along(int axis, double rapidity) {
  Eigen::Matrix4d b = Eigen::Matrix4d::Identity();
  b(0, 0) = b(axis, axis) = std::cosh(rapidity);
  b(0, axis) = b(axis, 0) = std::sinh(rapidity);
  return b;
}

PoincareElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  PoincareElement g;
  g.lorentz = rotation(1, 2, 3 * u(rng)) * boost_along(1 + rng() % 3, u(rng)) * rotation(2, 3, 3 * u(rng)) *
              boost_along(1 + rng() % 3, u(rng)) * rotation(1, 3, 3 * u(rng));
  g.translation = Eigen::Vector4d(u(rng), u(rng), u(rng), u(rng)) * 3;
  return g;
}

Eigen::Matrix<double, 5, 5> generator_matrix(const modcoh::lie::LieElement& x) {
  const auto basis = modcoh::lie::poincare_affine_basis(4);
  Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double c = x.coeffs()[k].get_d();
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) += c * basis[k](i, j).get_d();
  }
  return m;
}

RationalMatrix rational_boost_x1() {
  // cosh = 5/3, sinh = 4/3
  RationalMatrix b = RationalMatrix::identity(4);
  b(0, 0) = b(1, 1) = Rational(5, 3);
  b(0, 1) = b(1, 0) = Rational(4, 3);
  return b;
}

}  // namespace

TEST_CASE("boost matrices form a one-parameter group preserving the metric") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  CHECK((boost_matrix(0) - Eigen::Matrix4d::Identity()).norm() == 0);
  for (int trial = 0; trial < 50; ++trial) {
    const double s = u(rng), t = u(rng);
    const auto b = boost_matrix(t);
    CHECK((boost_matrix(s) * b - boost_matrix(s + t)).norm() < kTol * boost_matrix(s + t).norm());
    CHECK((b.transpose() * metric() * b - metric()).norm() < kTol * b.squaredNorm());
    CHECK_NOTHROW(validate_lorentz(b));
  }
  const auto b = boost_matrix(0.25);
  CHECK(b(0, 0) == doctest::Approx(std::cosh(kPi / 2)));
  CHECK(b(0, 1) == doctest::Approx(-std::sinh(kPi / 2)));
  CHECK(b(2, 2) == 1);
}

TEST_CASE("validate_lorentz rejects improper, non-orthochronous and non-metric matrices") {
  CHECK_THROWS_AS(validate_lorentz(Eigen::Matrix4d(Eigen::Vector4d(-1, -1, 1, 1).asDiagonal())),
                  modcoh::InvalidArgument);
  CHECK_THROWS_AS(validate_lorentz(Eigen::Matrix4d(Eigen::Vector4d(1, -1, 1, 1).asDiagonal())),
                  modcoh::InvalidArgument);
  CHECK_THROWS_AS(validate_lorentz(Eigen::Matrix4d(2 * Eigen::Matrix4d::Identity())), modcoh::InvalidArgument);
  CHECK_NOTHROW(validate_lorentz(rational_boost_x1()));
  auto bad = rational_boost_x1();
  bad(0, 1) = 1;
  CHECK_THROWS_AS(validate_lorentz(bad), modcoh::InvalidArgument);
}

TEST_CASE("wedge boosts keep wedge points inside") {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const Wedge w(random_element(rng));
    for (const auto& x : sample_wedge_points(w, 50, trial)) CHECK(w.contains(x));
    CHECK(boost_escapes(w, u(rng), 100, trial) == 0);
  }
  const auto w1 = Wedge::standard();
  CHECK(w1.contains({0, 1, 5, -5}));
  CHECK(w1.contains({0.9, 1, 0, 0}));
  CHECK_FALSE(w1.contains({1.1, 1, 0, 0}));
  CHECK_FALSE(w1.contains({0, -1, 0, 0}));
}

TEST_CASE("the standard wedge's boost generator is J01") {
  const auto g = modcoh::lie::poincare(4);
  const auto gen = wedge_boost_generator(Wedge::standard(), g);
  CHECK(gen.exact);
  CHECK(gen.element == modcoh::lie::LieElement::named(g, "J01"));
}

TEST_CASE("boost generators match a numeric derivative") {
  const auto g = modcoh::lie::poincare(4);
  std::mt19937_64 rng(73);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const Wedge w(random_element(rng));
    const auto gen = wedge_boost_generator(w, g);
    const Eigen::Matrix<double, 5, 5> deriv = (wedge_boost(w, h).affine() - wedge_boost(w, -h).affine()) / (2 * h);
    const Eigen::Matrix<double, 5, 5> expect = 2 * kPi * generator_matrix(gen.element);
    CHECK((deriv - expect).norm() < 1e-5 * (1 + expect.norm()));
  }
}

TEST_CASE("wedge identity ignores the boosts and transverse motions of the wedge") {
  std::mt19937_64 rng(74);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_element(rng);
    PoincareElement stab;
    stab.lorentz = boost_matrix(u(rng)) * rotation(2, 3, 3 * u(rng));
    stab.translation = Eigen::Vector4d(0, 0, u(rng), u(rng));
    CHECK(Wedge(g).same_as(Wedge(g * stab)));
    PoincareElement shift;
    shift.translation = Eigen::Vector4d(0, 0.5, 0, 0);
    CHECK_FALSE(Wedge(g).same_as(Wedge(g * shift)));
    CHECK_FALSE(Wedge(g).same_as(wedge_complement(Wedge(g))));
  }
}

TEST_CASE("wedge complements") {
  std::mt19937_64 rng(75);
  std::vector<double> ts;
  for (int k = -8; k <= 8; ++k) ts.push_back(k / 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Wedge w(random_element(rng));
    const auto c = check_complement(w, ts);
    CHECK(c.boost_defect < 1e-9);
    CHECK(c.product_defect < 1e-9);
    CHECK(c.involution);
    CHECK_FALSE(c.exact_identity.has_value());
    // the complement is disjoint from the wedge
    const auto wc = wedge_complement(w);
    for (const auto& x : sample_wedge_points(wc, 50, trial)) CHECK_FALSE(w.contains(x));
  }
  const auto wc = wedge_complement(Wedge::standard());
  CHECK(wc.contains({0, -1, 0, 0}));
  CHECK_FALSE(wc.contains({0, 1, 0, 0}));
}

TEST_CASE("exact wedges carry exact generators and an exact complement identity") {
  ExactPoincare g;
  g.lorentz = rational_boost_x1();
  g.translation = RationalVector{Rational(1, 2), 0, 3, Rational(-1, 3)};
  const Wedge w(g);
  REQUIRE(w.exact());
  const auto gen = wedge_boost_generator(w, modcoh::lie::poincare(4));
  CHECK(gen.exact);
  CHECK(gen.warnings.empty());
  const auto c = check_complement(w, {0.1, 0.5});
  REQUIRE(c.exact_identity.has_value());
  CHECK(*c.exact_identity);
  const auto inv = g * g.inverse();
  CHECK(inv.lorentz == RationalMatrix::identity(4));
  for (const auto& x : inv.translation) CHECK(x == 0);
  const auto t = translated(Wedge::standard(), RationalVector{1, 0, 0, 0});
  CHECK(t.exact());
  CHECK(t.contains({1, 0.5, 0, 0}));
}

TEST_CASE("symbolic boost identities") {
  CHECK(boost_preserves_metric_symbolic());
  CHECK(complement_identity_symbolic());
  const auto c = HyperbolicPoly::c(), s = HyperbolicPoly::s();
  CHECK(c * c - s * s == HyperbolicPoly(1));
  CHECK((s * s * s - s * (c * c - HyperbolicPoly(1))).is_zero());
  CHECK_FALSE((c - s).is_zero());
  const auto b = symbolic_boost(), bm = symbolic_boost(true);
  const auto prod = symbolic_product(b, bm);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(prod[i][j] == HyperbolicPoly(i == j ? 1 : 0));
}

TEST_CASE("boost generation") {
  const auto six = boost_generation(six_wedges());
  CHECK(six.generators.size() == 6);
  CHECK(six.closure_dim == 10);
  CHECK(six.contains_translations);
  CHECK(six.success);
  for (const auto& g : six.generators) CHECK(g.exact);
  const auto three = boost_generation(coordinate_wedges());
  CHECK(three.generators.size() == 3);
  CHECK(three.closure_dim == 6);
  CHECK_FALSE(three.contains_translations);
  CHECK_FALSE(three.success);
}
