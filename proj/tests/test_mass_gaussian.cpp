#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fockweyl/mass_gaussian.hpp"

using namespace fockweyl;
using namespace fockweyl::mass;

namespace {

constexpr double kPi = std::numbers::pi;

RealMatrix rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return Eigen::HouseholderQR<RealMatrix>(a).householderQ();
}

RealMatrix symmetric(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

TEST_SUITE("mass_gaussian") {

TEST_CASE("mass partitions") {
  const MassPartition two({1, 1});
  CHECK(two.mu(0) == 0.5);
  CHECK(two.lambda() == 0.5);
  const MassPartition three({1, 1, 1});
  CHECK(std::abs(three.lambda() - 1.0 / 3.0) < 1e-15);
  const MassPartition p({1, 2, 3});
  CHECK(std::abs(p.mu(0) - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(p.mu(2) - 0.5) < 1e-15);
  CHECK(std::abs(p.lambda() - 7.0 / 18.0) < 1e-15);
  CHECK(p.total_mass() == 6.0);
  CHECK_THROWS(MassPartition({1, 0}));
  CHECK_THROWS(MassPartition({1, -2}));
  CHECK_THROWS(MassPartition(std::vector<double>{}));
}

TEST_CASE("partition invariants for random masses") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lm(std::log(0.1), std::log(10.0));
  for (int t = 0; t < 100; ++t) {
    std::vector<double> m(static_cast<std::size_t>(1 + t % 8));
    for (double& x : m) x = std::exp(lm(rng));
    const MassPartition p(m);
    double sum = 0.0;
    for (double mu : p.mu()) sum += mu;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(p.lambda() >= 1.0 / p.size() - 1e-15);
    CHECK(p.lambda() <= 1.0);
    if (p.size() > 1) CHECK(p.lambda() < 1.0);
  }
}

TEST_CASE("B matrix worked examples") {
  const auto b3 = b_matrix(MassPartition({1, 1, 1}));
  CHECK(b3.rows() == 2);
  CHECK(std::abs(b3(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(b3(0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(b_det_closed(MassPartition({1, 1, 1})) - 3.0) < 1e-14);
  const auto b2 = b_matrix(MassPartition({1, 1}));
  CHECK(b2.rows() == 1);
  CHECK(b2(0, 0) == 2.0);
  const MassPartition p({1, 2, 3});
  const auto b = b_matrix(p);
  CHECK(std::abs(b(0, 0) - 10.0 / 9.0) < 1e-14);
  CHECK(std::abs(b(0, 1) - 2.0 / 9.0) < 1e-14);
  CHECK(std::abs(b(1, 1) - 13.0 / 9.0) < 1e-14);
  CHECK(std::abs(b_det_closed(p) - 14.0 / 9.0) < 1e-14);
  CHECK(std::abs(lu_determinant(b) - 14.0 / 9.0) < 1e-12);
  CHECK((b * b_inverse_closed(p) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS(b_matrix(MassPartition({1})));
}

TEST_CASE("closed forms agree with LU for random masses") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lm(std::log(0.1), std::log(10.0));
  for (int t = 0; t < 50; ++t) {
    std::vector<double> m(static_cast<std::size_t>(2 + t % 7));
    for (double& x : m) x = std::exp(lm(rng));
    const MassPartition p(m);
    const auto b = b_matrix(p);
    CHECK(std::abs(b_det_closed(p) - lu_determinant(b)) <= 1e-10 * std::abs(lu_determinant(b)));
    CHECK((b_inverse_closed(p) - lu_inverse(b)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("det B equals lambda / mu_n^2 exactly for small integer masses") {
  // With integer masses m_i, det B = sum m_i^2 / m_n^2 as a ratio of integers.
  for (auto masses : {std::vector<long long>{1, 2, 3}, {2, 3, 5, 7}, {1, 1, 1, 1, 4}}) {
    long long num = 0;
    for (long long m : masses) num += m * m;
    const long long den = masses.back() * masses.back();
    std::vector<double> md(masses.begin(), masses.end());
    const double det = b_det_closed(MassPartition(md));
    CHECK(std::abs(det - static_cast<double>(num) / static_cast<double>(den)) < 1e-13);
  }
}

TEST_CASE("Gaussian integral spec validation") {
  RealMatrix asym(2, 2);
  asym << 2, 1, 0.5, 2;
  CHECK_THROWS(GaussianIntegralSpec(asym, RealVector::Zero(2)));
  RealMatrix indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS(GaussianIntegralSpec(indef, RealVector::Zero(2)));
  CHECK_THROWS(GaussianIntegralSpec(RealMatrix::Identity(2, 2), RealVector::Zero(3)));
}

TEST_CASE("Gaussian integral worked examples") {
  RealMatrix one(1, 1);
  one << 1.0;
  CHECK(std::abs(gaussian_integral_closed({one, RealVector::Zero(1)}) - std::sqrt(kPi)) < 1e-15);
  CHECK(std::abs(gaussian_integral_closed({RealMatrix::Identity(2, 2), RealVector::Unit(2, 0) * 2.0}) -
                 kPi * std::exp(1.0)) < 1e-13);
  RealMatrix b(2, 2);
  b << 2, 1, 1, 2;
  const double expected = std::sqrt(kPi * kPi / 3.0) * std::exp(1.0 / 6.0);
  CHECK(std::abs(gaussian_integral_closed({b, RealVector::Unit(2, 0)}) - expected) < 1e-13);
  CHECK(std::abs(expected - 2.1427508) < 1e-6);

  const auto q = gaussian_integral_quadrature({one, RealVector::Zero(1)}, 8.0, 4001);
  CHECK(std::abs(q.value - std::sqrt(kPi)) <= 1e-8);
  CHECK(q.converged);
  const auto q2 = gaussian_integral_quadrature({b, RealVector::Unit(2, 0)}, 8.0, 801);
  CHECK(std::abs(q2.value - expected) <= 1e-6 * expected);
}

TEST_CASE("truncated domain is flagged") {
  RealMatrix one(1, 1);
  one << 1.0;
  const auto q = gaussian_integral_quadrature({one, RealVector::Zero(1)}, 1.0, 401);
  CHECK(q.value < std::sqrt(kPi) - 0.1);
  CHECK_FALSE(q.converged);
  CHECK(q.boundary_ratio > 0.3);
  CHECK_THROWS_AS(gaussian_integral_quadrature({RealMatrix::Identity(4, 4), RealVector::Zero(4)}, 8.0, 11),
                  capacity_error);
}

TEST_CASE("quadrature agrees with the closed form for random PD specs") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> eig(0.5, 3.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    RealMatrix d = RealMatrix::Zero(2, 2);
    d(0, 0) = eig(rng);
    d(1, 1) = eig(rng);
    const RealMatrix r = rotation(2, rng);
    const RealMatrix b = symmetric(r * d * r.transpose());
    RealVector v(2);
    v << u(rng), u(rng);
    v *= std::sqrt(2.0);  // norm <= 2
    const GaussianIntegralSpec spec(b, v);
    const double closed = gaussian_integral_closed(spec);
    CHECK(std::abs(gaussian_integral_quadrature(spec, 8.0, 801).value - closed) <= 1e-6 * closed);
  }
}

TEST_CASE("closed form is invariant under simultaneous rotation") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> eig(0.5, 3.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3}) {
    for (int t = 0; t < 10; ++t) {
      RealMatrix d = RealMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) d(i, i) = eig(rng);
      const RealMatrix r0 = rotation(n, rng);
      const RealMatrix b = symmetric(r0 * d * r0.transpose());
      RealVector v(n);
      for (auto& x : v) x = u(rng);
      const RealMatrix r = rotation(n, rng);
      const double a = gaussian_integral_closed({b, v});
      const double c = gaussian_integral_closed({symmetric(r * b * r.transpose()), r * v});
      CHECK(std::abs(a - c) <= 1e-12 * a);
    }
  }
}

TEST_CASE("three-dimensional quadrature") {
  RealMatrix b(3, 3);
  b << 2, 0.3, 0.1, 0.3, 1.5, -0.2, 0.1, -0.2, 1.0;
  RealVector v(3);
  v << 0.5, -0.2, 0.3;
  const GaussianIntegralSpec spec(b, v);
  const double closed = gaussian_integral_closed(spec);
  CHECK(std::abs(gaussian_integral_quadrature(spec, 7.0, 81).value - closed) <= 1e-8 * closed);
}

}
