#include <doctest.h>

#include <cmath>
#include <random>

#include "fockweyl/fock.hpp"
#include "oracles.hpp"

using namespace fockweyl;

TEST_SUITE("fock") {

TEST_CASE("basis dimension and indexing") {
  CHECK(basis_dimension(1, 3) == 4);
  CHECK(basis_dimension(2, 2) == 9);
  CHECK(basis_dimension(3, 4) == 125);
  CHECK_THROWS_AS(basis_dimension(40, 1000), capacity_error);
  CHECK_THROWS_AS(BasisSpec(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(BasisSpec(2, 0), std::invalid_argument);

  const BasisSpec b(3, 4);
  for (std::size_t i = 0; i < b.dimension(); ++i) CHECK(b.index_of(b.occupations(i)) == i);
  CHECK(b.index_of({1, 0, 0}) == 25);  // mode 0 slowest
  CHECK(b.index_of({0, 0, 1}) == 1);
  CHECK_THROWS(b.index_of({5, 0, 0}));
  CHECK_THROWS(b.index_of({0, 0}));
}

TEST_CASE("ladder matrix entries") {
  const BasisSpec b(1, 2);
  const auto up = ladder_matrix(b, 0, Ladder::raise);
  CHECK(std::abs(up(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(up(2, 1) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(up(2, 2)) == 0.0);  // truncated

  const auto down = ladder_matrix(b, 0, Ladder::lower);
  CHECK(down.apply(StateVector::vacuum(b)).norm() == 0.0);

  const BasisSpec b2(2, 2);
  const auto up0 = ladder_matrix(b2, 0, Ladder::raise);
  CHECK(std::abs(up0(b2.index_of({1, 0}), b2.index_of({0, 0})) - 1.0) < 1e-15);
  CHECK(std::abs(up0(b2.index_of({0, 1}), b2.index_of({0, 0}))) == 0.0);
  CHECK_THROWS(ladder_matrix(b2, 2, Ladder::raise));
}

TEST_CASE("canonical commutators on the interior") {
  const BasisSpec b(2, 5);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto c = commutator(ladder_matrix(b, i, Ladder::lower), ladder_matrix(b, j, Ladder::raise));
      const auto expected = i == j ? OperatorMatrix::identity(b) : OperatorMatrix::zero(b);
      CHECK(interior_max_abs_difference(c, expected, 1) < 1e-14);
      const auto qp = commutator(quadrature_matrix(b, i, Quadrature::Q), quadrature_matrix(b, j, Quadrature::P));
      const auto iexp = (i == j ? cplx{0.0, 1.0} : cplx{0.0, 0.0}) * OperatorMatrix::identity(b);
      CHECK(interior_max_abs_difference(qp, iexp, 1) < 1e-14);
    }
  }
  // The corner at occupation = cutoff is a truncation artifact.
  const BasisSpec one(1, 3);
  const auto qp = commutator(quadrature_matrix(one, 0, Quadrature::Q), quadrature_matrix(one, 0, Quadrature::P));
  CHECK(std::abs(qp(3, 3) - cplx{0.0, 1.0}) > 1.0);
}

TEST_CASE("quadratures are Hermitian and modes commute") {
  const BasisSpec b(2, 6);
  for (int i = 0; i < 2; ++i) {
    for (auto k : {Quadrature::Q, Quadrature::P}) {
      const auto m = quadrature_matrix(b, i, k);
      CHECK(max_abs_difference(m, m.adjoint()) <= 1e-14);
    }
  }
  const BasisSpec one(1, 4);
  CHECK(std::abs(quadrature_matrix(one, 0, Quadrature::Q)(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(quadrature_matrix(one, 0, Quadrature::Q)(0, 0)) == 0.0);

  const auto c = commutator(ladder_matrix(b, 0, Ladder::raise), ladder_matrix(b, 1, Ladder::lower));
  CHECK(max_abs_difference(c, OperatorMatrix::zero(b)) == 0.0);
}

TEST_CASE("ladder form matches its dense matrix") {
  const BasisSpec b(3, 4);
  RealVector q(3), p(3);
  q << 0.3, -1.2, 0.7;
  p << 1.1, 0.0, -0.4;
  const auto form = LadderForm::from_quadratures(q, p);
  auto dense = OperatorMatrix::zero(b);
  for (int i = 0; i < 3; ++i) {
    dense = dense + cplx{q[i], 0.0} * quadrature_matrix(b, i, Quadrature::Q) +
            cplx{p[i], 0.0} * quadrature_matrix(b, i, Quadrature::P);
  }
  CHECK(max_abs_difference(form.to_matrix(b), dense) < 1e-14);
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  ComplexVector v(static_cast<Eigen::Index>(b.dimension()));
  for (auto& x : v) x = {g(rng), g(rng)};
  const StateVector s(b, v);
  CHECK((form.apply(s).amplitudes() - dense.apply(s).amplitudes()).norm() < 1e-12);
}

TEST_CASE("exponent to vacuum: worked examples") {
  const BasisSpec b1(1, 10);
  const ExponentSpec zero(0.0, ComplexVector::Zero(1), ComplexMatrix::Zero(1, 1));
  CHECK((apply_exponent_to_vacuum(b1, zero).amplitudes() - StateVector::vacuum(b1).amplitudes()).norm() == 0.0);

  ComplexVector l(1);
  l << 0.5;
  const auto coh = apply_exponent_to_vacuum(b1, ExponentSpec(-0.125, l, ComplexMatrix::Zero(1, 1)));
  for (int n = 0; n <= 10; ++n) {
    const double expected = std::exp(-0.125) * std::pow(0.5, n) / std::sqrt(oracle::factorial(n));
    CHECK(std::abs(coh.amplitude({n}) - expected) < 1e-15);
  }

  const BasisSpec b2(2, 6);
  ComplexMatrix pair = ComplexMatrix::Zero(2, 2);
  pair(0, 1) = 1.0;
  const auto two = apply_exponent_to_vacuum(b2, ExponentSpec::from_coefficients(0.0, ComplexVector::Zero(2), pair));
  for (std::size_t i = 0; i < b2.dimension(); ++i) {
    const auto occ = b2.occupations(i);
    const double expected = occ[0] == occ[1] ? 1.0 : 0.0;
    CHECK(std::abs(two.amplitudes()[static_cast<Eigen::Index>(i)] - expected) < 1e-13);
  }
}

TEST_CASE("coefficient convention") {
  ComplexMatrix pair = ComplexMatrix::Zero(2, 2);
  pair(0, 0) = 0.25;
  pair(0, 1) = 1.0;
  const auto e = ExponentSpec::from_coefficients(0.0, ComplexVector::Zero(2), pair);
  CHECK(e.quadratic()(0, 1) == cplx{0.5, 0.0});
  CHECK(e.quadratic()(1, 0) == cplx{0.5, 0.0});
  CHECK(e.coefficient(0, 1) == cplx{1.0, 0.0});
  CHECK(e.coefficient(1, 0) == cplx{1.0, 0.0});
  CHECK(e.coefficient(0, 0) == cplx{0.25, 0.0});
  ComplexMatrix asym = ComplexMatrix::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(ExponentSpec(0.0, ComplexVector::Zero(2), asym), std::invalid_argument);
}

TEST_CASE("exponent to vacuum agrees with the term-by-term series") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + trial % 3;
    const int cutoff = 3 + trial % 6;
    const BasisSpec b(n, cutoff);
    ComplexVector l(n);
    for (auto& x : l) x = {u(rng), u(rng)};
    l /= std::max(1.0, l.norm());
    ComplexMatrix pair = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) pair(i, j) = {u(rng), u(rng)};
    const auto spec0 = ExponentSpec::from_coefficients({u(rng), u(rng)}, l, pair);
    const double sn = spec0.quadratic().norm();
    const ExponentSpec spec(spec0.constant(), spec0.linear(), spec0.quadratic() / std::max(1.0, sn));
    const auto fast = apply_exponent_to_vacuum(b, spec).amplitudes();
    const auto ref = oracle::exponent_series(b, spec);
    CHECK((fast - ref).norm() <= 1e-12 * ref.norm());
    const auto dense = reference::apply_exponent_to_vacuum(b, spec).amplitudes();
    CHECK((dense - ref).norm() <= 1e-12 * ref.norm());
  }
}

TEST_CASE("inner product and coherent states") {
  const BasisSpec b(1, 40);
  const auto vac = StateVector::vacuum(b);
  CHECK(inner_product(vac, vac) == cplx{1.0, 0.0});
  const auto z = coherent_state(b, {cplx{0.5, 0.0}});
  const auto w = coherent_state(b, {cplx{-0.2, 0.7}});
  CHECK(std::abs(inner_product(z, w) - std::conj(inner_product(w, z))) < 1e-15);
  CHECK(std::abs(inner_product(vac, z) - std::exp(-0.125)) < 1e-12);
  const cplx zz{0.5, 0.0}, ww{-0.2, 0.7};
  const cplx overlap = std::exp(std::conj(ww) * zz - 0.5 * (std::norm(zz) + std::norm(ww)));
  CHECK(std::abs(inner_product(w, z) - overlap) < 1e-12);
  CHECK(std::abs(z.amplitude({2}) - std::exp(-0.125) * 0.25 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(z.amplitude({2}) - 0.156004886) < 1e-8);
  CHECK_THROWS(inner_product(vac, StateVector::vacuum(BasisSpec(1, 3))));

  const BasisSpec b20(1, 20);
  const auto one = coherent_state(b20, {cplx{1.0, 0.0}});
  double tail = 0.0;
  for (int n = 21; n < 60; ++n) tail += std::exp(-1.0) / oracle::factorial(n);
  CHECK(std::abs(one.norm() * one.norm() - (1.0 - tail)) < 1e-14);
  CHECK(std::abs(one.norm() - 1.0) < 1e-8);
  CHECK(coherent_state(b20, {cplx{0.0, 0.0}}).amplitudes() == StateVector::vacuum(b20).amplitudes());
}

TEST_CASE("coherent resolution of the identity with d^2z/pi") {
  // sum over a fine grid of |z><z| dz/pi on the low sector approaches 1.
  const BasisSpec b(1, 30);
  const int g = 161;
  const double r = 7.0;
  const double h = 2 * r / g;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const cplx z{-r + (i + 0.5) * h, -r + (j + 0.5) * h};
      const ComplexVector v = coherent_state(b, {z}).amplitudes().head(4);
      m += v * v.adjoint();
    }
  }
  m *= h * h / std::numbers::pi;
  CHECK((m - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dense capacity guard") {
  CHECK_THROWS_AS(OperatorMatrix::identity(BasisSpec(4, 12)), capacity_error);
}

}
