#include "fockweyl/mass_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>

#include "fockweyl/quadrature.hpp"

namespace fockweyl::mass {

MassPartition::MassPartition(std::vector<double> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw std::invalid_argument("mass partition needs at least one mass");
  for (double m : masses_) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("masses must be positive");
    total_mass_ += m;
  }
  mu_.reserve(masses_.size());
  for (double m : masses_) {
    mu_.push_back(m / total_mass_);
    lambda_ += mu_.back() * mu_.back();
  }
}

MassPartition make_partition(const std::vector<double>& masses) { return MassPartition(masses); }

namespace {

void require_two(const MassPartition& p) {
  if (p.size() < 2) throw std::invalid_argument("B matrix needs at least two masses");
}

}  // namespace

RealMatrix b_matrix(const MassPartition& p) {
  require_two(p);
  const int k = p.size() - 1;
  const double mn2 = p.mu(k) * p.mu(k);
  RealMatrix b(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) b(i, j) = p.mu(i) * p.mu(j) / mn2 + (i == j ? 1.0 : 0.0);
  return b;
}

double b_det_closed(const MassPartition& p) {
  require_two(p);
  const double mn = p.mu(p.size() - 1);
  return p.lambda() / (mn * mn);
}

RealMatrix b_inverse_closed(const MassPartition& p) {
  require_two(p);
  const int k = p.size() - 1;
  const double mn2 = p.mu(k) * p.mu(k);
  const double det = b_det_closed(p);
  RealMatrix inv(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      inv(i, j) = ((i == j ? det : 0.0) - p.mu(i) * p.mu(j) / mn2) / det;
  return inv;
}

double lu_determinant(const RealMatrix& m) { return m.partialPivLu().determinant(); }

RealMatrix lu_inverse(const RealMatrix& m) { return m.partialPivLu().inverse(); }

GaussianIntegralSpec::GaussianIntegralSpec(RealMatrix b, RealVector v)
    : b_(std::move(b)), v_(std::move(v)) {
  const auto n = v_.size();
  if (n < 1) throw std::invalid_argument("Gaussian integral needs at least one dimension");
  if (b_.rows() != n || b_.cols() != n) throw std::invalid_argument("B must be n x n");
  if (!b_.allFinite() || !v_.allFinite()) throw std::invalid_argument("non-finite B or v");
  if (b_ != b_.transpose()) throw std::invalid_argument("B must be exactly symmetric");
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (!(b_.topLeftCorner(k, k).partialPivLu().determinant() > 1e-12)) {
      throw std::invalid_argument("B is not positive definite");
    }
  }
}

double gaussian_integral_closed(const GaussianIntegralSpec& spec) {
  const Eigen::LLT<RealMatrix> llt(spec.b());
  const double det = llt.matrixL().determinant() * llt.matrixL().determinant();
  const RealVector binv_v = llt.solve(spec.v());
  return std::sqrt(std::pow(std::numbers::pi, spec.dims()) / det) *
         std::exp(0.25 * spec.v().dot(binv_v));
}

QuadratureEstimate gaussian_integral_quadrature(const GaussianIntegralSpec& spec, double radius,
                                                int points) {
  if (spec.dims() > 3) throw capacity_error("quadrature oracle is limited to n <= 3");
  if (!(radius > 0.0) || points < 1) throw std::invalid_argument("invalid quadrature grid");
  const auto grid = quadrature::MidpointGrid::cube(spec.dims(), radius, points);
  const auto& b = spec.b();
  const auto& v = spec.v();
  const auto integrand = [&](std::span<const double> x) {
    double e = 0.0;
    for (int i = 0; i < spec.dims(); ++i) {
      e += x[static_cast<std::size_t>(i)] * v[i];
      for (int j = 0; j < spec.dims(); ++j) {
        e -= x[static_cast<std::size_t>(i)] * b(i, j) * x[static_cast<std::size_t>(j)];
      }
    }
    return std::exp(e);
  };

  QuadratureEstimate est;
  est.value = quadrature::integrate(grid, integrand, 0.0);

  double peak = 0.0;
  double edge = 0.0;
  std::vector<double> x(static_cast<std::size_t>(spec.dims()));
  for (std::int64_t k = 0; k < grid.size(); ++k) {
    grid.point(k, x);
    const double f = integrand(x);
    peak = std::max(peak, f);
    if (grid.on_boundary(k)) edge = std::max(edge, f);
  }
  est.boundary_ratio = peak > 0.0 ? edge / peak : 1.0;
  est.converged = est.boundary_ratio < kBoundaryTolerance;
  return est;
}

}  // namespace fockweyl::mass
