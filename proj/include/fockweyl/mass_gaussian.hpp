// Mass partitions, the B matrix left after integrating out the last particle's
// coordinate, and the n-dimensional Gaussian integral
//   int d^n x exp(-x^T B x + x^T v) = sqrt(pi^n / det B) exp(v^T B^{-1} v / 4).

#pragma once

#include <vector>

#include "fockweyl/fock.hpp"

namespace fockweyl::mass {

/// Relative masses mu_i = m_i / M with M = sum m_i and lambda = sum mu_i^2.
class MassPartition {
 public:
  explicit MassPartition(std::vector<double> masses);

  int size() const { return static_cast<int>(masses_.size()); }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<double>& mu() const { return mu_; }
  double mu(int i) const { return mu_[static_cast<std::size_t>(i)]; }
  double total_mass() const { return total_mass_; }
  double lambda() const { return lambda_; }

 private:
  std::vector<double> masses_;
  std::vector<double> mu_;
  double total_mass_ = 0.0;
  double lambda_ = 0.0;
};

MassPartition make_partition(const std::vector<double>& masses);

/// (n-1)x(n-1) matrix B_ij = mu_i mu_j / mu_n^2 + delta_ij; the last particle
/// is the eliminated one.
RealMatrix b_matrix(const MassPartition& p);

/// det B = lambda / mu_n^2
double b_det_closed(const MassPartition& p);

/// B^{-1}_ij = delta_ij - mu_i mu_j / (mu_n^2 det B)
RealMatrix b_inverse_closed(const MassPartition& p);

/// LU (partial pivoting) determinant and inverse, the numeric cross-check for
/// the closed forms.
double lu_determinant(const RealMatrix& m);
RealMatrix lu_inverse(const RealMatrix& m);

/// Symmetric positive-definite B and linear term v.
class GaussianIntegralSpec {
 public:
  /// Throws std::invalid_argument unless B is exactly symmetric and every
  /// leading principal minor exceeds 1e-12.
  GaussianIntegralSpec(RealMatrix b, RealVector v);

  int dims() const { return static_cast<int>(v_.size()); }
  const RealMatrix& b() const { return b_; }
  const RealVector& v() const { return v_; }

 private:
  RealMatrix b_;
  RealVector v_;
};

double gaussian_integral_closed(const GaussianIntegralSpec& spec);

struct QuadratureEstimate {
  double value = 0.0;
  /// Largest integrand value on the outermost cell shell divided by the
  /// largest integrand value anywhere.
  double boundary_ratio = 0.0;
  /// boundary_ratio below kBoundaryTolerance.
  bool converged = false;
};

inline constexpr double kBoundaryTolerance = 1e-12;

/// Midpoint rule over [-R, R]^n with `points` nodes per axis; n <= 3.
QuadratureEstimate gaussian_integral_quadrature(const GaussianIntegralSpec& spec, double radius,
                                                int points);

}  // namespace fockweyl::mass

namespace fockweyl {
using mass::MassPartition;
}
