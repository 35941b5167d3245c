// Numerical verdicts: windowed eigen-residuals, completeness of continuous
// families by quadrature, Gaussian-smeared overlap probes of delta
// normalization, and convergence studies.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fockweyl/entangled.hpp"
#include "fockweyl/fock.hpp"

namespace fockweyl::validation {

struct ResidualReport {
  std::string op_name;
  cplx eigenvalue;
  double residual = 0.0;  // ||(op - eigenvalue) psi||_window / ||psi||_window
  int sector_bound = 0;
  int cutoff = 0;
  double tail_mass = 0.0;  // share of ||psi||^2 outside the window
};

/// The window is every basis state with total occupation <= sector_bound.
/// Throws std::invalid_argument if the state vanishes on the window.
ResidualReport eigen_residual(const OperatorMatrix& op, const StateVector& state, cplx eigenvalue,
                              int sector_bound, std::string op_name = "op");
ResidualReport eigen_residual(const LadderForm& op, const StateVector& state, cplx eigenvalue,
                              int sector_bound, std::string op_name = "op");

/// A continuous family x -> |x> of unnormalized states. Quadrature runs in the
/// scaled variable u with x_a = scales[a] * u_a.
struct ParameterFamily {
  std::string label;
  BasisSpec basis;
  std::vector<double> scales;
  /// Density of the resolution measure in x: the identity is measure * int dx |x><x|.
  double measure = 1.0;
  /// kappa in <x|x'> = kappa delta(x - x'); equals 1/measure.
  double delta_constant = 1.0;
  std::function<ExponentSpec(std::span<const double>)> exponent;

  int dims() const { return static_cast<int>(scales.size()); }
  StateVector state(std::span<const double> x) const;
};

/// (eta_1, eta_2), measure d^2 eta / pi.
ParameterFamily eta_family(int cutoff);
/// (q_cm, rho), measure dq_cm drho; scales sqrt(lambda) and sqrt(lambda)/(mu_0 mu_1).
ParameterFamily bipartite_family(const MassPartition& partition, int cutoff);
/// (q, rho_1, rho_2) through the general n = 3 constructor; measure dq drho_1 drho_2.
ParameterFamily tripartite_family(const MassPartition& partition, int cutoff);

/// Points per axis over [-radius, radius]^d in scaled units; nodes outside
/// the ball |u| <= radius carry zero weight.
struct BallGrid {
  double radius = 6.0;
  int points = 121;
};

struct CompletenessReport {
  std::string family;
  int cutoff = 0;
  int sector_bound = 0;
  double deviation = 0.0;  // max |M - I| over the window
  BallGrid grid;
};

CompletenessReport completeness_deviation(const ParameterFamily& family, BallGrid grid,
                                          int sector_bound);

/// Sum of |s><s| over a finite family, compared with the identity on the window.
CompletenessReport completeness_deviation(const std::vector<StateVector>& states,
                                          int sector_bound, std::string label = "discrete");

/// Window of the basis: indices with total occupation <= bound, in basis order.
std::vector<std::size_t> sector_indices(const BasisSpec& basis, int bound);

/// Smearing grid: `points` per axis spanning center +- half_width * width * scale.
struct SmearGrid {
  double half_width = 7.0;
  int points = 81;
};

/// <Phi_1|Phi_2> with Phi_c = int dx g(x - c)|x>, g(y) = exp(-sum y_a^2 / (2 w^2 s_a^2)).
cplx smeared_overlap_probe(const ParameterFamily& family, std::span<const double> center1,
                           std::span<const double> center2, double width, SmearGrid grid = {});

/// kappa prod_a (sqrt(pi) w s_a) exp(-(c1_a - c2_a)^2 / (4 w^2 s_a^2)): the same
/// overlap if <x|x'> = kappa delta(x - x') exactly.
double delta_model_overlap(const ParameterFamily& family, std::span<const double> center1,
                           std::span<const double> center2, double width);

/// Values at or below this are treated as converged to roundoff.
inline constexpr double kRoundoffFloor = 1e-12;
inline constexpr double kMonotoneNoise = 0.1;

/// Each step either stays within (1 + noise) of its predecessor or is at the
/// roundoff floor.
bool decreasing_within_noise(const std::vector<double>& metrics, double noise = kMonotoneNoise,
                             double floor = kRoundoffFloor);

struct ConvergenceTable {
  std::string check;
  std::vector<int> schedule;
  std::vector<double> metrics;
  bool decreasing = false;
};

/// Runs `metric` at every schedule point in order. Needs at least two points.
ConvergenceTable convergence_study(std::string check, const std::vector<int>& schedule,
                                   const std::function<double(int)>& metric);

/// max |<r|[A, B]|c> - expected delta_rc| over interior rows and columns
/// (every occupation <= cutoff - margin), computed column by column without
/// dense matrices.
double interior_commutator_deviation(const LadderForm& a, const LadderForm& b,
                                     const BasisSpec& basis, cplx expected, int margin = 2);

/// Sum of all (m+n)!/(m!n!) orderings of m factors Q and n factors P, divided
/// by their number. Built by the recurrence C_k <- C_{k-1} Q + C_k P.
OperatorMatrix full_symmetrization(const BasisSpec& basis, int m, int n);

/// One table per eigen-equation: residual of the state built at each cutoff,
/// windowed to total occupation <= cutoff / 2.
std::vector<ConvergenceTable> residual_study(
    const std::string& family, const std::function<ExponentSpec()>& exponent,
    const std::vector<entangled::EigenEquation>& equations, int n_modes,
    const std::vector<int>& cutoffs);

}  // namespace fockweyl::validation
