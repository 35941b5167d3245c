// Truncated multimode Fock space: basis indexing, dense operator matrices,
// matrix-free linear ladder forms, and the exponent-to-vacuum state builder.
//
// Basis ordering is lexicographic in the occupations with mode 0 slowest.
// Each mode holds occupations 0..cutoff; a^dagger acting on |cutoff> gives 0,
// so every polynomial in the raising operators is nilpotent.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fockweyl {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when a requested basis or dense matrix does not fit in memory or
/// in the platform's index range.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation numbers, one per mode.
using MultiIndex = std::vector<int>;

/// (cutoff+1)^n_modes, or capacity_error if that overflows std::size_t.
std::size_t basis_dimension(int n_modes, int cutoff);

class BasisSpec {
 public:
  BasisSpec(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

  std::size_t index_of(const MultiIndex& occupations) const;
  MultiIndex occupations(std::size_t index) const;
  int occupation(std::size_t index, int mode) const {
    return static_cast<int>((index / stride(mode)) % static_cast<std::size_t>(cutoff_ + 1));
  }
  int total_occupation(std::size_t index) const;

  friend bool operator==(const BasisSpec& a, const BasisSpec& b) {
    return a.n_modes_ == b.n_modes_ && a.cutoff_ == b.cutoff_;
  }

 private:
  int n_modes_;
  int cutoff_;
  std::size_t dimension_;
  std::vector<std::size_t> strides_;
};

class StateVector {
 public:
  StateVector(BasisSpec basis, ComplexVector amplitudes);

  static StateVector vacuum(const BasisSpec& basis);
  static StateVector basis_state(const BasisSpec& basis, const MultiIndex& occupations);

  const BasisSpec& basis() const { return basis_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  cplx amplitude(const MultiIndex& occupations) const {
    return amplitudes_[static_cast<Eigen::Index>(basis_.index_of(occupations))];
  }
  double norm() const { return amplitudes_.norm(); }

 private:
  BasisSpec basis_;
  ComplexVector amplitudes_;
};

class OperatorMatrix {
 public:
  OperatorMatrix(BasisSpec basis, ComplexMatrix entries);

  static OperatorMatrix identity(const BasisSpec& basis);
  static OperatorMatrix zero(const BasisSpec& basis);

  const BasisSpec& basis() const { return basis_; }
  const ComplexMatrix& entries() const { return entries_; }
  cplx operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  OperatorMatrix adjoint() const;
  StateVector apply(const StateVector& state) const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(cplx s, const OperatorMatrix& a);

 private:
  BasisSpec basis_;
  ComplexMatrix entries_;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Largest |A_ij - B_ij| over all entries.
double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);

/// Largest |A_ij - B_ij| restricted to rows and columns whose every occupation
/// is at most `cutoff - margin`.
double interior_max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b,
                                   int margin);

/// True when every occupation of basis element `index` is <= cutoff - margin.
bool in_interior(const BasisSpec& basis, std::size_t index, int margin);

enum class Ladder { raise, lower };
enum class Quadrature { Q, P };

OperatorMatrix ladder_matrix(const BasisSpec& basis, int mode, Ladder kind);

/// Q = (a + a^dagger)/sqrt 2, P = (a - a^dagger)/(i sqrt 2).
OperatorMatrix quadrature_matrix(const BasisSpec& basis, int mode, Quadrature kind);

/// sum_i a_i^dagger a_i
OperatorMatrix number_operator(const BasisSpec& basis);

/// Operator linear in the ladder operators,
///   shift + sum_i (lower_i a_i + raise_i a_i^dagger),
/// applied without forming a matrix. Used where dense matrices would not fit.
struct LadderForm {
  ComplexVector lower;
  ComplexVector raise;
  cplx shift{0.0, 0.0};

  /// sum_i (q_i Q_i + p_i P_i)
  static LadderForm from_quadratures(const RealVector& q_weights, const RealVector& p_weights);

  StateVector apply(const StateVector& state) const;
  OperatorMatrix to_matrix(const BasisSpec& basis) const;
};

/// Exponent c + sum_i L_i a_i^dagger + sum_{i,j} S_ij a_i^dagger a_j^dagger.
///
/// S is stored symmetric, so the operator coefficient of a_i^dagger a_j^dagger
/// (i < j) is 2 S_ij while that of a_i^dagger^2 is S_ii. coefficient(i, j)
/// returns the operator coefficient directly.
class ExponentSpec {
 public:
  ExponentSpec(cplx constant, ComplexVector linear, ComplexMatrix quadratic);

  /// Builds from operator coefficients: pair(i, j) for i <= j multiplies
  /// a_i^dagger a_j^dagger; the strict lower triangle is ignored.
  static ExponentSpec from_coefficients(cplx constant, ComplexVector linear,
                                        const ComplexMatrix& pair);

  int n_modes() const { return static_cast<int>(linear_.size()); }
  cplx constant() const { return constant_; }
  const ComplexVector& linear() const { return linear_; }
  const ComplexMatrix& quadratic() const { return quadratic_; }
  cplx coefficient(int i, int j) const;

 private:
  cplx constant_;
  ComplexVector linear_;
  ComplexMatrix quadratic_;
};

/// exp(exponent)|0...0>, summed as a power series in ascending order of the
/// exponent's power. The series is finite on the truncated basis and its
/// amplitudes equal the untruncated amplitudes restricted to the basis.
StateVector apply_exponent_to_vacuum(const BasisSpec& basis, const ExponentSpec& exponent);

/// sum conj(s1) s2
cplx inner_product(const StateVector& s1, const StateVector& s2);

/// Product coherent state with amplitudes exp(-|z|^2/2) z^n / sqrt(n!) per mode.
StateVector coherent_state(const BasisSpec& basis, const std::vector<cplx>& z);

namespace reference {

/// Dense-matrix power series for exp(exponent)|0>; the serial baseline the
/// matrix-free kernel is checked and benchmarked against.
StateVector apply_exponent_to_vacuum(const BasisSpec& basis, const ExponentSpec& exponent);

}  // namespace reference

}  // namespace fockweyl
