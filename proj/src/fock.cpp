#include "fockweyl/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace fockweyl {

namespace {

constexpr std::size_t kMaxDenseDimension = 4096;
constexpr std::size_t kParallelThreshold = 4096;

void require_dense_capacity(const BasisSpec& basis) {
  if (basis.dimension() > kMaxDenseDimension) {
    throw capacity_error("dense operator of dimension " + std::to_string(basis.dimension()) +
                         " exceeds limit " + std::to_string(kMaxDenseDimension));
  }
}

void require_mode(const BasisSpec& basis, int mode) {
  if (mode < 0 || mode >= basis.n_modes()) {
    throw std::out_of_range("mode " + std::to_string(mode) + " out of range for " +
                            std::to_string(basis.n_modes()) + " modes");
  }
}

void require_same_basis(const BasisSpec& a, const BasisSpec& b) {
  if (!(a == b)) throw std::invalid_argument("basis mismatch");
}

// sqrt(k) for k = 0..cutoff+1
std::vector<double> sqrt_table(int cutoff) {
  std::vector<double> t(static_cast<std::size_t>(cutoff) + 2);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::sqrt(static_cast<double>(k));
  return t;
}

// out = G in, with G = sum_i L_i a_i^dag + sum_{i<=j} coeff_ij a_i^dag a_j^dag.
// Gather form: each output amplitude reads lower-occupation inputs only.
void apply_generator(const BasisSpec& basis, const ExponentSpec& e, const ComplexVector& in,
                     ComplexVector& out) {
  const int n = basis.n_modes();
  const auto sq = sqrt_table(basis.cutoff());
  std::vector<cplx> pair(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pair[static_cast<std::size_t>(i * n + j)] = e.coefficient(i, j);
  const auto dim = static_cast<std::int64_t>(basis.dimension());

#pragma omp parallel for schedule(static) if (dim > static_cast<std::int64_t>(kParallelThreshold))
  for (std::int64_t k = 0; k < dim; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    int occ[32];
    for (int i = 0; i < n; ++i) occ[i] = basis.occupation(idx, i);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      if (occ[i] == 0) continue;
      const std::size_t si = basis.stride(i);
      acc += e.linear()[i] * sq[static_cast<std::size_t>(occ[i])] *
             in[static_cast<Eigen::Index>(idx - si)];
      if (occ[i] >= 2) {
        acc += pair[static_cast<std::size_t>(i * n + i)] *
               (sq[static_cast<std::size_t>(occ[i])] * sq[static_cast<std::size_t>(occ[i] - 1)]) *
               in[static_cast<Eigen::Index>(idx - 2 * si)];
      }
      for (int j = i + 1; j < n; ++j) {
        if (occ[j] == 0) continue;
        acc += pair[static_cast<std::size_t>(i * n + j)] *
               (sq[static_cast<std::size_t>(occ[i])] * sq[static_cast<std::size_t>(occ[j])]) *
               in[static_cast<Eigen::Index>(idx - si - basis.stride(j))];
      }
    }
    out[k] = acc;
  }
}

}  // namespace

std::size_t basis_dimension(int n_modes, int cutoff) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  const auto base = static_cast<std::size_t>(cutoff) + 1;
  std::size_t dim = 1;
  for (int i = 0; i < n_modes; ++i) {
    if (dim > std::numeric_limits<std::size_t>::max() / base ||
        dim * base > static_cast<std::size_t>(std::numeric_limits<Eigen::Index>::max())) {
      throw capacity_error("basis dimension overflows the index range");
    }
    dim *= base;
  }
  return dim;
}

BasisSpec::BasisSpec(int n_modes, int cutoff)
    : n_modes_(n_modes), cutoff_(cutoff), dimension_(basis_dimension(n_modes, cutoff)) {
  if (n_modes > 32) throw capacity_error("at most 32 modes are supported");
  strides_.assign(static_cast<std::size_t>(n_modes), 1);
  for (int i = n_modes - 2; i >= 0; --i) {
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i) + 1] * static_cast<std::size_t>(cutoff + 1);
  }
}

std::size_t BasisSpec::index_of(const MultiIndex& occupations) const {
  if (static_cast<int>(occupations.size()) != n_modes_) {
    throw std::invalid_argument("multi-index length does not match the number of modes");
  }
  std::size_t idx = 0;
  for (int i = 0; i < n_modes_; ++i) {
    const int n = occupations[static_cast<std::size_t>(i)];
    if (n < 0 || n > cutoff_) throw std::out_of_range("occupation outside 0..cutoff");
    idx += static_cast<std::size_t>(n) * stride(i);
  }
  return idx;
}

MultiIndex BasisSpec::occupations(std::size_t index) const {
  if (index >= dimension_) throw std::out_of_range("basis index out of range");
  MultiIndex occ(static_cast<std::size_t>(n_modes_));
  for (int i = 0; i < n_modes_; ++i) occ[static_cast<std::size_t>(i)] = occupation(index, i);
  return occ;
}

int BasisSpec::total_occupation(std::size_t index) const {
  int total = 0;
  for (int i = 0; i < n_modes_; ++i) total += occupation(index, i);
  return total;
}

StateVector::StateVector(BasisSpec basis, ComplexVector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_.dimension()) {
    throw std::invalid_argument("amplitude count does not match basis dimension");
  }
  if (!amplitudes_.allFinite()) throw std::invalid_argument("state has non-finite amplitudes");
}

StateVector StateVector::vacuum(const BasisSpec& basis) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(basis.dimension()));
  v[0] = 1.0;
  return {basis, std::move(v)};
}

StateVector StateVector::basis_state(const BasisSpec& basis, const MultiIndex& occupations) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(basis.dimension()));
  v[static_cast<Eigen::Index>(basis.index_of(occupations))] = 1.0;
  return {basis, std::move(v)};
}

OperatorMatrix::OperatorMatrix(BasisSpec basis, ComplexMatrix entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(basis_.dimension());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("operator matrix shape does not match basis dimension");
  }
  if (!entries_.allFinite()) throw std::invalid_argument("operator has non-finite entries");
}

OperatorMatrix OperatorMatrix::identity(const BasisSpec& basis) {
  require_dense_capacity(basis);
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  return {basis, ComplexMatrix::Identity(d, d)};
}

OperatorMatrix OperatorMatrix::zero(const BasisSpec& basis) {
  require_dense_capacity(basis);
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  return {basis, ComplexMatrix::Zero(d, d)};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {basis_, entries_.adjoint()}; }

StateVector OperatorMatrix::apply(const StateVector& state) const {
  require_same_basis(basis_, state.basis());
  return {basis_, entries_ * state.amplitudes()};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a.basis_, b.basis_);
  return {a.basis_, a.entries_ + b.entries_};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a.basis_, b.basis_);
  return {a.basis_, a.entries_ - b.entries_};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a.basis_, b.basis_);
  return {a.basis_, a.entries_ * b.entries_};
}

OperatorMatrix operator*(cplx s, const OperatorMatrix& a) { return {a.basis_, s * a.entries_}; }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a.basis(), b.basis());
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

bool in_interior(const BasisSpec& basis, std::size_t index, int margin) {
  const int bound = basis.cutoff() - margin;
  for (int i = 0; i < basis.n_modes(); ++i) {
    if (basis.occupation(index, i) > bound) return false;
  }
  return true;
}

double interior_max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b,
                                   int margin) {
  require_same_basis(a.basis(), b.basis());
  const auto& basis = a.basis();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    if (in_interior(basis, k, margin)) keep.push_back(k);
  }
  double worst = 0.0;
  for (auto r : keep)
    for (auto c : keep) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

OperatorMatrix ladder_matrix(const BasisSpec& basis, int mode, Ladder kind) {
  require_mode(basis, mode);
  require_dense_capacity(basis);
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  const std::size_t s = basis.stride(mode);
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    const int n = basis.occupation(k, mode);
    if (kind == Ladder::raise && n < basis.cutoff()) {
      m(static_cast<Eigen::Index>(k + s), static_cast<Eigen::Index>(k)) = std::sqrt(n + 1.0);
    } else if (kind == Ladder::lower && n > 0) {
      m(static_cast<Eigen::Index>(k - s), static_cast<Eigen::Index>(k)) =
          std::sqrt(static_cast<double>(n));
    }
  }
  return {basis, std::move(m)};
}

OperatorMatrix quadrature_matrix(const BasisSpec& basis, int mode, Quadrature kind) {
  const auto a = ladder_matrix(basis, mode, Ladder::lower);
  const auto ad = ladder_matrix(basis, mode, Ladder::raise);
  const double r = 1.0 / std::sqrt(2.0);
  if (kind == Quadrature::Q) return cplx{r, 0.0} * (a + ad);
  return cplx{0.0, -r} * (a - ad);
}

OperatorMatrix number_operator(const BasisSpec& basis) {
  require_dense_capacity(basis);
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = basis.total_occupation(k);
  }
  return {basis, std::move(m)};
}

LadderForm LadderForm::from_quadratures(const RealVector& q_weights, const RealVector& p_weights) {
  if (q_weights.size() != p_weights.size()) {
    throw std::invalid_argument("quadrature weight vectors differ in length");
  }
  const double r = 1.0 / std::sqrt(2.0);
  LadderForm f;
  f.lower = ComplexVector(q_weights.size());
  f.raise = ComplexVector(q_weights.size());
  for (Eigen::Index i = 0; i < q_weights.size(); ++i) {
    f.lower[i] = cplx{q_weights[i] * r, -p_weights[i] * r};
    f.raise[i] = cplx{q_weights[i] * r, p_weights[i] * r};
  }
  return f;
}

StateVector LadderForm::apply(const StateVector& state) const {
  const auto& basis = state.basis();
  const int n = basis.n_modes();
  if (lower.size() != n || raise.size() != n) {
    throw std::invalid_argument("ladder form size does not match the number of modes");
  }
  const auto sq = sqrt_table(basis.cutoff());
  const auto& in = state.amplitudes();
  ComplexVector out(in.size());
  const auto dim = static_cast<std::int64_t>(basis.dimension());
  const int cutoff = basis.cutoff();

#pragma omp parallel for schedule(static) if (dim > static_cast<std::int64_t>(kParallelThreshold))
  for (std::int64_t k = 0; k < dim; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    cplx acc = shift * in[k];
    for (int i = 0; i < n; ++i) {
      const int occ = basis.occupation(idx, i);
      const std::size_t s = basis.stride(i);
      if (occ < cutoff) {
        acc += lower[i] * sq[static_cast<std::size_t>(occ + 1)] *
               in[static_cast<Eigen::Index>(idx + s)];
      }
      if (occ > 0) {
        acc += raise[i] * sq[static_cast<std::size_t>(occ)] *
               in[static_cast<Eigen::Index>(idx - s)];
      }
    }
    out[k] = acc;
  }
  return {basis, std::move(out)};
}

OperatorMatrix LadderForm::to_matrix(const BasisSpec& basis) const {
  if (lower.size() != basis.n_modes() || raise.size() != basis.n_modes()) {
    throw std::invalid_argument("ladder form size does not match the number of modes");
  }
  auto m = shift * OperatorMatrix::identity(basis);
  for (int i = 0; i < basis.n_modes(); ++i) {
    m = m + lower[i] * ladder_matrix(basis, i, Ladder::lower) +
        raise[i] * ladder_matrix(basis, i, Ladder::raise);
  }
  return m;
}

ExponentSpec::ExponentSpec(cplx constant, ComplexVector linear, ComplexMatrix quadratic)
    : constant_(constant), linear_(std::move(linear)), quadratic_(std::move(quadratic)) {
  const auto n = linear_.size();
  if (n < 1) throw std::invalid_argument("exponent needs at least one mode");
  if (quadratic_.rows() != n || quadratic_.cols() != n) {
    throw std::invalid_argument("quadratic part must be n_modes x n_modes");
  }
  if (quadratic_ != quadratic_.transpose()) {
    throw std::invalid_argument("quadratic part must be exactly symmetric");
  }
  if (!std::isfinite(constant_.real()) || !std::isfinite(constant_.imag()) ||
      !linear_.allFinite() || !quadratic_.allFinite()) {
    throw std::invalid_argument("exponent has non-finite coefficients");
  }
}

ExponentSpec ExponentSpec::from_coefficients(cplx constant, ComplexVector linear,
                                             const ComplexMatrix& pair) {
  const auto n = linear.size();
  if (pair.rows() != n || pair.cols() != n) {
    throw std::invalid_argument("pair coefficient matrix must be n_modes x n_modes");
  }
  ComplexMatrix s(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i, i) = pair(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * pair(i, j);
  }
  return {constant, std::move(linear), std::move(s)};
}

cplx ExponentSpec::coefficient(int i, int j) const {
  if (i == j) return quadratic_(i, i);
  return 2.0 * quadratic_(i, j);
}

StateVector apply_exponent_to_vacuum(const BasisSpec& basis, const ExponentSpec& exponent) {
  if (exponent.n_modes() != basis.n_modes()) {
    throw std::invalid_argument("exponent and basis disagree on the number of modes");
  }
  const auto d = static_cast<Eigen::Index>(basis.dimension());
  ComplexVector term = ComplexVector::Zero(d);
  term[0] = 1.0;
  ComplexVector sum = term;
  ComplexVector next(d);
  // Each generator application raises the total occupation by at least one.
  const int max_order = basis.n_modes() * basis.cutoff();
  for (int k = 1; k <= max_order; ++k) {
    apply_generator(basis, exponent, term, next);
    next /= static_cast<double>(k);
    term.swap(next);
    sum += term;
  }
  sum *= std::exp(exponent.constant());
  return {basis, std::move(sum)};
}

cplx inner_product(const StateVector& s1, const StateVector& s2) {
  require_same_basis(s1.basis(), s2.basis());
  return s1.amplitudes().dot(s2.amplitudes());
}

StateVector coherent_state(const BasisSpec& basis, const std::vector<cplx>& z) {
  if (static_cast<int>(z.size()) != basis.n_modes()) {
    throw std::invalid_argument("one coherent amplitude per mode is required");
  }
  const auto per_mode = static_cast<std::size_t>(basis.cutoff()) + 1;
  std::vector<std::vector<cplx>> factors(z.size(), std::vector<cplx>(per_mode));
  for (std::size_t i = 0; i < z.size(); ++i) {
    cplx a = std::exp(-0.5 * std::norm(z[i]));
    for (std::size_t n = 0; n < per_mode; ++n) {
      factors[i][n] = a;
      a *= z[i] / std::sqrt(static_cast<double>(n + 1));
    }
  }
  ComplexVector v(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    cplx amp{1.0, 0.0};
    for (int i = 0; i < basis.n_modes(); ++i) {
      amp *= factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(basis.occupation(k, i))];
    }
    v[static_cast<Eigen::Index>(k)] = amp;
  }
  return {basis, std::move(v)};
}

namespace reference {

StateVector apply_exponent_to_vacuum(const BasisSpec& basis, const ExponentSpec& exponent) {
  if (exponent.n_modes() != basis.n_modes()) {
    throw std::invalid_argument("exponent and basis disagree on the number of modes");
  }
  std::vector<OperatorMatrix> raise;
  for (int i = 0; i < basis.n_modes(); ++i) raise.push_back(ladder_matrix(basis, i, Ladder::raise));
  auto generator = OperatorMatrix::zero(basis);
  for (int i = 0; i < basis.n_modes(); ++i) {
    generator = generator + exponent.linear()[i] * raise[static_cast<std::size_t>(i)];
    for (int j = i; j < basis.n_modes(); ++j) {
      generator = generator + exponent.coefficient(i, j) *
                                  (raise[static_cast<std::size_t>(i)] *
                                   raise[static_cast<std::size_t>(j)]);
    }
  }
  auto term = StateVector::vacuum(basis).amplitudes();
  ComplexVector sum = term;
  for (int k = 1; k <= basis.n_modes() * basis.cutoff(); ++k) {
    term = generator.entries() * term / static_cast<double>(k);
    sum += term;
  }
  sum *= std::exp(exponent.constant());
  return {basis, std::move(sum)};
}

}  // namespace reference

}  // namespace fockweyl
