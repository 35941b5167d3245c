#include "fockweyl/weyl.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "fockweyl/quadrature.hpp"
#include "fockweyl/text.hpp"

namespace fockweyl::weyl {

namespace {

constexpr int kMaxCutoff = 120;

void require_single_mode(const BasisSpec& basis) {
  if (basis.n_modes() != 1) throw std::invalid_argument("single-mode basis required");
}

OperatorMatrix matrix_power(const OperatorMatrix& a, int k) {
  auto out = OperatorMatrix::identity(a.basis());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

double binomial(int m, int l) {
  double b = 1.0;
  for (int k = 1; k <= l; ++k) b = b * (m - l + k) / k;
  return b;
}

}  // namespace

ClassicalPolynomial::ClassicalPolynomial(std::vector<ClassicalMonomial> terms) {
  std::map<std::pair<int, int>, cplx> merged;
  for (const auto& t : terms) {
    if (t.m < 0 || t.n < 0) throw std::invalid_argument("monomial powers must be non-negative");
    merged[{t.m, t.n}] += t.coeff;
  }
  for (const auto& [mn, c] : merged) {
    if (c != cplx{0.0, 0.0}) terms_.push_back({mn.first, mn.second, c});
  }
}

OperatorMatrix wigner_operator(const BasisSpec& basis, PhasePoint point) {
  require_single_mode(basis);
  const int cutoff = basis.cutoff();
  if (cutoff > kMaxCutoff) throw capacity_error("wigner_operator supports cutoff <= 120");
  if (!std::isfinite(point.q) || !std::isfinite(point.p)) {
    throw std::invalid_argument("phase-space point must be finite");
  }

  // (1/pi) :exp[...]: = (1/pi) D(beta) (-1)^N with beta = 2 alpha, and for m >= n
  //   <m|D(beta)|n> = sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2).
  // The expanded normal-ordered sum cancels catastrophically once |alpha| grows.
  const cplx beta = std::sqrt(2.0) * cplx{point.q, point.p};
  const double x = std::norm(beta);
  const double envelope = std::exp(-0.5 * x) / std::numbers::pi;
  const auto dim = static_cast<Eigen::Index>(cutoff + 1);
  ComplexMatrix delta(dim, dim);
  for (int d = 0; d <= cutoff; ++d) {
    // L_n^{(d)}(x) for n = 0..cutoff-d by the three-term recurrence.
    std::vector<double> lag(static_cast<std::size_t>(cutoff - d) + 1);
    lag[0] = 1.0;
    if (lag.size() > 1) lag[1] = 1.0 + d - x;
    for (std::size_t k = 1; k + 1 < lag.size(); ++k) {
      const double kk = static_cast<double>(k);
      lag[k + 1] = ((2.0 * kk + 1.0 + d - x) * lag[k] - (kk + d) * lag[k - 1]) / (kk + 1.0);
    }
    for (int n = 0; n + d <= cutoff; ++n) {
      // sqrt(n!/(n+d)!) beta^d built factor by factor
      cplx lower_factor{1.0, 0.0};
      cplx upper_factor{1.0, 0.0};
      for (int j = 1; j <= d; ++j) {
        const double root = std::sqrt(static_cast<double>(n + j));
        lower_factor *= beta / root;
        upper_factor *= -std::conj(beta) / root;
      }
      const double sign = (n % 2) ? -1.0 : 1.0;
      const double base = envelope * lag[static_cast<std::size_t>(n)];
      // <n+d|D|n> and <n|D|n+d>; the parity factor is (-1)^column.
      delta(n + d, n) = sign * base * lower_factor;
      delta(n, n + d) = (((n + d) % 2) ? -1.0 : 1.0) * base * upper_factor;
    }
  }
  return {basis, std::move(delta)};
}

OperatorMatrix weyl_order_monomial(const BasisSpec& basis, int m, int n) {
  require_single_mode(basis);
  if (m < 0 || n < 0) throw std::invalid_argument("monomial powers must be non-negative");
  const auto q = quadrature_matrix(basis, 0, Quadrature::Q);
  const auto pn = matrix_power(quadrature_matrix(basis, 0, Quadrature::P), n);
  auto sum = OperatorMatrix::zero(basis);
  for (int l = 0; l <= m; ++l) {
    sum = sum + cplx{binomial(m, l), 0.0} * (matrix_power(q, m - l) * pn * matrix_power(q, l));
  }
  return cplx{std::pow(0.5, m), 0.0} * sum;
}

OperatorMatrix weyl_quantize(const BasisSpec& basis, const ClassicalPolynomial& h) {
  require_single_mode(basis);
  auto sum = OperatorMatrix::zero(basis);
  for (const auto& t : h.terms()) sum = sum + t.coeff * weyl_order_monomial(basis, t.m, t.n);
  return sum;
}

OperatorMatrix quantize_via_wigner_quadrature(const BasisSpec& basis,
                                              const ClassicalMonomial& mono,
                                              QuadratureGrid grid) {
  require_single_mode(basis);
  if (!(grid.radius > 0.0)) throw std::invalid_argument("quadrature radius must be positive");
  if (grid.points < 3 || grid.points % 2 == 0) {
    throw std::invalid_argument("quadrature points per axis must be odd and >= 3");
  }
  if (mono.m < 0 || mono.n < 0) throw std::invalid_argument("monomial powers must be non-negative");

  const auto g = quadrature::MidpointGrid::cube(2, grid.radius, grid.points);
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  ComplexMatrix integral = quadrature::integrate(
      g,
      [&](std::span<const double> x) -> ComplexMatrix {
        const double weight = std::pow(x[0], mono.m) * std::pow(x[1], mono.n);
        return weight * wigner_operator(basis, {x[0], x[1]}).entries();
      },
      ComplexMatrix(ComplexMatrix::Zero(dim, dim)));
  return {basis, mono.coeff * integral};
}

double wigner_function(const StateVector& state, PhasePoint point) {
  require_single_mode(state.basis());
  const double norm2 = state.amplitudes().squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("Wigner function of a zero state");
  const auto delta = wigner_operator(state.basis(), point);
  const cplx value = inner_product(state, delta.apply(state)) / norm2;
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
    throw std::logic_error("Wigner expectation has a non-negligible imaginary part");
  }
  return value.real();
}

void write_wigner_grid(std::ostream& out, const StateVector& state, double q_min, double q_max,
                       double p_min, double p_max, int points) {
  if (points < 2) throw std::invalid_argument("Wigner grid needs at least 2 points per axis");
  if (!(q_max > q_min) || !(p_max > p_min)) throw std::invalid_argument("empty Wigner grid range");
  out << text::shortest(q_min) << ' ' << text::shortest(q_max) << ' ' << text::shortest(p_min)
      << ' ' << text::shortest(p_max) << ' ' << points << '\n';
  const double dq = (q_max - q_min) / (points - 1);
  const double dp = (p_max - p_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double q = q_min + i * dq;
    for (int j = 0; j < points; ++j) {
      const double p = p_min + j * dp;
      out << text::shortest(q) << ' ' << text::shortest(p) << ' '
          << text::shortest(wigner_function(state, {q, p})) << '\n';
    }
  }
}

}  // namespace fockweyl::weyl
