#include "fockweyl/entangled.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fockweyl::entangled {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
constexpr cplx kI{0.0, 1.0};

void require_size(const MassPartition& p, int n, const char* what) {
  if (p.size() != n) {
    throw std::invalid_argument(std::string(what) + " needs exactly " + std::to_string(n) +
                                " masses");
  }
}

void require_rho(const MultiEprParam& param) {
  if (param.partition.size() < 2) throw std::invalid_argument("at least two masses required");
  if (static_cast<int>(param.rho.size()) != param.partition.size() - 1) {
    throw std::invalid_argument("rho must hold one eigenvalue per mode after the first");
  }
}

// rho with the reference mode's zero prepended.
std::vector<double> full_rho(const MultiEprParam& param) {
  std::vector<double> r{0.0};
  r.insert(r.end(), param.rho.begin(), param.rho.end());
  return r;
}

double log_prefactor(const MassPartition& p) {
  double prod = 1.0;
  for (double m : p.mu()) prod *= m;
  return -0.25 * p.size() * std::log(kPi) + 0.5 * std::log(prod / p.lambda());
}

bool equal_masses(const MassPartition& p) {
  for (double m : p.mu())
    if (std::abs(m - 1.0 / p.size()) > 1e-12) return false;
  return true;
}

std::string term_name(int i) { return "a" + std::to_string(i); }
std::string term_name(int i, int j) { return term_name(i) + term_name(j); }

}  // namespace

ExponentSpec eta_exponent(const EtaParam& param) {
  const cplx eta = param.eta;
  ComplexVector linear(2);
  linear << eta, -std::conj(eta);
  ComplexMatrix pair = ComplexMatrix::Zero(2, 2);
  pair(0, 1) = 1.0;
  return ExponentSpec::from_coefficients(-0.5 * std::norm(eta), std::move(linear), pair);
}

ExponentSpec xi_exponent(const BipartiteEprParam& param) {
  const auto& p = param.partition;
  require_size(p, 2, "bipartite state");
  const double m0 = p.mu(0);
  const double m1 = p.mu(1);
  const double lam = p.lambda();
  const double q = param.q_cm;
  const double rho = param.rho;

  const double c = 0.5 * std::log(m0 * m1 / (kPi * lam)) -
                   0.5 * (q * q + (m0 * m1 * rho) * (m0 * m1 * rho)) / lam;
  ComplexVector linear(2);
  linear << kSqrt2 * m0 * cplx{q, rho * m1 * m1} / lam, kSqrt2 * m1 * cplx{q, -rho * m0 * m0} / lam;
  ComplexMatrix pair = ComplexMatrix::Zero(2, 2);
  pair(0, 0) = -0.5 * (m0 * m0 - m1 * m1) / lam;
  pair(1, 1) = 0.5 * (m0 * m0 - m1 * m1) / lam;
  pair(0, 1) = -2.0 * m0 * m1 / lam;
  return ExponentSpec::from_coefficients(c, std::move(linear), pair);
}

ExponentSpec tripartite_exponent(const MultiEprParam& param) {
  require_size(param.partition, 3, "tripartite state");
  require_rho(param);
  const auto& p = param.partition;
  const double m0 = p.mu(0), m1 = p.mu(1), m2 = p.mu(2);
  const double s0 = m0 * m0, s1 = m1 * m1, s2 = m2 * m2;
  const double lam = p.lambda();
  const double q = param.q;
  const double r1 = param.rho[0];
  const double r2 = param.rho[1];

  const double a = -q * q / (2.0 * lam) -
                   (-2.0 * s1 * s2 * r1 * r2 + (s0 + s2) * s1 * r1 * r1 + (s0 + s1) * s2 * r2 * r2) /
                       (2.0 * lam);
  const double row1[3] = {m0 * m1, -(s0 + s2), m1 * m2};
  const double row2[3] = {m0 * m2, m1 * m2, -(s0 + s1)};
  const double mu[3] = {m0, m1, m2};
  ComplexVector linear(3);
  for (int i = 0; i < 3; ++i) {
    linear[i] = kSqrt2 * q * mu[i] / lam +
                kI * kSqrt2 * (m1 * r1 * row1[i] + m2 * r2 * row2[i]) / lam;
  }
  ComplexMatrix pair = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    pair(i, i) = (-mu[i] * mu[i] + 0.5 * lam) / lam;
    for (int j = i + 1; j < 3; ++j) pair(i, j) = -2.0 * mu[i] * mu[j] / lam;
  }
  return ExponentSpec::from_coefficients(log_prefactor(p) + a, std::move(linear), pair);
}

ExponentSpec multipartite_exponent(const MultiEprParam& param) {
  require_rho(param);
  const auto& p = param.partition;
  const int n = p.size();
  const double lam = p.lambda();
  const auto rho = full_rho(param);

  double m_term = -param.q * param.q;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double t = p.mu(i) * p.mu(j) * (rho[static_cast<std::size_t>(i)] - rho[static_cast<std::size_t>(j)]);
      m_term -= 0.5 * t * t;
    }
  }

  ComplexVector linear(n);
  for (int i = 0; i < n; ++i) {
    double im = 0.0;
    for (int j = 0; j < n; ++j) {
      im += p.mu(i) * p.mu(j) * p.mu(j) *
            (rho[static_cast<std::size_t>(i)] - rho[static_cast<std::size_t>(j)]);
    }
    const cplx a_i{p.mu(i) * param.q, -im};
    linear[i] = kSqrt2 * a_i / lam;
  }

  ComplexMatrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s(i, j) = (-p.mu(i) * p.mu(j) + (i == j ? 0.5 * lam : 0.0)) / lam;

  return {log_prefactor(p) + m_term / (2.0 * lam), std::move(linear), std::move(s)};
}

LadderForm com_form(const MassPartition& partition) {
  const int n = partition.size();
  RealVector q(n);
  for (int i = 0; i < n; ++i) q[i] = partition.mu(i);
  return LadderForm::from_quadratures(q, RealVector::Zero(n));
}

LadderForm rel_momentum_form(const MassPartition& partition, int k) {
  const int n = partition.size();
  if (k < 1 || k >= n) throw std::out_of_range("relative momentum index must be in 1..n-1");
  RealVector p = RealVector::Zero(n);
  p[0] = 1.0 / partition.mu(0);
  p[k] = -1.0 / partition.mu(k);
  return LadderForm::from_quadratures(RealVector::Zero(n), p);
}

OperatorMatrix com_operator(const MassPartition& partition, const BasisSpec& basis) {
  if (basis.n_modes() != partition.size()) {
    throw std::invalid_argument("basis and partition disagree on the number of modes");
  }
  return com_form(partition).to_matrix(basis);
}

OperatorMatrix rel_momentum_operator(const MassPartition& partition, int k,
                                     const BasisSpec& basis) {
  if (basis.n_modes() != partition.size()) {
    throw std::invalid_argument("basis and partition disagree on the number of modes");
  }
  return rel_momentum_form(partition, k).to_matrix(basis);
}

LadderForm eta_position_form() {
  RealVector q(2);
  q << 1.0, -1.0;
  return LadderForm::from_quadratures(q, RealVector::Zero(2));
}

LadderForm eta_momentum_form() {
  RealVector p(2);
  p << 1.0, 1.0;
  return LadderForm::from_quadratures(RealVector::Zero(2), p);
}

std::vector<EigenEquation> eta_equations(const EtaParam& param) {
  return {{"Q0-Q1", eta_position_form(), kSqrt2 * param.eta.real()},
          {"P0+P1", eta_momentum_form(), kSqrt2 * param.eta.imag()}};
}

std::vector<EigenEquation> bipartite_equations(const BipartiteEprParam& param) {
  require_size(param.partition, 2, "bipartite state");
  return {{"Qcm", com_form(param.partition), param.q_cm},
          {"Pr1", rel_momentum_form(param.partition, 1), param.rho}};
}

std::vector<EigenEquation> multipartite_equations(const MultiEprParam& param) {
  require_rho(param);
  std::vector<EigenEquation> eqs{{"Qcm", com_form(param.partition), param.q}};
  for (int k = 1; k < param.partition.size(); ++k) {
    eqs.push_back({"Pr" + std::to_string(k), rel_momentum_form(param.partition, k),
                   param.rho[static_cast<std::size_t>(k) - 1]});
  }
  return eqs;
}

namespace display {

ExponentSpec xi_equal_mass(cplx xi) {
  ComplexVector linear(2);
  linear << xi, std::conj(xi);
  ComplexMatrix pair = ComplexMatrix::Zero(2, 2);
  pair(0, 1) = -1.0;
  return ExponentSpec::from_coefficients(-0.5 * std::norm(xi), std::move(linear), pair);
}

ExponentSpec xi_general(cplx xi, const MassPartition& partition) {
  require_size(partition, 2, "bipartite state");
  const double m0 = partition.mu(0);
  const double m1 = partition.mu(1);
  const double lam = partition.lambda();
  const double d = m0 - m1;
  const double r = 1.0 / std::sqrt(2.0 * lam);
  ComplexVector linear(2);
  linear << r * (xi + d * std::conj(xi)), r * (std::conj(xi) - d * xi);
  ComplexMatrix pair = ComplexMatrix::Zero(2, 2);
  pair(0, 0) = -d / (2.0 * lam);
  pair(1, 1) = d / (2.0 * lam);
  pair(0, 1) = -4.0 * m0 * m1;
  return ExponentSpec::from_coefficients(std::log(std::sqrt(m0 * m1) / lam) - 0.5 * std::norm(xi),
                                         std::move(linear), pair);
}

ExponentSpec tripartite(const MultiEprParam& param) {
  require_size(param.partition, 3, "tripartite state");
  require_rho(param);
  const auto& p = param.partition;
  const double m0 = p.mu(0), m1 = p.mu(1), m2 = p.mu(2);
  const double s0 = m0 * m0, s1 = m1 * m1, s2 = m2 * m2;
  const double lam = p.lambda();
  const double q = param.q;
  const double r1 = param.rho[0];
  const double r2 = param.rho[1];

  const double a = -q * q / (2.0 * lam) -
                   (-2.0 * s1 * s2 * r1 * r2 + (s0 + s2) * s1 * r1 * r1 + (s0 + s1) * s2 * r2 * r2) /
                       (2.0 * lam);
  // Both relative-momentum rows carry -(mu_0^2 + mu_2^2) on their own mode.
  const double row1[3] = {m0 * m1, -(s0 + s2), m1 * m2};
  const double row2[3] = {m0 * m2, m1 * m2, -(s0 + s2)};
  const double mu[3] = {m0, m1, m2};
  ComplexVector linear(3);
  for (int i = 0; i < 3; ++i) {
    linear[i] = kSqrt2 * q * mu[i] / lam +
                kI * kSqrt2 * (m1 * r1 * row1[i] + m2 * r2 * row2[i]) / lam;
  }
  // S = -(1/lambda) sum_ij (mu_i mu_j - delta_ij lambda/2) a_i^dag a_j^dag.
  ComplexMatrix pair = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    pair(i, i) = -(mu[i] * mu[i] - 0.5 * lam) / lam;
    for (int j = i + 1; j < 3; ++j) pair(i, j) = -2.0 * mu[i] * mu[j] / lam;
  }
  const double c = -0.75 * std::log(kPi) + 0.5 * std::log(m0 * m1 * m2 / lam) + a;
  return ExponentSpec::from_coefficients(c, std::move(linear), pair);
}

ExponentSpec tripartite_equal_mass(const MultiEprParam& param) {
  require_size(param.partition, 3, "tripartite state");
  require_rho(param);
  if (!equal_masses(param.partition)) throw std::invalid_argument("equal masses required");
  const double q = param.q;
  const double r2 = param.rho[0];
  const double r3 = param.rho[1];
  const cplx k = kI * kSqrt2 / 9.0;
  ComplexVector linear(3);
  linear << k * (r2 + r3), k * (2.0 * r2 - r3), k * (2.0 * r3 - r2);
  ComplexMatrix pair = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    pair(i, i) = kSqrt2 * q;
    for (int j = i + 1; j < 3; ++j) pair(i, j) = -2.0 / 3.0;
  }
  const double c = std::log(1.0 / (3.0 * std::pow(kPi, 0.75))) - 1.5 * q * q -
                   (r2 * r2 + r3 * r3 - r2 * r3) / 27.0;
  return ExponentSpec::from_coefficients(c, std::move(linear), pair);
}

ExponentSpec multipartite_equal_mass(const MultiEprParam& param) {
  require_rho(param);
  if (!equal_masses(param.partition)) throw std::invalid_argument("equal masses required");
  const int n = param.partition.size();
  const double nd = n;
  const auto rho = full_rho(param);
  double c = -0.25 * nd * std::log(kPi) + 0.5 * (1.0 - nd) * std::log(nd) - 0.5 * nd * param.q * param.q;
  ComplexVector linear(n);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = rho[static_cast<std::size_t>(j)] - rho[static_cast<std::size_t>(k)];
      sum += d;
      c -= d * d / (4.0 * nd * nd * nd);
    }
    linear[j] = kSqrt2 * param.q - kI * kSqrt2 * sum / (nd * nd);
  }
  ComplexMatrix pair = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    pair(j, j) = 0.5 - 1.0 / nd;
    for (int k = j + 1; k < n; ++k) pair(j, k) = -2.0 / nd;
  }
  return ExponentSpec::from_coefficients(c, std::move(linear), pair);
}

}  // namespace display

BipartiteEprParam xi_param_equal_mass(cplx xi) {
  const MassPartition p({1.0, 1.0});
  const double root_lambda = std::sqrt(p.lambda());
  return {root_lambda * xi.real(), root_lambda * xi.imag() / (p.mu(0) * p.mu(1)), p};
}

BipartiteEprParam xi_param_literal(cplx xi, const MassPartition& partition) {
  require_size(partition, 2, "bipartite state");
  const double root_lambda = std::sqrt(partition.lambda());
  return {root_lambda * xi.real(), root_lambda * xi.imag(), partition};
}

std::vector<CoefficientMismatch> compare(const ExponentSpec& expected, const ExponentSpec& actual,
                                         double tol, bool include_constant) {
  if (expected.n_modes() != actual.n_modes()) {
    throw std::invalid_argument("exponents disagree on the number of modes");
  }
  std::vector<CoefficientMismatch> out;
  const auto check = [&](std::string term, cplx e, cplx a) {
    if (std::abs(e - a) > tol) out.push_back({std::move(term), e, a});
  };
  if (include_constant) check("const", expected.constant(), actual.constant());
  const int n = expected.n_modes();
  for (int i = 0; i < n; ++i) check(term_name(i), expected.linear()[i], actual.linear()[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      check(term_name(i, j), expected.coefficient(i, j), actual.coefficient(i, j));
  return out;
}

double max_coefficient_difference(const ExponentSpec& a, const ExponentSpec& b) {
  double worst = 0.0;
  for (const auto& m : compare(a, b, -1.0)) worst = std::max(worst, std::abs(m.expected - m.actual));
  return worst;
}

}  // namespace fockweyl::entangled
