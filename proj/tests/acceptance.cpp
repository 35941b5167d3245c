// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Residual calibration tables go to calibration.txt in the working directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/LU>

#include "fockweyl/entangled.hpp"
#include "fockweyl/mass_gaussian.hpp"
#include "fockweyl/report.hpp"
#include "fockweyl/text.hpp"
#include "fockweyl/validation.hpp"
#include "fockweyl/weyl.hpp"
#include "oracles.hpp"

using namespace fockweyl;
namespace ent = fockweyl::entangled;
namespace val = fockweyl::validation;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass;
  std::string summary;
};

using Clock = std::chrono::steady_clock;

bool criterion(int id, const std::string& name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = budget_s <= 0 || secs <= budget_s;
  const bool pass = v.pass && in_time;
  std::printf("%s criterion %d %s: %s; %.1fs%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              v.summary.c_str(), secs, in_time ? "" : " (over budget)");
  std::fflush(stdout);
  return pass;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1
Verdict weyl_ordering() {
  const int cutoff = 16;
  const BasisSpec basis(1, cutoff);
  double worst = 0.0;
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; m + n <= 6; ++n) {
      const OperatorMatrix brute(basis, oracle::symmetrized(cutoff, m, n));
      const int margin = std::max(2, (m + n + 1) / 2);
      worst = std::max(worst, interior_max_abs_difference(weyl::weyl_order_monomial(basis, m, n), brute, margin));
    }
  }
  return {worst <= 1e-10, "max-abs " + fmt(worst)};
}

double quad_error(const BasisSpec& basis, int m, int n, int points) {
  const auto quad = weyl::quantize_via_wigner_quadrature(basis, {m, n, 1.0}, {7.0, points});
  const auto exact = weyl::weyl_order_monomial(basis, m, n);
  return (quad.entries() - exact.entries()).topLeftCorner(5, 5).cwiseAbs().maxCoeff();
}

// 2
Verdict weyl_quadrature() {
  const BasisSpec basis(1, 14);
  bool pass = true;
  std::string s;
  const std::pair<int, int> monomials[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}};
  for (auto [m, n] : monomials) {
    const double e1 = quad_error(basis, m, n, 201);
    const double e2 = quad_error(basis, m, n, 403);
    std::vector<double> coarse;
    for (int g : {5, 11, 23}) coarse.push_back(quad_error(basis, m, n, g));
    pass = pass && e1 <= 1e-3 && val::decreasing_within_noise({e1, e2}) && val::decreasing_within_noise(coarse);
    s += (s.empty() ? "" : ", ") + ("q^" + std::to_string(m) + "p^" + std::to_string(n)) + " " + fmt(e1) + "->" +
         fmt(e2) + " (coarse " + fmt(coarse[0]) + "->" + fmt(coarse[2]) + ")";
  }
  return {pass, s};
}

// 3
Verdict wigner_values() {
  const BasisSpec b(1, 8);
  const double w0 = weyl::wigner_function(StateVector::vacuum(b), {0.0, 0.0});
  const double w1 = weyl::wigner_function(StateVector::basis_state(b, {1}), {0.0, 0.0});
  const double err = std::max(std::abs(w0 - 1 / kPi), std::abs(w1 + 1 / kPi));
  double herm = 0.0;
  const BasisSpec big(1, 20);
  for (double q = -5.0; q <= 5.0; q += 0.5)
    for (double p = -5.0; p <= 5.0; p += 0.5) {
      const auto d = weyl::wigner_operator(big, {q, p});
      herm = std::max(herm, max_abs_difference(d, d.adjoint()));
    }
  return {err <= 1e-10 && herm <= 1e-13, "value error " + fmt(err) + ", hermiticity " + fmt(herm)};
}

// 4
Verdict bmatrix() {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> log_mass(std::log(0.1), std::log(10.0));
  double det_rel = 0, inv_err = 0, ident = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> masses(static_cast<std::size_t>(size(rng)));
    for (double& m : masses) m = std::exp(log_mass(rng));
    const MassPartition p(masses);
    const auto b = mass::b_matrix(p);
    const Eigen::FullPivLU<RealMatrix> lu(b);
    det_rel = std::max(det_rel, std::abs(mass::b_det_closed(p) - lu.determinant()) / std::abs(lu.determinant()));
    const auto inv = mass::b_inverse_closed(p);
    inv_err = std::max(inv_err, (inv - lu.inverse()).cwiseAbs().maxCoeff());
    ident = std::max(ident, (b * inv - RealMatrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff());
  }
  return {det_rel <= 1e-10 && inv_err <= 1e-10 && ident <= 1e-12,
          "det rel " + fmt(det_rel) + ", inverse " + fmt(inv_err) + ", B*Binv-I " + fmt(ident)};
}

// 5
Verdict gaussian_integral() {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    RealMatrix a(2, 2);
    a << unit(rng), unit(rng), unit(rng), unit(rng);
    const RealMatrix b = a * a.transpose() + 0.5 * RealMatrix::Identity(2, 2);
    RealVector v(2);
    v << unit(rng), unit(rng);
    const mass::GaussianIntegralSpec spec(b, v);
    const double closed = mass::gaussian_integral_closed(spec);
    const auto q = mass::gaussian_integral_quadrature(spec, 8.0, 801);
    worst = std::max(worst, std::abs(q.value - closed) / closed);
  }
  RealMatrix one(1, 1);
  one << 1.0;
  const double e1 = std::abs(mass::gaussian_integral_closed({one, RealVector::Zero(1)}) - std::sqrt(kPi));
  RealVector v2(2);
  v2 << 2.0, 0.0;
  const double pe = kPi * std::exp(1.0);
  const double e2 = std::abs(mass::gaussian_integral_closed({RealMatrix::Identity(2, 2), v2}) - pe) / pe;
  RealMatrix b3(2, 2);
  b3 << 2, 1, 1, 2;
  RealVector v3(2);
  v3 << 1.0, 0.0;
  const double t3 = std::sqrt(kPi * kPi / 3.0) * std::exp(1.0 / 6.0);
  const double e3 = std::abs(mass::gaussian_integral_quadrature({b3, v3}, 8.0, 801).value - t3) / t3;
  return {worst <= 1e-6 && e1 <= 1e-8 && e2 <= 1e-8 && e3 <= 1e-6,
          "random rel " + fmt(worst) + ", examples " + fmt(e1) + "/" + fmt(e2) + "/" + fmt(e3)};
}

// 6
Verdict eigen_equations() {
  std::ofstream cal("calibration.txt");
  std::vector<report::CheckResult> rows;
  bool pass = true;
  double worst_terminal = 0.0;
  const auto add = [&](const std::vector<val::ConvergenceTable>& tables) {
    for (const auto& t : tables) {
      const double terminal = t.metrics.back();
      const bool ok = t.decreasing && terminal <= 1e-3;
      pass = pass && ok;
      worst_terminal = std::max(worst_terminal, terminal);
      rows.push_back({"eigen_residual", t.check, t.schedule.back(), t.schedule.back() / 2, terminal, ok,
                      {{"schedule", report::join(t.schedule)},
                       {"residuals", report::join(t.metrics)},
                       {"decreasing", t.decreasing ? "true" : "false"},
                       {"terminal_bound", "0.001"}}});
    }
  };
  const std::vector<int> pair_schedule{16, 24, 32};
  const std::vector<int> multi_schedule{12, 18, 24};
  const ent::EtaParam eta{{0.5, 0.3}};
  add(val::residual_study("eta", [&] { return ent::eta_exponent(eta); }, ent::eta_equations(eta), 2, pair_schedule));
  for (const auto& m : {std::vector<double>{1, 1}, std::vector<double>{1, 2}}) {
    const ent::BipartiteEprParam p{0.7, -0.4, MassPartition(m)};
    add(val::residual_study("xi " + report::join(m), [&] { return ent::xi_exponent(p); },
                            ent::bipartite_equations(p), 2, pair_schedule));
  }
  for (const auto& m : {std::vector<double>{1, 1, 1}, std::vector<double>{1, 1, 2}}) {
    const ent::MultiEprParam p{0.5, {0.3, -0.6}, MassPartition(m)};
    add(val::residual_study("tripartite " + report::join(m), [&] { return ent::tripartite_exponent(p); },
                            ent::multipartite_equations(p), 3, multi_schedule));
  }
  const ent::MultiEprParam p4{-0.4, {0.5, -0.3, 0.8}, MassPartition({1, 2, 3, 4})};
  add(val::residual_study("multipartite 1,2,3,4", [&] { return ent::multipartite_exponent(p4); },
                          ent::multipartite_equations(p4), 4, multi_schedule));
  report::write_report(cal, rows);
  return {pass, std::to_string(rows.size()) + " equations, worst terminal residual " + fmt(worst_terminal) +
                    " (tables in calibration.txt)"};
}

// 7
Verdict reductions() {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> mass(0.2, 5.0), par(-1.0, 1.0);
  double d2 = 0.0, d3 = 0.0;
  for (int t = 0; t < 20; ++t) {
    const MassPartition p2({mass(rng), mass(rng)});
    const double q = par(rng), r = par(rng);
    d2 = std::max(d2, ent::max_coefficient_difference(ent::multipartite_exponent({q, {r}, p2}),
                                                      ent::xi_exponent({q, r, p2})));
    const ent::MultiEprParam p3{par(rng), {par(rng), par(rng)}, MassPartition({mass(rng), mass(rng), mass(rng)})};
    d3 = std::max(d3, ent::max_coefficient_difference(ent::multipartite_exponent(p3), ent::tripartite_exponent(p3)));
  }
  const cplx xi{0.6, -0.35};
  const auto built = ent::xi_exponent(ent::xi_param_equal_mass(xi));
  const auto shown = ent::display::xi_equal_mass(xi);
  const bool xi_ok = ent::compare(shown, built, 1e-12, false).empty();
  const cplx offset = built.constant() - shown.constant();
  return {d2 <= 1e-12 && d3 <= 1e-12 && xi_ok,
          "n=2 " + fmt(d2) + ", n=3 " + fmt(d3) + ", xi display " + (xi_ok ? "matches" : "differs") +
              " up to constant " + text::format_complex(offset)};
}

// 8
Verdict completeness() {
  bool pass = true;
  std::string s;
  const auto run = [&](const std::function<val::ParameterFamily(int)>& make, const std::string& name) {
    const double base = val::completeness_deviation(make(12), {6.0, 121}, 2).deviation;
    const double refined = val::completeness_deviation(make(16), {8.0, 161}, 2).deviation;
    std::vector<double> grid;
    for (int g : {61, 121, 241}) grid.push_back(val::completeness_deviation(make(12), {6.0, g}, 2).deviation);
    const bool ok = base <= 0.05 && refined < base && val::decreasing_within_noise(grid);
    pass = pass && ok;
    s += (s.empty() ? "" : "; ") + name + " " + fmt(base) + "->" + fmt(refined) + " (grid " + fmt(grid[0]) + "," +
         fmt(grid[1]) + "," + fmt(grid[2]) + ")";
  };
  run([](int c) { return val::eta_family(c); }, "eta");
  run([](int c) { return val::bipartite_family(MassPartition({1, 2}), c); }, "xi(1,2)");
  return {pass, s};
}

// 9
Verdict delta_probes() {
  const double w = 0.5;
  bool pass = true;
  std::string s;
  const auto probe = [&](const std::function<val::ParameterFamily(int)>& make, const std::string& name,
                         std::vector<double> c) {
    std::vector<double> m;
    for (int cutoff : {8, 12, 16}) m.push_back(val::smeared_overlap_probe(make(cutoff), c, c, w).real());
    const double predicted = val::delta_model_overlap(make(16), c, c, w);
    const double tol = std::abs(m[2] - m[1]);
    const double err = std::abs(m[2] - predicted);
    pass = pass && err <= tol;
    s += (s.empty() ? "" : "; ") + name + " " + fmt(m[2]) + " vs " + fmt(predicted) + " (tol " + fmt(tol) + ")";
  };
  probe([](int c) { return val::eta_family(c); }, "eta", {0.3, -0.2});
  probe([](int c) { return val::bipartite_family(MassPartition({1, 1}), c); }, "xi(1,1)", {0.2, 0.1});
  const auto eta = val::eta_family(16);
  const std::vector<double> o{0.0, 0.0}, l{-5 * w, 0.0}, r{5 * w, 0.0};
  const double ratio = std::abs(val::smeared_overlap_probe(eta, l, r, w)) /
                       std::abs(val::smeared_overlap_probe(eta, o, o, w));
  pass = pass && ratio <= 1e-6;
  const auto unequal = val::bipartite_family(MassPartition({1, 3}), 16);
  const std::vector<double> c{0.2, 0.1};
  const double factor = val::smeared_overlap_probe(unequal, c, c, w).real() / val::delta_model_overlap(unequal, c, c, w);
  return {pass, s + "; separated " + fmt(ratio) + "; unequal-mass factor " + fmt(factor) + " (recorded)"};
}

// 10
Verdict commutators() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> mass(0.1, 10.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 3;
    std::vector<double> masses(static_cast<std::size_t>(n));
    for (double& m : masses) m = mass(rng);
    const MassPartition p(masses);
    const BasisSpec basis(n, 6);
    for (int k = 1; k < n; ++k)
      worst = std::max(worst, val::interior_commutator_deviation(ent::com_form(p), ent::rel_momentum_form(p, k),
                                                                 basis, 0.0));
  }
  // Canonical pairs with dense single-mode oracles on a two-mode product basis.
  const int c = 6;
  const ComplexMatrix id = ComplexMatrix::Identity(c + 1, c + 1);
  const auto kron = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  const ComplexMatrix q[2] = {kron(oracle::q_matrix(c), id), kron(id, oracle::q_matrix(c))};
  const ComplexMatrix pm[2] = {kron(oracle::p_matrix(c), id), kron(id, oracle::p_matrix(c))};
  const BasisSpec basis(2, c);
  double canonical = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const OperatorMatrix comm(basis, q[i] * pm[j] - pm[j] * q[i]);
      const OperatorMatrix expected = (i == j ? cplx{0, 1} : cplx{0, 0}) * OperatorMatrix::identity(basis);
      canonical = std::max(canonical, interior_max_abs_difference(comm, expected, 1));
      RealVector qw = RealVector::Zero(2), pw = RealVector::Zero(2);
      qw[i] = 1;
      pw[j] = 1;
      canonical = std::max(canonical, val::interior_commutator_deviation(
                                          LadderForm::from_quadratures(qw, RealVector::Zero(2)),
                                          LadderForm::from_quadratures(RealVector::Zero(2), pw), basis,
                                          i == j ? cplx{0, 1} : cplx{0, 0}));
    }
  return {worst <= 1e-12 && canonical <= 1e-12, "[Qcm,Pr] " + fmt(worst) + ", [Qi,Pj] " + fmt(canonical)};
}

}  // namespace

int main() {
  bool all = true;
  all &= criterion(1, "weyl ordering", 10, weyl_ordering);
  all &= criterion(2, "weyl quadrature", 300, weyl_quadrature);
  all &= criterion(3, "wigner values", 0, wigner_values);
  all &= criterion(4, "B-matrix closed forms", 5, bmatrix);
  all &= criterion(5, "gaussian integral", 120, gaussian_integral);
  all &= criterion(6, "eigen-equations", 0, eigen_equations);
  all &= criterion(7, "reductions", 0, reductions);
  all &= criterion(8, "completeness", 600, completeness);
  all &= criterion(9, "delta probes", 0, delta_probes);
  all &= criterion(10, "commutators", 0, commutators);
  return all ? 0 : 1;
}
