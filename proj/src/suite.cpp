#include "fockweyl/suite.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fockweyl/entangled.hpp"
#include "fockweyl/mass_gaussian.hpp"
#include "fockweyl/text.hpp"
#include "fockweyl/validation.hpp"
#include "fockweyl/weyl.hpp"

namespace fockweyl::suite {

namespace {

using report::CheckResult;
using report::join;
namespace ent = entangled;
namespace val = validation;

constexpr double kPi = std::numbers::pi;

struct Schedules {
  int weyl_cutoff;
  int quad_cutoff;
  int quad_points;
  int gauss_points;
  std::vector<int> bipartite_cutoffs;
  std::vector<int> multipartite_cutoffs;
  int completeness_cutoff;
  int completeness_refined_cutoff;
  int completeness_points;
  std::vector<int> completeness_grid_schedule;
  int tripartite_completeness_cutoff;
  int tripartite_completeness_points;
  std::vector<int> probe_cutoffs;
};

Schedules schedules(Level level) {
  if (level == Level::full) {
    return {16, 14, 201, 801, {16, 24, 32}, {12, 18, 24}, 12, 16, 121, {61, 121, 241}, 6, 41,
            {8, 12, 16}};
  }
  return {10, 10, 101, 401, {8, 12, 16}, {8, 12, 16}, 8, 12, 61, {31, 61, 121}, 4, 25, {8, 12, 16}};
}

int weyl_margin(int degree) { return std::max(2, (degree + 1) / 2); }

CheckResult weyl_symmetrization(const Schedules& s) {
  const BasisSpec basis(1, s.weyl_cutoff);
  double worst = 0.0;
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; m + n <= 6; ++n) {
      worst = std::max(worst, interior_max_abs_difference(weyl::weyl_order_monomial(basis, m, n),
                                                          val::full_symmetrization(basis, m, n),
                                                          weyl_margin(m + n)));
    }
  }
  return {"weyl_symmetrization", "weyl", s.weyl_cutoff, -1, worst, worst <= 1e-10,
          {{"degree_max", "6"}}};
}

double quadrature_error(const BasisSpec& basis, const weyl::ClassicalMonomial& mono, double radius,
                        int points) {
  const auto quad = weyl::quantize_via_wigner_quadrature(basis, mono, {radius, points});
  const auto exact = weyl::weyl_order_monomial(basis, mono.m, mono.n);
  double worst = 0.0;
  for (Eigen::Index r = 0; r <= 4; ++r)
    for (Eigen::Index c = 0; c <= 4; ++c)
      worst = std::max(worst, std::abs(quad.entries()(r, c) - exact.entries()(r, c)));
  return worst;
}

std::vector<CheckResult> weyl_quadrature(const Schedules& s) {
  const BasisSpec basis(1, s.quad_cutoff);
  const int g = s.quad_points;
  std::vector<CheckResult> out;
  const std::pair<int, int> monomials[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}};
  for (auto [m, n] : monomials) {
    const weyl::ClassicalMonomial mono{m, n, 1.0};
    const double e1 = quadrature_error(basis, mono, 7.0, g);
    const double e2 = quadrature_error(basis, mono, 7.0, 2 * g + 1);
    std::vector<double> coarse;
    for (int pts : {5, 11, 23}) coarse.push_back(quadrature_error(basis, mono, 7.0, pts));
    std::vector<double> radii;
    for (double r : {3.0, 5.0, 7.0}) radii.push_back(quadrature_error(basis, mono, r, g));
    const bool pass = e1 <= 1e-3 && val::decreasing_within_noise({e1, e2}) &&
                      val::decreasing_within_noise(coarse) && val::decreasing_within_noise(radii);
    out.push_back({"weyl_quadrature", "q^" + std::to_string(m) + "p^" + std::to_string(n),
                   s.quad_cutoff, 4, e1, pass,
                   {{"points", std::to_string(g) + "," + std::to_string(2 * g + 1)},
                    {"errors", join(std::vector<double>{e1, e2})},
                    {"coarse_points", "5,11,23"},
                    {"coarse_errors", join(coarse)},
                    {"radii", "3,5,7"},
                    {"radius_errors", join(radii)}}});
  }
  return out;
}

CheckResult wigner_values() {
  const BasisSpec b8(1, 8);
  const double w0 = weyl::wigner_function(StateVector::vacuum(b8), {0.0, 0.0});
  const double w1 = weyl::wigner_function(StateVector::basis_state(b8, {1}), {0.0, 0.0});
  const double value_err = std::max(std::abs(w0 - 1.0 / kPi), std::abs(w1 + 1.0 / kPi));
  const BasisSpec b20(1, 20);
  double herm = 0.0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const auto d = weyl::wigner_operator(b20, {-5.0 + i, -5.0 + j});
      herm = std::max(herm, max_abs_difference(d, d.adjoint()));
    }
  }
  return {"wigner_values", "weyl", 8, -1, value_err, value_err <= 1e-10 && herm <= 1e-13,
          {{"hermiticity", text::shortest(herm)}}};
}

CheckResult bmatrix_closed_forms() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> log_mass(std::log(0.1), std::log(10.0));
  double det_rel = 0.0;
  double inv_err = 0.0;
  double ident_err = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> masses(static_cast<std::size_t>(size(rng)));
    for (double& m : masses) m = std::exp(log_mass(rng));
    const mass::MassPartition p(masses);
    const auto b = mass::b_matrix(p);
    const double lu_det = mass::lu_determinant(b);
    det_rel = std::max(det_rel, std::abs(mass::b_det_closed(p) - lu_det) / std::abs(lu_det));
    const auto inv = mass::b_inverse_closed(p);
    inv_err = std::max(inv_err, (inv - mass::lu_inverse(b)).cwiseAbs().maxCoeff());
    ident_err = std::max(
        ident_err, (b * inv - RealMatrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff());
  }
  return {"bmatrix_closed_forms", "mass", 0, -1, det_rel,
          det_rel <= 1e-10 && inv_err <= 1e-10 && ident_err <= 1e-12,
          {{"samples", "50"},
           {"inverse_error", text::shortest(inv_err)},
           {"identity_error", text::shortest(ident_err)}}};
}

CheckResult gaussian_integral(const Schedules& s) {
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> eig(0.5, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> radius(0.0, 2.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double th = angle(rng);
    RealMatrix rot(2, 2);
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    RealMatrix d = RealMatrix::Zero(2, 2);
    d(0, 0) = eig(rng);
    d(1, 1) = eig(rng);
    RealMatrix b = rot * d * rot.transpose();
    b = 0.5 * (b + b.transpose()).eval();
    const double r = radius(rng);
    const double phi = angle(rng);
    RealVector v(2);
    v << r * std::cos(phi), r * std::sin(phi);
    const mass::GaussianIntegralSpec spec(b, v);
    const double closed = mass::gaussian_integral_closed(spec);
    const auto quad = mass::gaussian_integral_quadrature(spec, 8.0, s.gauss_points);
    worst = std::max(worst, std::abs(quad.value - closed) / closed);
  }

  RealMatrix one(1, 1);
  one << 1.0;
  const auto sqrt_pi = mass::gaussian_integral_quadrature({one, RealVector::Zero(1)}, 8.0, 4001);
  const double e1 = std::abs(sqrt_pi.value - std::sqrt(kPi));
  const mass::GaussianIntegralSpec ex2(RealMatrix::Identity(2, 2), RealVector::Unit(2, 0) * 2.0);
  const double e2 = std::abs(mass::gaussian_integral_closed(ex2) - kPi * std::exp(1.0)) / (kPi * std::exp(1.0));
  RealMatrix b3(2, 2);
  b3 << 2.0, 1.0, 1.0, 2.0;
  const mass::GaussianIntegralSpec ex3(b3, RealVector::Unit(2, 0));
  const double target3 = std::sqrt(kPi * kPi / 3.0) * std::exp(1.0 / 6.0);
  const double e3 = std::abs(mass::gaussian_integral_quadrature(ex3, 8.0, s.gauss_points).value - target3) / target3;
  return {"gaussian_integral", "mass", 0, -1, worst,
          worst <= 1e-6 && e1 <= 1e-8 && e2 <= 1e-8 && e3 <= 1e-6,
          {{"samples", "20"},
           {"points", std::to_string(s.gauss_points)},
           {"example_errors", join(std::vector<double>{e1, e2, e3})}}};
}

std::string mass_label(const std::vector<double>& masses) {
  std::string s = "masses=";
  for (std::size_t i = 0; i < masses.size(); ++i) s += (i ? "," : "") + text::shortest(masses[i]);
  return s;
}

void add_residual_tables(std::vector<CheckResult>& out, const std::string& family,
                         const std::vector<val::ConvergenceTable>& tables) {
  for (const auto& t : tables) {
    const double terminal = t.metrics.back();
    out.push_back({"eigen_residual", t.check, t.schedule.back(), t.schedule.back() / 2, terminal,
                   t.decreasing && terminal <= 1e-3,
                   {{"constructor", family},
                    {"schedule", join(t.schedule)},
                    {"residuals", join(t.metrics)},
                    {"decreasing", t.decreasing ? "true" : "false"},
                    {"terminal_bound", "0.001"}}});
  }
}

std::vector<CheckResult> eigen_residuals(const Schedules& s) {
  std::vector<CheckResult> out;
  const ent::EtaParam eta{{0.5, 0.3}};
  add_residual_tables(out, "eta",
                      val::residual_study("eta", [&] { return ent::eta_exponent(eta); },
                                          ent::eta_equations(eta), 2, s.bipartite_cutoffs));
  for (const auto& masses : {std::vector<double>{1, 1}, std::vector<double>{1, 2}}) {
    const ent::BipartiteEprParam p{0.7, -0.4, mass::MassPartition(masses)};
    add_residual_tables(out, "xi",
                        val::residual_study("xi " + mass_label(masses), [&] { return ent::xi_exponent(p); },
                                            ent::bipartite_equations(p), 2, s.bipartite_cutoffs));
  }
  for (const auto& masses : {std::vector<double>{1, 1, 1}, std::vector<double>{1, 1, 2}}) {
    const ent::MultiEprParam p{0.5, {0.3, -0.6}, mass::MassPartition(masses)};
    add_residual_tables(
        out, "tripartite",
        val::residual_study("tripartite " + mass_label(masses), [&] { return ent::tripartite_exponent(p); },
                            ent::multipartite_equations(p), 3, s.multipartite_cutoffs));
  }
  const ent::MultiEprParam p4{-0.4, {0.5, -0.3, 0.8}, mass::MassPartition({1, 2, 3, 4})};
  add_residual_tables(
      out, "multipartite",
      val::residual_study("multipartite " + mass_label({1, 2, 3, 4}),
                          [&] { return ent::multipartite_exponent(p4); },
                          ent::multipartite_equations(p4), 4, s.multipartite_cutoffs));
  return out;
}

std::string mismatch_terms(const std::vector<ent::CoefficientMismatch>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + m[i].term;
  return s.empty() ? "none" : s;
}

std::vector<CheckResult> reductions() {
  std::vector<CheckResult> out;
  {
    const mass::MassPartition p({1, 2});
    const double d = ent::max_coefficient_difference(
        ent::multipartite_exponent({0.7, {-0.4}, p}), ent::xi_exponent({0.7, -0.4, p}));
    out.push_back({"reduction", "multipartite2=xi", 0, -1, d, d <= 1e-12, {{"masses", "1,2"}}});
  }
  {
    const mass::MassPartition p({1, 1, 2});
    const ent::MultiEprParam param{0.5, {0.3, -0.6}, p};
    const auto general = ent::multipartite_exponent(param);
    const double d = ent::max_coefficient_difference(general, ent::tripartite_exponent(param));
    out.push_back({"reduction", "multipartite3=tripartite", 0, -1, d, d <= 1e-12,
                   {{"masses", "1,1,2"},
                    {"display_mismatches",
                     mismatch_terms(ent::compare(general, ent::display::tripartite(param), 1e-12))}}});
  }
  {
    const cplx xi{0.6, -0.35};
    const auto built = ent::xi_exponent(ent::xi_param_equal_mass(xi));
    const auto shown = ent::display::xi_equal_mass(xi);
    const auto diff = ent::compare(shown, built, 1e-12, false);
    const double worst = diff.empty() ? 0.0 : ent::max_coefficient_difference(shown, built);
    const auto literal = ent::compare(
        shown, ent::xi_exponent(ent::xi_param_literal(xi, mass::MassPartition({1, 1}))), 1e-12, false);
    out.push_back({"reduction", "xi_equal_mass_display", 0, -1, worst, diff.empty(),
                   {{"constant_offset", text::format_complex(built.constant() - shown.constant())},
                    {"literal_substitution_mismatches", mismatch_terms(literal)}}});
  }
  return out;
}

std::vector<CheckResult> completeness(const Schedules& s) {
  std::vector<CheckResult> out;
  const auto run_family = [&](const std::function<val::ParameterFamily(int)>& make,
                              const std::string& name) {
    const auto base = val::completeness_deviation(make(s.completeness_cutoff),
                                                  {6.0, s.completeness_points}, 2);
    const int refined_points = (s.completeness_points - 1) * 4 / 3 + 1;
    const auto refined = val::completeness_deviation(make(s.completeness_refined_cutoff),
                                                     {8.0, refined_points}, 2);
    const auto grid = val::convergence_study(name + ":grid", s.completeness_grid_schedule, [&](int g) {
      return val::completeness_deviation(make(s.completeness_cutoff), {6.0, g}, 2).deviation;
    });
    out.push_back({"completeness", name, s.completeness_cutoff, 2, base.deviation,
                   base.deviation <= 0.05 && refined.deviation < base.deviation && grid.decreasing,
                   {{"radius", "6"},
                    {"points", std::to_string(s.completeness_points)},
                    {"refined_cutoff", std::to_string(s.completeness_refined_cutoff)},
                    {"refined_radius", "8"},
                    {"refined_points", std::to_string(refined_points)},
                    {"refined_deviation", text::shortest(refined.deviation)},
                    {"grid_schedule", join(grid.schedule)},
                    {"grid_deviations", join(grid.metrics)}}});
  };
  run_family([](int c) { return val::eta_family(c); }, "eta");
  run_family([](int c) { return val::bipartite_family(mass::MassPartition({1, 2}), c); },
             "xi masses=1,2");

  const auto tri = val::completeness_deviation(
      val::tripartite_family(mass::MassPartition({1, 1, 2}), s.tripartite_completeness_cutoff),
      {6.0, s.tripartite_completeness_points}, 2);
  out.push_back({"completeness", "tripartite masses=1,1,2", s.tripartite_completeness_cutoff, 2,
                 tri.deviation, tri.deviation <= 0.05,
                 {{"radius", "6"}, {"points", std::to_string(s.tripartite_completeness_points)}}});
  return out;
}

std::vector<CheckResult> delta_probes(const Schedules& s) {
  std::vector<CheckResult> out;
  const double w = 0.5;
  const auto probe = [&](const std::function<val::ParameterFamily(int)>& make, const std::string& name,
                         std::vector<double> center) {
    std::vector<double> measured;
    for (int c : s.probe_cutoffs) {
      measured.push_back(val::smeared_overlap_probe(make(c), center, center, w).real());
    }
    const double predicted = val::delta_model_overlap(make(s.probe_cutoffs.back()), center, center, w);
    const double tol = std::abs(measured.back() - measured[measured.size() - 2]);
    const double err = std::abs(measured.back() - predicted);
    out.push_back({"delta_probe", name, s.probe_cutoffs.back(), -1, err, err <= tol,
                   {{"width", text::shortest(w)},
                    {"schedule", join(s.probe_cutoffs)},
                    {"overlaps", join(measured)},
                    {"predicted", text::shortest(predicted)},
                    {"tolerance", text::shortest(tol)}}});
  };
  probe([](int c) { return val::eta_family(c); }, "eta", {0.3, -0.2});
  probe([](int c) { return val::bipartite_family(mass::MassPartition({1, 1}), c); }, "xi masses=1,1",
        {0.2, 0.1});

  const auto eta = val::eta_family(s.probe_cutoffs.back());
  const std::vector<double> origin{0.0, 0.0};
  const std::vector<double> left{-5.0 * w, 0.0};
  const std::vector<double> right{5.0 * w, 0.0};
  const double same = std::abs(val::smeared_overlap_probe(eta, origin, origin, w));
  const double apart = std::abs(val::smeared_overlap_probe(eta, left, right, w));
  out.push_back({"delta_probe_separated", "eta", s.probe_cutoffs.back(), -1, apart / same,
                 apart <= 1e-6 * same, {{"separation_widths", "10"}}});

  const auto unequal = val::bipartite_family(mass::MassPartition({1, 3}), s.probe_cutoffs.back());
  const std::vector<double> c{0.2, 0.1};
  const cplx measured = val::smeared_overlap_probe(unequal, c, c, w);
  const double factor = measured.real() / val::delta_model_overlap(unequal, c, c, w);
  out.push_back({"delta_probe_factor", "xi masses=1,3", s.probe_cutoffs.back(), -1, factor,
                 std::isfinite(factor), {{"asserted", "none"}}});
  return out;
}

CheckResult commutators() {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> log_mass(std::log(0.1), std::log(10.0));
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 3;
    std::vector<double> masses(static_cast<std::size_t>(n));
    for (double& m : masses) m = std::exp(log_mass(rng));
    const mass::MassPartition p(masses);
    const BasisSpec basis(n, 6);
    const auto qcm = ent::com_form(p);
    for (int k = 1; k < n; ++k) {
      worst = std::max(worst, val::interior_commutator_deviation(qcm, ent::rel_momentum_form(p, k),
                                                                 basis, 0.0));
    }
  }
  double canonical = 0.0;
  const BasisSpec basis(3, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      RealVector q = RealVector::Zero(3);
      RealVector pw = RealVector::Zero(3);
      q[i] = 1.0;
      pw[j] = 1.0;
      canonical = std::max(
          canonical, val::interior_commutator_deviation(
                         LadderForm::from_quadratures(q, RealVector::Zero(3)),
                         LadderForm::from_quadratures(RealVector::Zero(3), pw), basis,
                         i == j ? cplx{0.0, 1.0} : cplx{0.0, 0.0}));
    }
  }
  return {"commutators", "com_rel", 6, -1, worst, worst <= 1e-12 && canonical <= 1e-12,
          {{"samples", "10"}, {"canonical_error", text::shortest(canonical)}}};
}

template <class T>
void append(std::vector<T>& out, std::vector<T> more) {
  for (auto& x : more) out.push_back(std::move(x));
}

}  // namespace

Level parse_level(std::string_view name) {
  if (name == "quick") return Level::quick;
  if (name == "full") return Level::full;
  throw std::invalid_argument("level must be quick or full");
}

std::vector<CheckResult> run_suite(Level level) {
  const auto s = schedules(level);
  std::vector<CheckResult> out;
  out.push_back(weyl_symmetrization(s));
  append(out, weyl_quadrature(s));
  out.push_back(wigner_values());
  out.push_back(bmatrix_closed_forms());
  out.push_back(gaussian_integral(s));
  append(out, eigen_residuals(s));
  append(out, reductions());
  append(out, completeness(s));
  append(out, delta_probes(s));
  out.push_back(commutators());
  return out;
}

}  // namespace fockweyl::suite
