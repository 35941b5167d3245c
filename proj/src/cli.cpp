#include "fockweyl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fockweyl/entangled.hpp"
#include "fockweyl/mass_gaussian.hpp"
#include "fockweyl/report.hpp"
#include "fockweyl/state_io.hpp"
#include "fockweyl/suite.hpp"
#include "fockweyl/text.hpp"
#include "fockweyl/validation.hpp"
#include "fockweyl/weyl.hpp"

namespace fockweyl::cli {

namespace {

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FamilyFlags {
  std::string family;
  std::string eta = "0";
  std::string masses;
  double q_cm = 0.0;
  double q = 0.0;
  std::string rho = "0";
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f, bool required) {
  auto* opt = cmd->add_option("--family", f.family, "eta | xi | tripartite | multipartite")
                  ->check(CLI::IsMember({"eta", "xi", "tripartite", "multipartite"}));
  if (required) opt->required();
  cmd->add_option("--eta", f.eta, "complex eta, e.g. 0.5+0.3i");
  cmd->add_option("--masses", f.masses, "comma-separated masses");
  cmd->add_option("--q-cm", f.q_cm, "center-of-mass eigenvalue (xi)");
  cmd->add_option("--q", f.q, "center-of-mass eigenvalue (tripartite, multipartite)");
  cmd->add_option("--rho", f.rho, "relative-momentum eigenvalue(s), comma-separated");
}

std::vector<double> masses_or(const FamilyFlags& f, std::vector<double> fallback) {
  return f.masses.empty() ? fallback : text::parse_double_list(f.masses);
}

io::FamilyParams family_params(const FamilyFlags& f) {
  if (f.family == "eta") return entangled::EtaParam{text::parse_complex(f.eta)};
  if (f.family == "xi") {
    return entangled::BipartiteEprParam{f.q_cm, text::parse_double(f.rho),
                                        mass::MassPartition(masses_or(f, {1, 1}))};
  }
  const auto masses = masses_or(f, f.family == "tripartite" ? std::vector<double>{1, 1, 1}
                                                             : std::vector<double>{});
  if (masses.empty()) throw usage_error("--masses is required for the multipartite family");
  if (f.family == "tripartite" && masses.size() != 3) {
    throw usage_error("the tripartite family needs three masses");
  }
  return entangled::MultiEprParam{f.q, text::parse_double_list(f.rho), mass::MassPartition(masses)};
}

int n_modes(const io::FamilyParams& p) {
  if (std::holds_alternative<entangled::EtaParam>(p)) return 2;
  if (std::holds_alternative<entangled::BipartiteEprParam>(p)) return 2;
  return std::get<entangled::MultiEprParam>(p).partition.size();
}

std::vector<entangled::EigenEquation> equations(const io::FamilyParams& p) {
  if (const auto* e = std::get_if<entangled::EtaParam>(&p)) return entangled::eta_equations(*e);
  if (const auto* b = std::get_if<entangled::BipartiteEprParam>(&p)) {
    return entangled::bipartite_equations(*b);
  }
  return entangled::multipartite_equations(std::get<entangled::MultiEprParam>(p));
}

void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty() || path == "-") {
    writer(out);
  } else {
    io::write_atomically(path, writer);
  }
}

StateVector load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return io::read_state(in);
}

void print_matrix(std::ostream& out, const RealMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << text::shortest(m(r, c));
    out << '\n';
  }
}

void print_matrix(std::ostream& out, const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << text::format_complex(m(r, c));
    out << '\n';
  }
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto v = text::parse_double_list(s);
  if (v.size() != 2) throw usage_error("ranges are written lo,hi");
  return {v[0], v[1]};
}

weyl::ClassicalPolynomial parse_polynomial(const std::string& s) {
  std::vector<weyl::ClassicalMonomial> terms;
  for (auto term : text::split(s, ';')) {
    const auto parts = text::split(term, ',');
    if (parts.size() != 3) throw usage_error("polynomial terms are written m,n,coeff");
    terms.push_back({text::parse_int(parts[0]), text::parse_int(parts[1]),
                     text::parse_complex(parts[2])});
  }
  return weyl::ClassicalPolynomial(std::move(terms));
}

RealMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
  RealMatrix m(static_cast<Eigen::Index>(rows.size()),
               rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw usage_error("matrix rows differ in length");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated Fock-space numerics for continuous-variable entangled states", "fockweyl"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  // build-state
  FamilyFlags build_f;
  int build_cutoff = 16;
  std::string build_out;
  std::string build_params_out;
  auto* build = app.add_subcommand("build-state", "build an entangled state and write its amplitudes");
  add_family_flags(build, build_f, true);
  build->add_option("--cutoff", build_cutoff, "per-mode occupation cutoff")->check(CLI::PositiveNumber);
  build->add_option("--out", build_out, "state file (default: standard output)");
  build->add_option("--params-out", build_params_out, "also write the parameters as key=value");

  // residual
  FamilyFlags res_f;
  int res_cutoff = 16;
  int res_sector = -1;
  double res_tol = 1e-3;
  std::string res_state;
  std::string res_out;
  auto* residual = app.add_subcommand("residual", "windowed eigen-residuals of a family's equations");
  add_family_flags(residual, res_f, true);
  residual->add_option("--cutoff", res_cutoff, "cutoff used when no --state is given")
      ->check(CLI::PositiveNumber);
  residual->add_option("--state", res_state, "read the state instead of building it");
  residual->add_option("--sector-bound", res_sector, "window on total occupation (default cutoff/2)");
  residual->add_option("--tol", res_tol, "pass threshold");
  residual->add_option("--out", res_out, "report file (default: standard output)");

  // wigner
  std::string wig_state;
  std::string wig_q = "-4,4";
  std::string wig_p = "-4,4";
  int wig_points = 41;
  std::string wig_out;
  auto* wigner = app.add_subcommand("wigner", "Wigner function of a single-mode state on a grid");
  wigner->add_option("--state", wig_state, "single-mode state file")->required();
  wigner->add_option("--q-range", wig_q, "q_min,q_max");
  wigner->add_option("--p-range", wig_p, "p_min,p_max");
  wigner->add_option("--points", wig_points, "grid points per axis");
  wigner->add_option("--out", wig_out, "grid file (default: standard output)");

  // weyl-quantize
  std::string wq_poly;
  int wq_cutoff = 8;
  bool wq_quadrature = false;
  double wq_radius = 7.0;
  int wq_points = 201;
  auto* wq = app.add_subcommand("weyl-quantize", "Weyl-ordered matrix of a polynomial in q and p");
  wq->add_option("--poly", wq_poly, "terms m,n,coeff separated by ';' (q^m p^n)")->required();
  wq->add_option("--cutoff", wq_cutoff, "single-mode cutoff")->check(CLI::PositiveNumber);
  wq->add_flag("--quadrature", wq_quadrature, "integrate against the Wigner operator instead");
  wq->add_option("--radius", wq_radius, "quadrature half-width");
  wq->add_option("--points", wq_points, "quadrature points per axis (odd)");

  // gauss-integral
  std::string gi_b;
  std::string gi_v;
  double gi_radius = 8.0;
  int gi_points = 0;
  auto* gi = app.add_subcommand("gauss-integral", "closed-form n-dimensional Gaussian integral");
  gi->add_option("--b", gi_b, "matrix rows separated by ';', entries by ','")->required();
  gi->add_option("--v", gi_v, "linear term, comma-separated")->required();
  gi->add_option("--radius", gi_radius, "quadrature half-width");
  gi->add_option("--points", gi_points, "quadrature points per axis (0 skips the quadrature)");

  // bmatrix
  std::string bm_masses;
  auto* bm = app.add_subcommand("bmatrix", "B matrix, determinant and inverse for a mass vector");
  bm->add_option("--masses", bm_masses, "comma-separated masses")->required();

  // completeness
  std::string co_family;
  std::string co_masses;
  int co_cutoff = 12;
  double co_radius = 6.0;
  int co_points = 121;
  int co_sector = 2;
  double co_tol = 0.05;
  std::string co_out;
  auto* co = app.add_subcommand("completeness", "resolution of the identity by quadrature");
  co->add_option("--family", co_family, "eta | xi | tripartite")
      ->required()
      ->check(CLI::IsMember({"eta", "xi", "tripartite"}));
  co->add_option("--masses", co_masses, "comma-separated masses");
  co->add_option("--cutoff", co_cutoff, "per-mode cutoff")->check(CLI::PositiveNumber);
  co->add_option("--radius", co_radius, "radius in scaled units");
  co->add_option("--points", co_points, "points per axis");
  co->add_option("--sector-bound", co_sector, "window on total occupation");
  co->add_option("--tol", co_tol, "pass threshold");
  co->add_option("--out", co_out, "report file (default: standard output)");

  // verify-all
  std::string va_level = "quick";
  std::string va_out;
  auto* va = app.add_subcommand("verify-all", "run the calibrated verification suite");
  va->add_option("--level", va_level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  va->add_option("--out", va_out, "report file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return 0;
    err << app.help();
    return 2;
  }

  try {
    if (build->parsed()) {
      const auto params = family_params(build_f);
      const BasisSpec basis(n_modes(params), build_cutoff);
      const auto state = apply_exponent_to_vacuum(basis, io::exponent_of(params));
      emit(build_out, out, [&](std::ostream& o) { io::write_state(o, state); });
      if (!build_params_out.empty()) {
        io::write_atomically(build_params_out, [&](std::ostream& o) { io::write_params(o, params); });
      }
      return 0;
    }

    if (residual->parsed()) {
      const auto params = family_params(res_f);
      const auto state = res_state.empty()
                             ? apply_exponent_to_vacuum(BasisSpec(n_modes(params), res_cutoff),
                                                        io::exponent_of(params))
                             : load_state(res_state);
      if (state.basis().n_modes() != n_modes(params)) {
        throw usage_error("state and family disagree on the number of modes");
      }
      const int bound = res_sector >= 0 ? res_sector : state.basis().cutoff() / 2;
      std::vector<report::CheckResult> results;
      for (const auto& eq : equations(params)) {
        const auto r = validation::eigen_residual(eq.op, state, eq.eigenvalue, bound, eq.name);
        results.push_back({"eigen_residual", res_f.family + ":" + eq.name, r.cutoff, bound,
                           r.residual, r.residual <= res_tol,
                           {{"eigenvalue", text::format_complex(eq.eigenvalue)},
                            {"tail_mass", text::shortest(r.tail_mass)}}});
      }
      emit(res_out, out, [&](std::ostream& o) { report::write_report(o, results); });
      return report::all_pass(results) ? 0 : 1;
    }

    if (wigner->parsed()) {
      const auto state = load_state(wig_state);
      const auto [q0, q1] = parse_range(wig_q);
      const auto [p0, p1] = parse_range(wig_p);
      emit(wig_out, out,
           [&](std::ostream& o) { weyl::write_wigner_grid(o, state, q0, q1, p0, p1, wig_points); });
      return 0;
    }

    if (wq->parsed()) {
      const BasisSpec basis(1, wq_cutoff);
      const auto poly = parse_polynomial(wq_poly);
      auto result = OperatorMatrix::zero(basis);
      if (wq_quadrature) {
        for (const auto& t : poly.terms()) {
          result = result + weyl::quantize_via_wigner_quadrature(basis, t, {wq_radius, wq_points});
        }
      } else {
        result = weyl::weyl_quantize(basis, poly);
      }
      print_matrix(out, result.entries());
      return 0;
    }

    if (gi->parsed()) {
      const auto b = to_matrix(text::parse_matrix(gi_b));
      const auto vlist = text::parse_double_list(gi_v);
      const mass::GaussianIntegralSpec spec(
          b, Eigen::Map<const RealVector>(vlist.data(), static_cast<Eigen::Index>(vlist.size())));
      out << "closed=" << text::shortest(mass::gaussian_integral_closed(spec)) << '\n';
      if (gi_points > 0) {
        const auto q = mass::gaussian_integral_quadrature(spec, gi_radius, gi_points);
        out << "quadrature=" << text::shortest(q.value) << '\n'
            << "boundary_ratio=" << text::shortest(q.boundary_ratio) << '\n'
            << "converged=" << (q.converged ? "true" : "false") << '\n';
        return q.converged ? 0 : 1;
      }
      return 0;
    }

    if (bm->parsed()) {
      const mass::MassPartition p(text::parse_double_list(bm_masses));
      const auto b = mass::b_matrix(p);
      out << "mu=" << report::join(p.mu()) << '\n' << "lambda=" << text::shortest(p.lambda()) << '\n';
      out << "B=\n";
      print_matrix(out, b);
      out << "det=" << text::shortest(mass::b_det_closed(p)) << '\n'
          << "det_lu=" << text::shortest(mass::lu_determinant(b)) << '\n';
      out << "inverse=\n";
      print_matrix(out, mass::b_inverse_closed(p));
      return 0;
    }

    if (co->parsed()) {
      validation::ParameterFamily family = [&] {
        if (co_family == "eta") return validation::eta_family(co_cutoff);
        if (co_family == "xi") {
          return validation::bipartite_family(
              mass::MassPartition(co_masses.empty() ? std::vector<double>{1, 1}
                                                    : text::parse_double_list(co_masses)),
              co_cutoff);
        }
        return validation::tripartite_family(
            mass::MassPartition(co_masses.empty() ? std::vector<double>{1, 1, 1}
                                                  : text::parse_double_list(co_masses)),
            co_cutoff);
      }();
      const auto rep = validation::completeness_deviation(family, {co_radius, co_points}, co_sector);
      const std::vector<report::CheckResult> results{
          {"completeness", rep.family, rep.cutoff, rep.sector_bound, rep.deviation,
           rep.deviation <= co_tol,
           {{"radius", text::shortest(co_radius)}, {"points", std::to_string(co_points)}}}};
      emit(co_out, out, [&](std::ostream& o) { report::write_report(o, results); });
      return results.front().pass ? 0 : 1;
    }

    if (va->parsed()) {
      const auto results = suite::run_suite(suite::parse_level(va_level));
      emit(va_out, out, [&](std::ostream& o) { report::write_report(o, results); });
      return report::all_pass(results) ? 0 : 1;
    }
  } catch (const usage_error& e) {
    err << "fockweyl: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const io::format_error& e) {
    err << "fockweyl: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "fockweyl: invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "fockweyl: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fockweyl::cli
