#include "fockweyl/validation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockweyl/quadrature.hpp"

namespace fockweyl::validation {

namespace {

ResidualReport windowed(const StateVector& state, const StateVector& image, cplx eigenvalue,
                        int sector_bound, std::string op_name) {
  const auto& basis = state.basis();
  if (!(image.basis() == basis)) throw std::invalid_argument("operator and state bases differ");
  if (sector_bound < 0) throw std::invalid_argument("sector bound must be non-negative");
  double res2 = 0.0;
  double win2 = 0.0;
  double all2 = 0.0;
  const auto& psi = state.amplitudes();
  const auto& img = image.amplitudes();
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    const auto k = static_cast<Eigen::Index>(idx);
    const double p2 = std::norm(psi[k]);
    all2 += p2;
    if (basis.total_occupation(idx) > sector_bound) continue;
    win2 += p2;
    res2 += std::norm(img[k] - eigenvalue * psi[k]);
  }
  if (!(win2 > 0.0)) throw std::invalid_argument("state vanishes on the residual window");
  ResidualReport r;
  r.op_name = std::move(op_name);
  r.eigenvalue = eigenvalue;
  r.residual = std::sqrt(res2 / win2);
  r.sector_bound = sector_bound;
  r.cutoff = basis.cutoff();
  r.tail_mass = std::clamp((all2 - win2) / all2, 0.0, 1.0);
  return r;
}

double prod(const std::vector<double>& v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

void require_centers(const ParameterFamily& family, std::span<const double> c1,
                     std::span<const double> c2, double width) {
  if (static_cast<int>(c1.size()) != family.dims() || static_cast<int>(c2.size()) != family.dims()) {
    throw std::invalid_argument("probe centers must match the family dimension");
  }
  if (!(width > 0.0)) throw std::invalid_argument("probe width must be positive");
}

ComplexVector smeared_state(const ParameterFamily& family, std::span<const double> center,
                            double width, SmearGrid grid) {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> sigma;
  for (int a = 0; a < family.dims(); ++a) {
    const double s = width * family.scales[static_cast<std::size_t>(a)];
    sigma.push_back(s);
    lo.push_back(center[static_cast<std::size_t>(a)] - grid.half_width * s);
    hi.push_back(center[static_cast<std::size_t>(a)] + grid.half_width * s);
  }
  const quadrature::MidpointGrid g(lo, hi, grid.points);
  const auto dim = static_cast<Eigen::Index>(family.basis.dimension());
  return quadrature::integrate(
      g,
      [&](std::span<const double> x) -> ComplexVector {
        double e = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
          const double y = (x[a] - center[a]) / sigma[a];
          e += 0.5 * y * y;
        }
        return std::exp(-e) * family.state(x).amplitudes();
      },
      ComplexVector(ComplexVector::Zero(dim)));
}

}  // namespace

ResidualReport eigen_residual(const OperatorMatrix& op, const StateVector& state, cplx eigenvalue,
                              int sector_bound, std::string op_name) {
  if (!(op.basis() == state.basis())) throw std::invalid_argument("operator and state bases differ");
  return windowed(state, op.apply(state), eigenvalue, sector_bound, std::move(op_name));
}

ResidualReport eigen_residual(const LadderForm& op, const StateVector& state, cplx eigenvalue,
                              int sector_bound, std::string op_name) {
  return windowed(state, op.apply(state), eigenvalue, sector_bound, std::move(op_name));
}

StateVector ParameterFamily::state(std::span<const double> x) const {
  return apply_exponent_to_vacuum(basis, exponent(x));
}

ParameterFamily eta_family(int cutoff) {
  ParameterFamily f{"eta", BasisSpec(2, cutoff), {1.0, 1.0}, 1.0 / std::numbers::pi,
                    std::numbers::pi, {}};
  f.exponent = [](std::span<const double> x) {
    return entangled::eta_exponent({cplx{x[0], x[1]}});
  };
  return f;
}

ParameterFamily bipartite_family(const MassPartition& partition, int cutoff) {
  if (partition.size() != 2) throw std::invalid_argument("bipartite family needs two masses");
  const double r = std::sqrt(partition.lambda());
  ParameterFamily f{"xi", BasisSpec(2, cutoff), {r, r / (partition.mu(0) * partition.mu(1))},
                    1.0, 1.0, {}};
  f.exponent = [partition](std::span<const double> x) {
    return entangled::xi_exponent({x[0], x[1], partition});
  };
  return f;
}

ParameterFamily tripartite_family(const MassPartition& partition, int cutoff) {
  if (partition.size() != 3) throw std::invalid_argument("tripartite family needs three masses");
  const double r = std::sqrt(partition.lambda());
  ParameterFamily f{"tripartite",
                    BasisSpec(3, cutoff),
                    {r, r / (partition.mu(0) * partition.mu(1)), r / (partition.mu(0) * partition.mu(2))},
                    1.0,
                    1.0,
                    {}};
  f.exponent = [partition](std::span<const double> x) {
    return entangled::multipartite_exponent({x[0], {x[1], x[2]}, partition});
  };
  return f;
}

std::vector<std::size_t> sector_indices(const BasisSpec& basis, int bound) {
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx)
    if (basis.total_occupation(idx) <= bound) out.push_back(idx);
  return out;
}

CompletenessReport completeness_deviation(const ParameterFamily& family, BallGrid grid,
                                          int sector_bound) {
  if (grid.points < 3) throw std::invalid_argument("completeness grid needs at least 3 points per axis");
  if (!(grid.radius > 0.0)) throw std::invalid_argument("completeness radius must be positive");
  if (family.dims() < 1 || !family.exponent) throw std::invalid_argument("empty parameter family");

  const auto window = sector_indices(family.basis, sector_bound);
  const auto s = static_cast<Eigen::Index>(window.size());
  const auto g = quadrature::MidpointGrid::cube(family.dims(), grid.radius, grid.points);
  const double r2 = grid.radius * grid.radius;

  ComplexMatrix m = quadrature::integrate(
      g,
      [&](std::span<const double> u) -> ComplexMatrix {
        double u2 = 0.0;
        for (double c : u) u2 += c * c;
        if (u2 > r2) return ComplexMatrix::Zero(s, s);
        std::vector<double> x(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) x[a] = family.scales[a] * u[a];
        const ComplexVector psi = family.state(x).amplitudes();
        ComplexVector v(s);
        for (Eigen::Index k = 0; k < s; ++k) v[k] = psi[static_cast<Eigen::Index>(window[static_cast<std::size_t>(k)])];
        return v * v.adjoint();
      },
      ComplexMatrix(ComplexMatrix::Zero(s, s)));
  m *= family.measure * prod(family.scales);

  CompletenessReport rep;
  rep.family = family.label;
  rep.cutoff = family.basis.cutoff();
  rep.sector_bound = sector_bound;
  rep.deviation = (m - ComplexMatrix::Identity(s, s)).cwiseAbs().maxCoeff();
  rep.grid = grid;
  return rep;
}

CompletenessReport completeness_deviation(const std::vector<StateVector>& states, int sector_bound,
                                          std::string label) {
  if (states.empty()) throw std::invalid_argument("empty state family");
  const auto& basis = states.front().basis();
  const auto window = sector_indices(basis, sector_bound);
  const auto s = static_cast<Eigen::Index>(window.size());
  ComplexMatrix m = ComplexMatrix::Zero(s, s);
  for (const auto& st : states) {
    if (!(st.basis() == basis)) throw std::invalid_argument("states do not share a basis");
    ComplexVector v(s);
    for (Eigen::Index k = 0; k < s; ++k)
      v[k] = st.amplitudes()[static_cast<Eigen::Index>(window[static_cast<std::size_t>(k)])];
    m += v * v.adjoint();
  }
  CompletenessReport rep;
  rep.family = std::move(label);
  rep.cutoff = basis.cutoff();
  rep.sector_bound = sector_bound;
  rep.deviation = (m - ComplexMatrix::Identity(s, s)).cwiseAbs().maxCoeff();
  rep.grid = {0.0, 0};
  return rep;
}

cplx smeared_overlap_probe(const ParameterFamily& family, std::span<const double> center1,
                           std::span<const double> center2, double width, SmearGrid grid) {
  require_centers(family, center1, center2, width);
  if (grid.points < 3 || !(grid.half_width > 0.0)) throw std::invalid_argument("invalid smearing grid");
  const auto phi1 = smeared_state(family, center1, width, grid);
  const auto phi2 = smeared_state(family, center2, width, grid);
  return phi1.dot(phi2);
}

double delta_model_overlap(const ParameterFamily& family, std::span<const double> center1,
                           std::span<const double> center2, double width) {
  require_centers(family, center1, center2, width);
  double value = family.delta_constant;
  for (int a = 0; a < family.dims(); ++a) {
    const double sigma = width * family.scales[static_cast<std::size_t>(a)];
    const double d = center1[static_cast<std::size_t>(a)] - center2[static_cast<std::size_t>(a)];
    value *= std::sqrt(std::numbers::pi) * sigma * std::exp(-d * d / (4.0 * sigma * sigma));
  }
  return value;
}

double interior_commutator_deviation(const LadderForm& a, const LadderForm& b,
                                     const BasisSpec& basis, cplx expected, int margin) {
  double worst = 0.0;
  for (std::size_t col = 0; col < basis.dimension(); ++col) {
    if (!in_interior(basis, col, margin)) continue;
    const auto e = StateVector::basis_state(basis, basis.occupations(col));
    const ComplexVector c = a.apply(b.apply(e)).amplitudes() - b.apply(a.apply(e)).amplitudes();
    for (std::size_t row = 0; row < basis.dimension(); ++row) {
      if (!in_interior(basis, row, margin)) continue;
      const cplx target = row == col ? expected : cplx{0.0, 0.0};
      worst = std::max(worst, std::abs(c[static_cast<Eigen::Index>(row)] - target));
    }
  }
  return worst;
}

OperatorMatrix full_symmetrization(const BasisSpec& basis, int m, int n) {
  if (basis.n_modes() != 1) throw std::invalid_argument("single-mode basis required");
  if (m < 0 || n < 0) throw std::invalid_argument("monomial powers must be non-negative");
  const ComplexMatrix q = quadrature_matrix(basis, 0, Quadrature::Q).entries();
  const ComplexMatrix p = quadrature_matrix(basis, 0, Quadrature::P).entries();
  const auto dim = q.rows();
  // words[k]: sum of all words of the current length containing k factors Q
  std::vector<ComplexMatrix> words(static_cast<std::size_t>(m) + 1, ComplexMatrix::Zero(dim, dim));
  words[0] = ComplexMatrix::Identity(dim, dim);
  for (int len = 1; len <= m + n; ++len) {
    for (int k = std::min(len, m); k >= 0; --k) {
      ComplexMatrix next = ComplexMatrix::Zero(dim, dim);
      if (len - k <= n) {
        next += words[static_cast<std::size_t>(k)] * p;
        if (k > 0) next += words[static_cast<std::size_t>(k) - 1] * q;
      }
      words[static_cast<std::size_t>(k)] = std::move(next);
    }
  }
  double count = 1.0;
  for (int k = 1; k <= m; ++k) count = count * (n + k) / k;
  return {basis, words[static_cast<std::size_t>(m)] / count};
}

bool decreasing_within_noise(const std::vector<double>& metrics, double noise, double floor) {
  for (std::size_t k = 1; k < metrics.size(); ++k) {
    if (!(metrics[k] <= (1.0 + noise) * metrics[k - 1] || metrics[k] <= floor)) return false;
  }
  return true;
}

ConvergenceTable convergence_study(std::string check, const std::vector<int>& schedule,
                                   const std::function<double(int)>& metric) {
  if (schedule.size() < 2) throw std::invalid_argument("convergence study needs at least two points");
  ConvergenceTable t{std::move(check), schedule, {}, false};
  for (int point : schedule) t.metrics.push_back(metric(point));
  t.decreasing = decreasing_within_noise(t.metrics);
  return t;
}

std::vector<ConvergenceTable> residual_study(
    const std::string& family, const std::function<ExponentSpec()>& exponent,
    const std::vector<entangled::EigenEquation>& equations, int n_modes,
    const std::vector<int>& cutoffs) {
  if (cutoffs.size() < 2) throw std::invalid_argument("convergence study needs at least two points");
  const auto spec = exponent();
  std::vector<ConvergenceTable> tables;
  for (const auto& eq : equations) tables.push_back({family + ":" + eq.name, cutoffs, {}, false});
  for (int cutoff : cutoffs) {
    const BasisSpec basis(n_modes, cutoff);
    const auto psi = apply_exponent_to_vacuum(basis, spec);
    for (std::size_t e = 0; e < equations.size(); ++e) {
      const auto r = eigen_residual(equations[e].op, psi, equations[e].eigenvalue, cutoff / 2,
                                    equations[e].name);
      tables[e].metrics.push_back(r.residual);
    }
  }
  for (auto& t : tables) t.decreasing = decreasing_within_noise(t.metrics);
  return tables;
}

}  // namespace fockweyl::validation
