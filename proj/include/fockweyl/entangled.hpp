// Exponent constructors for the continuous-variable entangled states and the
// collective operators they diagonalize.
//
// Mode indices are 0-based here: mode 0 is the reference particle of the
// relative momenta P_0/mu_0 - P_k/mu_k, and the relative-momentum eigenvalue
// of mode 0 is fixed at zero.

#pragma once

#include <string>
#include <vector>

#include "fockweyl/fock.hpp"
#include "fockweyl/mass_gaussian.hpp"

namespace fockweyl::entangled {

using mass::MassPartition;

struct EtaParam {
  cplx eta{0.0, 0.0};
};

/// Eigenvalues q_cm of mu_0 Q_0 + mu_1 Q_1 and rho of P_0/mu_0 - P_1/mu_1.
struct BipartiteEprParam {
  double q_cm = 0.0;
  double rho = 0.0;
  MassPartition partition{{1.0, 1.0}};
};

/// Eigenvalue q of sum mu_i Q_i and rho[k-1] of P_0/mu_0 - P_k/mu_k, k = 1..n-1.
struct MultiEprParam {
  double q = 0.0;
  std::vector<double> rho;
  MassPartition partition{{1.0, 1.0}};
};

/// -|eta|^2/2 + eta a_0^dag - eta* a_1^dag + a_0^dag a_1^dag
ExponentSpec eta_exponent(const EtaParam& param);

/// Two-particle state written out explicitly: prefactor sqrt(mu_0 mu_1/(pi lambda)),
/// linear sqrt2 mu_0 (q + i rho mu_1^2)/lambda and sqrt2 mu_1 (q - i rho mu_0^2)/lambda,
/// pair coefficient -2 mu_0 mu_1/lambda, squares -+(mu_0^2 - mu_1^2)/(2 lambda).
ExponentSpec xi_exponent(const BipartiteEprParam& param);

/// Three-particle state written out explicitly (n = 3 case of the general
/// construction, with each relative-momentum row derived from the eigen-equations).
ExponentSpec tripartite_exponent(const MultiEprParam& param);

/// General n-particle state:
///   c   = log(pi^{-n/4} sqrt(prod mu / lambda)) + M/(2 lambda)
///   L_i = sqrt2 A_i / lambda,  A_i = mu_i q - i sum_j mu_i mu_j^2 (rho_i - rho_j)
///   S_ij = K_ij / lambda,      K_ij = -mu_i mu_j + delta_ij lambda/2
///   M   = -q^2 - (1/2) sum_ij [mu_i mu_j (rho_i - rho_j)]^2
ExponentSpec multipartite_exponent(const MultiEprParam& param);

/// sum_i mu_i Q_i
OperatorMatrix com_operator(const MassPartition& partition, const BasisSpec& basis);
LadderForm com_form(const MassPartition& partition);

/// P_0/mu_0 - P_k/mu_k, k in 1..n-1
OperatorMatrix rel_momentum_operator(const MassPartition& partition, int k,
                                     const BasisSpec& basis);
LadderForm rel_momentum_form(const MassPartition& partition, int k);

/// Q_0 - Q_1 and P_0 + P_1, the pair diagonalized by the eta states with
/// eigenvalues sqrt2 Re eta and sqrt2 Im eta.
LadderForm eta_position_form();
LadderForm eta_momentum_form();

/// One eigen-equation: operator and the eigenvalue the state should carry.
struct EigenEquation {
  std::string name;
  LadderForm op;
  cplx eigenvalue;
};

std::vector<EigenEquation> eta_equations(const EtaParam& param);
std::vector<EigenEquation> bipartite_equations(const BipartiteEprParam& param);
std::vector<EigenEquation> multipartite_equations(const MultiEprParam& param);

/// Displayed closed forms kept as comparison fixtures. They are transcribed
/// literally, so some of them disagree with the eigen-equations; compare()
/// lists every disagreement.
namespace display {

/// Equal-mass two-particle form exp[-|xi|^2/2 + xi a_0^dag + xi* a_1^dag - a_0^dag a_1^dag].
ExponentSpec xi_equal_mass(cplx xi);

/// General-mass xi form: prefactor sqrt(mu_0 mu_1)/lambda, linear
/// [xi + (mu_0-mu_1) xi*]/sqrt(2 lambda) and [xi* - (mu_0-mu_1) xi]/sqrt(2 lambda),
/// squares -+(mu_0-mu_1)/(2 lambda), pair -4 mu_0 mu_1.
ExponentSpec xi_general(cplx xi, const MassPartition& partition);

/// Three-particle form as displayed, including its relative-momentum rows.
ExponentSpec tripartite(const MultiEprParam& param);

/// Equal-mass three-particle form as displayed (q multiplies the squares).
ExponentSpec tripartite_equal_mass(const MultiEprParam& param);

/// Equal-mass n-particle form.
ExponentSpec multipartite_equal_mass(const MultiEprParam& param);

}  // namespace display

/// Parameters of the equal-mass xi display that make it an eigenstate of the
/// same operators: q_cm = sqrt(lambda) xi_q, rho = sqrt(lambda) xi_p / (mu_0 mu_1).
BipartiteEprParam xi_param_equal_mass(cplx xi);

/// The substitution q_cm = sqrt(lambda) xi_q, rho = sqrt(lambda) xi_p.
BipartiteEprParam xi_param_literal(cplx xi, const MassPartition& partition);

struct CoefficientMismatch {
  std::string term;  // "const", "a0", "a0a1", ...
  cplx expected;
  cplx actual;
};

/// Coefficient-level comparison; terms agreeing within `tol` are omitted.
/// With include_constant = false the constant term is skipped.
std::vector<CoefficientMismatch> compare(const ExponentSpec& expected,
                                         const ExponentSpec& actual, double tol,
                                         bool include_constant = true);

/// Largest coefficient difference over all terms (constant included).
double max_coefficient_difference(const ExponentSpec& a, const ExponentSpec& b);

}  // namespace fockweyl::entangled
