// Wigner operator, Weyl ordering of q^m p^n, Weyl quantization, and Wigner
// functions on a single truncated mode. Units: hbar = 1, Q = (a + a^dag)/sqrt 2.

#pragma once

#include <iosfwd>
#include <vector>

#include "fockweyl/fock.hpp"

namespace fockweyl::weyl {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

struct ClassicalMonomial {
  int m = 0;  // power of q
  int n = 0;  // power of p
  cplx coeff{1.0, 0.0};
};

/// h(q, p) as a sum of monomials; construction merges terms with equal (m, n)
/// and drops those whose merged coefficient is exactly zero.
class ClassicalPolynomial {
 public:
  ClassicalPolynomial() = default;
  explicit ClassicalPolynomial(std::vector<ClassicalMonomial> terms);

  const std::vector<ClassicalMonomial>& terms() const { return terms_; }

 private:
  std::vector<ClassicalMonomial> terms_;
};

/// Wigner operator (1/pi) :exp[-(q-Q)^2 - (p-P)^2]: evaluated as the displaced
/// parity (1/pi) D(2 alpha) (-1)^N, alpha = (q + ip)/sqrt 2, with associated
/// Laguerre matrix elements. Every truncated matrix element equals the
/// untruncated one.
OperatorMatrix wigner_operator(const BasisSpec& basis, PhasePoint point);

/// (1/2)^m sum_l C(m,l) Q^{m-l} P^n Q^l, products formed left to right.
OperatorMatrix weyl_order_monomial(const BasisSpec& basis, int m, int n);

OperatorMatrix weyl_quantize(const BasisSpec& basis, const ClassicalPolynomial& h);

struct QuadratureGrid {
  double radius = 7.0;
  int points = 201;  // per axis, odd, >= 3
};

/// Midpoint-rule approximation of the integral of q^m p^n Delta(q, p) over
/// [-R, R]^2.
OperatorMatrix quantize_via_wigner_quadrature(const BasisSpec& basis,
                                              const ClassicalMonomial& mono,
                                              QuadratureGrid grid);

/// <psi|Delta(q,p)|psi> / <psi|psi> for a single-mode state.
double wigner_function(const StateVector& state, PhasePoint point);

/// Text grid: header "q_min q_max p_min p_max G", then G*G lines "q p w",
/// q outer and p inner, nodes evenly spaced including both ends.
void write_wigner_grid(std::ostream& out, const StateVector& state, double q_min, double q_max,
                       double p_min, double p_max, int points);

}  // namespace fockweyl::weyl
