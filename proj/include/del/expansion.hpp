#pragma once

#include <utility>
#include <vector>

#include "del/spectral.hpp"

namespace del {

//============================================================================
// Asymptotic expansion machinery: profiles v_ell, partial sums V_n, the
// auxiliary family v_{ell,k}, the I_n/J_n regularization pair, remainders
// u - V_n, and an independent ODE oracle for the error equation.
//
// Per mode (eigenvalue lambda, s = t lambda, v00 = u0 + u1):
//
//   v_ell  = lambda^ell e^{-s} ( P_ell(s) v00 - Q_ell(s) u0 ),
//   P_ell(s) = sum_{j=0..ell}   C(2ell,  ell+j) (-s)^j / j!,
//   Q_ell(s) = sum_{k=0..ell-1} C(2ell-1, ell+k) (-s)^k / k!,
//
//   V_0 = 0,  V_n = v_0 + ... + v_{n-1}.
//============================================================================

struct ProfilePolynomials {
  int order = 0;          // ell
  std::vector<double> P;  // ascending coefficients in s, degree ell
  std::vector<double> Q;  // degree ell-1; empty for ell = 0
};

// Pair of regularized data sets: star = I_n data, starstar = J_n data, with
// star + A^n starstar = data per mode.
struct RegularizedPair {
  CauchyPair star;
  CauchyPair starstar;
  int n = 1;
};

// Binomials stay exact in 128-bit integers up to these caps.
inline constexpr int kMaxProfileOrder = 30;      // ell (and ell + k)
inline constexpr int kMaxRegularizeOrder = 16;   // n of I_n/J_n

// Exact binomial coefficient C(n, k) for 0 <= n <= 60, rounded to double
// only on return.  Out-of-range k yields 0.
double binomial(int n, int k);

// Coefficient arrays of P_ell, Q_ell.  Throws order_error for ell outside
// [0, kMaxProfileOrder].
ProfilePolynomials profile_poly(int ell);

// Scalar per-mode forms (building blocks for the modal operations and the
// error-equation oracle; also convenient in tests).
double profile_v_mode(int ell, double lambda, double v00, double u0, double t);
double profile_v_dt_mode(int ell, double lambda, double v00, double u0,
                         double t);
double profile_vlk_mode(int ell, int k, double lambda, double v00, double u0,
                        double t);

// Profile v_ell over all modes; ell = 0 agrees with heat_apply on v00
// bitwise.
ModalVector profile_v(int ell, const ModalOperator& op, const CauchyPair& data,
                      double t);

// Partial sum V_n = sum_{ell < n} v_ell (V_0 = 0).
ModalVector partial_sum_V(int n, const ModalOperator& op,
                          const CauchyPair& data, double t);

// (V_n, d/dt V_n) with the time derivative taken analytically via the
// differentiated polynomials.
std::pair<ModalVector, ModalVector> partial_sum_V_dt(int n,
                                                     const ModalOperator& op,
                                                     const CauchyPair& data,
                                                     double t);

// Auxiliary family
//   v_{ell,k} = (-1)^{ell+k} [ sum_{j=0..ell} C(ell+k, j+k) (-s)^j/j! v00
//               - sum_{j=0..ell-1} C(ell+k-1, j+k) (-s)^j/j! u0 ] e^{-t lambda},
// satisfying d^k/dt^k v_{ell,0} = A^k v_{ell,k} and v_ell = A^ell v_{ell,ell}.
ModalVector profile_vlk(int ell, int k, const ModalOperator& op,
                        const CauchyPair& data, double t);

// Scalar symbols I_n(lambda), J_n(lambda) of the regularization pair:
//   I_n = (1+lambda)^{-(2n-1)} sum_{k<n} C(2n-1, k)   lambda^k,
//   J_n = (1+lambda)^{-(2n-1)} sum_{k<n} C(2n-1, n+k) lambda^k,
// with I_n + lambda^n J_n = 1 (partition of unity).  Evaluated in the
// positive-term variables x = lambda/(1+lambda), y = 1/(1+lambda).
std::pair<double, double> in_jn(int n, double lambda);

// Componentwise application of I_n, J_n to both data components.
RegularizedPair regularize(int n, const ModalOperator& op,
                           const CauchyPair& data);

// (u - V_n, u' - d/dt V_n).
std::pair<ModalVector, ModalVector> remainder(int n, const ModalOperator& op,
                                              const CauchyPair& data,
                                              double t);

// Reference integrator for the scalar error equation
//   U_n'' + lambda U_n + U_n' = -(d/dt) v_{n-1,0},
//   U_n(0) = 0,  U_n'(0) = (-1)^n b,
// returning d^n/dt^n U_n(t) (higher derivatives recovered through the ODE).
// Deliberately independent of mode_solve: adaptive step-doubling RK4 with
// relative tolerance tol (>= 1e-12, else domain_error).  Used as the
// cross-check oracle for the decomposition identity u = V_n + d^n/dt^n U_n.
double err_equation_oracle(int n, double lambda, double a, double b, double t,
                           double tol);

namespace testhooks {

// Verification hook: while armed, one internal binomial-table entry (C(3,1))
// reads one too large, corrupting in_jn and friends.  Lets the verify command
// demonstrate that the acceptance checks catch data corruption instead of
// silently passing.  Not for production use.
void corrupt_binomial_table(bool enabled);

}  // namespace testhooks

}  // namespace del
