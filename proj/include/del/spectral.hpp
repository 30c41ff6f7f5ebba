#pragma once

#include <string>
#include <utility>
#include <vector>

namespace del {

//============================================================================
// Spectral representation of the abstract damped equation
//
//     u'' + A u + u' = 0,    (u, u')(0) = (u0, u1),
//
// for a nonnegative selfadjoint operator A given by its spectral data.  All
// vectors live in the eigenbasis of A; the H-norm is the weighted l2 norm
// ||f||^2 = sum_j w_j f_j^2.
//============================================================================

struct EigenMode {
  double lambda = 0.0;  // eigenvalue of A, >= 0
  double weight = 0.0;  // quadrature / Parseval weight, > 0
};

struct ModalOperator {
  std::vector<EigenMode> modes;  // nonempty, eigenvalues nondecreasing
  std::string label;

  std::size_t size() const { return modes.size(); }
};

using ModalVector = std::vector<double>;

struct CauchyPair {
  ModalVector u0;
  ModalVector u1;
};

// Value and derivative of one modal component at a fixed time.
struct ModeState {
  double value = 0.0;
  double derivative = 0.0;
};

// Validating factory: nonempty mode list, lambda >= 0, weight > 0, all
// finite, eigenvalues sorted nondecreasing.  Throws domain_error.
ModalOperator make_modal_operator(std::vector<EigenMode> modes,
                                  std::string label);

// Throws shape_error unless v has exactly one coefficient per mode.
void require_match(const ModalOperator& op, const ModalVector& v,
                   const char* what);
void require_match(const ModalOperator& op, const CauchyPair& data,
                   const char* what);

// Exact solution of the scalar mode equation w'' + lambda w + w' = 0 with
// w(0) = a, w'(0) = b.  Continuous in lambda across the critical value 1/4:
// for |1 - 4 lambda| < 1e-6 the entire functions
//     C(z,t) = sum z^m t^(2m) / (2m)!,   S(z,t) = sum z^m t^(2m+1) / (2m+1)!
// (z = 1/4 - lambda) are summed directly; otherwise stable closed forms in
// the characteristic roots are used.  Throws domain_error for lambda < 0 or
// t < 0.
ModeState mode_solve(double lambda, double a, double b, double t);

// Componentwise mode_solve over all modes of op.
std::pair<ModalVector, ModalVector> evolve(const ModalOperator& op,
                                           const CauchyPair& data, double t);

// k-th time derivative (u^(k), u^(k+1)) of the solution, via the initial-data
// recurrence a_{k+2} = -lambda a_k - a_{k+1} and the closed-form solver.
// k = 0 reproduces evolve bitwise.  k is capped at 12 (root-power growth
// destroys accuracy beyond that); larger k throws order_error.
std::pair<ModalVector, ModalVector> evolve_derivative(const ModalOperator& op,
                                                      const CauchyPair& data,
                                                      double t, int k);

inline constexpr int kMaxDerivativeOrder = 12;

// Heat semigroup multiplier e^{-lambda t}.  Throws domain_error for negative
// arguments.
double heat_mode(double lambda, double t);

// Coefficientwise heat semigroup e^{-tA} f.
ModalVector heat_apply(const ModalOperator& op, const ModalVector& f,
                       double t);

// Coefficientwise fractional power A^s f (multiplier lambda^s, with 0^0 = 1).
// Throws domain_error for s < 0.
ModalVector apply_power(const ModalOperator& op, const ModalVector& f,
                        double s);

}  // namespace del
