#pragma once

#include <optional>
#include <vector>

#include "del/domains.hpp"
#include "del/spectral.hpp"

namespace del {

//============================================================================
// Norms and functionals: the energy E(u;t), the sharp (Lyapunov) norm, the
// energy-space norm of the first-order system, generator graph norms,
// dissipation and heat integrals, grid-side L^q / weighted L^1 norms, local
// energy, and Nash-type ratios.
//============================================================================

struct EnergyReport {
  double energy = 0.0;  // E = ||u'||^2 + ||A^{1/2} u||^2
  double sharp = 0.0;   // ||u||^2_{E#} = ||A^{1/2}u||^2 + ||u'+u/2||^2 + ||u||^2/4
  double l2sq = 0.0;    // ||u||^2
};

struct GeneratorPair {
  ModalVector f;
  ModalVector g;
};

// ||f||^2 = sum_j w_j f_j^2.
double l2_sq(const ModalOperator& op, const ModalVector& f);

// E(u, u') = sum_j w_j (u'_j^2 + lambda_j u_j^2).
double energy(const ModalOperator& op, const ModalVector& u,
              const ModalVector& uprime);

// ||(f,g)||^2_H = ||A^{1/2}f||^2 + (1/4)||f||^2 + ||g + f/2||^2; equals the
// sharp norm ||u||^2_{E#} on (u, u').
double h_norm_sq(const ModalOperator& op, const ModalVector& f,
                 const ModalVector& g);

EnergyReport energy_report(const ModalOperator& op, const ModalVector& u,
                           const ModalVector& uprime);

// L(f,g) = (g, -Af - g).
GeneratorPair generator_apply(const ModalOperator& op, const GeneratorPair& p);

// sum_{k=0..n} ||L^k p||^2_H; n capped at 12.
double graph_norm_sq(const ModalOperator& op, const GeneratorPair& p, int n);

// 2 * integral_0^t1 ||u'(s)||^2 ds by adaptive quadrature; together with
// E(t1) this closes the energy identity E(t) + 2 int ||u'||^2 = E(0).
double dissipation_integral(const ModalOperator& op, const CauchyPair& data,
                            double t1, double tol);

// integral_0^tmax (1+t)^m ||A^{(m+1)/2} e^{-tA} f||^2 dt; m capped at 8.
double heat_square_integral(const ModalOperator& op, const ModalVector& f,
                            int m, double tmax, double tol);

// (sum_i w_i |f_i|^q)^{1/q}; q = infinity gives max_i |f_i|.
double lq_norm(const std::vector<double>& f,
               const std::vector<double>& cellweights, double q);

// sum_i w_i (1 + log(r_i / r_in)) |f_i| over a radial grid.
double weighted_l1_log(const std::vector<double>& f, const Grid1D& grid,
                       double r_in);

// Energy restricted to |x| <= R: sum over nodes within R of
// w_i (uprime_i^2 + |grad u|_i^2), the gradient by centered differences with
// the Dirichlet boundary values appended.
double local_energy(const RealizedDomain& domain, const std::vector<double>& u,
                    const std::vector<double>& uprime, double R);

enum class NashVariant { nash, gn, lognash };

// Constant-free ratio LHS/RHS of the chosen inequality:
//   nash    ||f||_2^{2+4/N}            vs  ||f||_1^{4/N} ||grad f||_2^2
//   gn      ||f||_{1+2/N}^{1+2/N}      vs  ||f||_1^{(N^2+4)/(N(N+2))}
//                                          * ||grad f||_2^{4/(N+2)}
//   lognash ||H^{1/2} f||_2^2          vs  ||f||_{L^1_dmu} ||grad f||_2,
//           H(r) = 1 + log(r/r_in)
// The ratio is invariant under f -> c f.  A zero function (or vanishing
// denominator) throws degenerate_error; lognash requires r_in (explicit or
// from radial geometry).
double nash_ratio(const std::vector<double>& f, const Grid1D& grid,
                  NashVariant variant,
                  std::optional<double> r_in = std::nullopt);

}  // namespace del
