#pragma once

#include <functional>
#include <vector>

#include "del/spectral.hpp"

namespace del {

//============================================================================
// Realized domains: physical grids plus discrete selfadjoint Laplacians with
// full eigendecompositions.  Three geometries are supported:
//
//   interval        (0, L), Dirichlet ends, analytic sine eigenbasis;
//   whole line      continuous spectrum via log-spaced Fourier quadrature;
//   radial exterior shell (r_in, r_out) in N = 2 or 3 dimensions, Dirichlet
//                   ends, finite-volume radial Laplacian.
//============================================================================

enum class GeometryKind { interval, line, radial };

struct Geometry {
  GeometryKind kind = GeometryKind::interval;
  int N = 1;           // spatial dimension (2 or 3 for radial shells)
  double r_in = 0.0;   // radial: obstacle radius
  double r_out = 0.0;  // radial: artificial outer boundary
  double L = 0.0;      // interval length
};

struct Grid1D {
  std::vector<double> nodes;        // strictly increasing interior nodes
  std::vector<double> cellweights;  // cell measures incl. the surface factor
  Geometry geometry;
};

struct RealizedDomain {
  Grid1D grid;
  ModalOperator op;  // unit Parseval weights: the eigenbasis is orthonormal
  // eigenbasis[k*m + i] = phi_k(node_i), orthonormal under cellweights.
  std::vector<double> eigenbasis;

  std::size_t size() const { return grid.nodes.size(); }
};

// Sine Galerkin realization on (0, L): lambda_k = (k pi / L)^2 exactly,
// phi_k = sqrt(2/L) sin(k pi x / L) on the uniform grid x_i = i L/(m+1).
// The discrete sine orthogonality makes the basis exactly orthonormal under
// the cell weights.  m is capped at 4096 (dense basis table).
RealizedDomain build_interval(double L, int m);

// Whole-line realization restricted to even/odd data, so a scalar
// xi-quadrature suffices: lambda_j = xi_j^2 on a log-spaced grid, weights
// 2 * (cell width) for the two Fourier half-lines.
struct WholeLine {
  ModalOperator op;
  std::vector<double> xi;  // quadrature nodes, ascending
  double xi_min = 0.0;
  double xi_max = 0.0;

  // Spectral-truncation validity window: results are reliable only while the
  // missing band [0, xi_min) carries negligible mass, t <= 0.01 / xi_min^2.
  double t_valid() const { return 0.01 / (xi_min * xi_min); }

  // Sample a closed-form Fourier profile at the quadrature nodes.
  ModalVector analyze(const std::function<double(double)>& fhat) const;
};

WholeLine build_whole_line(double xi_min, double xi_max, int m);

// Finite-volume discretization of -r^{1-N} (r^{N-1} u')' with Dirichlet
// conditions at r_in and r_out, on a log-spaced grid with a uniform patch
// near the obstacle.  Symmetrized via sqrt(cellweights) into a symmetric
// tridiagonal problem; full eigendecomposition.  Requires r_out > 4 r_in and
// m >= 64.
RealizedDomain build_radial_exterior(int N, double r_in, double r_out, int m);

// Weighted eigen-coefficients c_k = sum_i w_i phi_k(x_i) f(x_i), and the
// inverse map; mutual inverses on the resolved subspace.
ModalVector analyze(const RealizedDomain& d, const std::vector<double>& f);
std::vector<double> synthesize(const RealizedDomain& d, const ModalVector& c);

// Harmonic profile h vanishing on the obstacle boundary:
//   N = 3:  h(r) = 1 - r_in / r,      N = 2:  h(r) = log(r / r_in).
// The returned function throws domain_error for r < r_in.
std::function<double(double)> harmonic_profile(int N, double r_in);

// All eigenpairs of a symmetric tridiagonal matrix, eigenvalues ascending,
// vectors[k*n + i] orthonormal.  Backed by LAPACK's MRRR driver; failure to
// converge throws numeric_error.
struct TridiagEig {
  std::vector<double> values;
  std::vector<double> vectors;
};

TridiagEig tridiag_eigh(const std::vector<double>& diag,
                        const std::vector<double>& offdiag);

}  // namespace del
