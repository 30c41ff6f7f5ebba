#pragma once

#include <stdexcept>
#include <string>

namespace del {

// Base class for every error thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar argument outside its mathematical domain (negative eigenvalue,
// negative time, q < 1, radius below the obstacle, ...).
struct domain_error : error {
  using error::error;
};

// Vector/operator length mismatch.
struct shape_error : error {
  using error::error;
};

// Order parameter (derivative order k, expansion order n/ell, moment m,
// grid size m) outside the supported range.
struct order_error : error {
  using error::error;
};

// Range/schedule guard violation (bad sample schedule, empty window, ...).
struct range_error : error {
  using error::error;
};

// Numerical breakdown: eigensolver non-convergence, non-finite intermediate.
struct numeric_error : error {
  using error::error;
};

// Quadrature or ODE integrator failed to reach the requested tolerance.
struct convergence_error : error {
  using error::error;
};

// Degenerate input where a ratio or fit is undefined (zero function, ...).
struct degenerate_error : error {
  using error::error;
};

// Least-squares fit impossible (too few samples after filtering, ...).
struct fit_error : error {
  using error::error;
};

// Experiment configuration rejected; message lists every violated guard.
struct config_error : error {
  using error::error;
};

}  // namespace del
