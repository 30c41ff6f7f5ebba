#pragma once

#include <functional>

namespace del {

// Adaptive Simpson quadrature of f over [a, b] with mixed tolerance
// |error| <= abs_tol + rel_tol * |integral|.  The integrands in this library
// are smooth and exponentially decaying; if the target still cannot be met
// within 2^16 leaf intervals, convergence_error is thrown.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol);

}  // namespace del
