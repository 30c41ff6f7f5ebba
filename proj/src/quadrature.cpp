#include "del/quadrature.hpp"

#include <cmath>

#include "del/errors.hpp"

namespace del {

namespace {

constexpr long kLeafBudget = 1L << 16;

struct Workspace {
  const std::function<double(double)>& f;
  long leaves = 0;

  // Recursive adaptive Simpson with Richardson acceptance test: the halved
  // estimate S2 is accepted when |S2 - S1| <= 15 eps.
  double refine(double a, double b, double fa, double fm, double fb, double s1,
                double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double fml = f(0.5 * (a + m));
    const double fmr = f(0.5 * (m + b));
    const double sl = (m - a) / 6.0 * (fa + 4.0 * fml + fm);
    const double sr = (b - m) / 6.0 * (fm + 4.0 * fmr + fb);
    const double s2 = sl + sr;
    if (depth > 0 && (std::abs(s2 - s1) <= 15.0 * eps || b - m <= 1e-14 * std::abs(m))) {
      ++leaves;
      return s2 + (s2 - s1) / 15.0;
    }
    if (leaves >= kLeafBudget || depth > 60) {
      throw convergence_error(
          "integrate: adaptive Simpson exceeded its subdivision budget");
    }
    return refine(a, m, fa, fml, fm, sl, 0.5 * eps, depth + 1) +
           refine(m, b, fm, fmr, fb, sr, 0.5 * eps, depth + 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
  if (!(b >= a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw domain_error("integrate: bad interval");
  }
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || abs_tol + rel_tol <= 0.0) {
    throw domain_error("integrate: tolerances must be nonnegative, not both 0");
  }
  if (a == b) return 0.0;

  // Coarse panel scan to seed the relative-error scale; also catches
  // integrands with support far from the midpoint.
  constexpr int kPanels = 32;
  const double h = (b - a) / kPanels;
  double rough = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double x0 = a + i * h;
    rough += h / 6.0 *
             (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
  }
  const double eps = abs_tol + rel_tol * std::abs(rough);

  Workspace ws{f};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double s1 = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return ws.refine(a, b, fa, fm, fb, s1, eps, 0);
}

}  // namespace del
