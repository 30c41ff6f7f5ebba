#pragma once

#include <utility>
#include <vector>

namespace del {

//============================================================================
// Rate estimation: log-spaced schedules, log-log slope fits, log-corrected
// compensated series, plateau (limsup-surrogate) checks, and pass/fail
// verdicts against expected exponents.
//============================================================================

struct RateSample {
  double t = 0.0;      // > 0
  double value = 0.0;  // > 0 after filtering
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural-log intercept
  double rms_residual = 0.0;
  double t_lo = 0.0;  // fitting window actually used
  double t_hi = 0.0;
  int used = 0;      // samples entering the regression
  int filtered = 0;  // samples dropped as zero/underflow (< 1e-300)
};

struct BoundCheck {
  bool pass = false;
  RateFit fit;
  double expected_slope = 0.0;
  double tol = 0.0;
  double gap = 0.0;  // |fit.slope - expected_slope|
};

struct Plateau {
  double lo = 0.0;
  double hi = 0.0;
  double ratio = 0.0;  // hi / lo over the trailing window
};

// Log-spaced times in [t0, t1], endpoints included, strictly increasing.
// count < 4 throws range_error (too few points for any fit).
std::vector<double> sample_schedule(double t0, double t1, int count);

// Least squares on (log t, log value).  The default window discards the
// earliest head_fraction (20%) of samples as transient; values below 1e-300
// are filtered out and counted.  Fewer than 4 usable samples throws
// fit_error.
RateFit fit_loglog(const std::vector<RateSample>& samples,
                   double head_fraction = 0.2);

// Min and max of the compensated series value * t^p * (log t)^sigma; all
// t must be >= 2 (log t bounded away from 0), else domain_error.
std::pair<double, double> log_corrected_fit(
    const std::vector<RateSample>& samples, double p, double sigma);

// Max/min ratio over the trailing window (limsup surrogate: finitely many
// samples stand in for the paper's limsup positivity claims).
Plateau plateau_check(const std::vector<RateSample>& samples,
                      double window_fraction);

// pass iff |fitted slope - expected_slope| <= tol.
BoundCheck check_decay(const std::vector<RateSample>& samples,
                       double expected_slope, double tol);

}  // namespace del
