#include "del/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "del/errors.hpp"
#include "del/reduce.hpp"

namespace del {

namespace {

constexpr double kUnderflowFloor = 1e-300;

}  // namespace

std::vector<double> sample_schedule(double t0, double t1, int count) {
  if (!(t0 > 0.0) || !(t1 > t0) || !std::isfinite(t1)) {
    throw range_error("sample_schedule: require 0 < t0 < t1");
  }
  if (count < 4) {
    throw range_error("sample_schedule: count must be >= 4");
  }
  std::vector<double> t(count);
  const double l0 = std::log(t0);
  const double l1 = std::log(t1);
  for (int i = 0; i < count; ++i) {
    t[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  }
  t.front() = t0;
  t.back() = t1;
  for (int i = 1; i < count; ++i) {
    if (!(t[i] > t[i - 1])) {
      throw range_error("sample_schedule: schedule not strictly increasing");
    }
  }
  return t;
}

RateFit fit_loglog(const std::vector<RateSample>& samples,
                   double head_fraction) {
  if (!(head_fraction >= 0.0) || head_fraction >= 1.0) {
    throw domain_error("fit_loglog: head fraction outside [0, 1)");
  }
  RateFit fit;
  std::vector<RateSample> usable;
  usable.reserve(samples.size());
  for (const RateSample& s : samples) {
    if (!(s.t > 0.0) || !std::isfinite(s.t) || !std::isfinite(s.value)) {
      throw domain_error("fit_loglog: samples need finite t > 0");
    }
    if (s.value < kUnderflowFloor) {
      ++fit.filtered;  // exponential tails underflow; note and drop
      continue;
    }
    usable.push_back(s);
  }
  // Transient guard: drop the earliest fraction of the surviving samples.
  const std::size_t head =
      static_cast<std::size_t>(head_fraction * usable.size());
  if (usable.size() - head < 4) {
    throw fit_error("fit_loglog: fewer than 4 usable samples (filtered " +
                    std::to_string(fit.filtered) + ")");
  }
  usable.erase(usable.begin(), usable.begin() + head);

  const std::size_t n = usable.size();
  CompensatedSum sx, sy;
  for (const RateSample& s : usable) {
    sx.add(std::log(s.t));
    sy.add(std::log(s.value));
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxx, sxy;
  for (const RateSample& s : usable) {
    const double dx = std::log(s.t) - mx;
    sxx.add(dx * dx);
    sxy.add(dx * (std::log(s.value) - my));
  }
  if (!(sxx.value() > 0.0)) {
    throw fit_error("fit_loglog: degenerate abscissas");
  }
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum srr;
  for (const RateSample& s : usable) {
    const double r = std::log(s.value) - (fit.intercept + fit.slope * std::log(s.t));
    srr.add(r * r);
  }
  fit.rms_residual = std::sqrt(srr.value() / n);
  fit.t_lo = usable.front().t;
  fit.t_hi = usable.back().t;
  fit.used = static_cast<int>(n);
  return fit;
}

std::pair<double, double> log_corrected_fit(
    const std::vector<RateSample>& samples, double p, double sigma) {
  if (samples.empty()) {
    throw range_error("log_corrected_fit: empty sample set");
  }
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const RateSample& s : samples) {
    if (!(s.t >= 2.0)) {
      throw domain_error("log_corrected_fit: all t must be >= 2");
    }
    const double c =
        s.value * std::pow(s.t, p) * std::pow(std::log(s.t), sigma);
    if (first) {
      lo = hi = c;
      first = false;
    } else {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
  }
  return {lo, hi};
}

Plateau plateau_check(const std::vector<RateSample>& samples,
                      double window_fraction) {
  if (!(window_fraction > 0.0) || window_fraction > 1.0) {
    throw domain_error("plateau_check: window fraction outside (0, 1]");
  }
  if (samples.empty()) {
    throw range_error("plateau_check: empty sample set");
  }
  const std::size_t n = samples.size();
  std::size_t w = static_cast<std::size_t>(std::ceil(window_fraction * n));
  w = std::max<std::size_t>(1, std::min(w, n));
  Plateau p;
  bool first = true;
  for (std::size_t i = n - w; i < n; ++i) {
    const double v = samples[i].value;
    if (first) {
      p.lo = p.hi = v;
      first = false;
    } else {
      p.lo = std::min(p.lo, v);
      p.hi = std::max(p.hi, v);
    }
  }
  if (!(p.lo > 0.0)) {
    throw degenerate_error("plateau_check: nonpositive values in window");
  }
  p.ratio = p.hi / p.lo;
  return p;
}

BoundCheck check_decay(const std::vector<RateSample>& samples,
                       double expected_slope, double tol) {
  if (!(tol >= 0.0)) {
    throw domain_error("check_decay: tolerance must be >= 0");
  }
  BoundCheck out;
  out.fit = fit_loglog(samples);
  out.expected_slope = expected_slope;
  out.tol = tol;
  out.gap = std::abs(out.fit.slope - expected_slope);
  out.pass = out.gap <= tol;
  return out;
}

}  // namespace del
