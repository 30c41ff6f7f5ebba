#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace del {

//============================================================================
// Deterministic reductions.
//
// Every norm and inner product in the library is accumulated with a fixed
// left-to-right Neumaier-compensated sum.  Parallel kernels only ever fill
// per-index slots; the reduction itself is serial, so results are bitwise
// identical regardless of thread count.
//============================================================================

class CompensatedSum {
 public:
  void add(double x) {
    const double t = s_ + x;
    if (std::abs(s_) >= std::abs(x)) {
      c_ += (s_ - t) + x;
    } else {
      c_ += (x - t) + s_;
    }
    s_ = t;
  }

  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double csum(const double* x, std::size_t n) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(x[i]);
  return acc.value();
}

inline double csum(const std::vector<double>& v) {
  return csum(v.data(), v.size());
}

}  // namespace del
