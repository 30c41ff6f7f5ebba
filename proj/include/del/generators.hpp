#pragma once

#include <cstdint>
#include <functional>

#include "del/spectral.hpp"

namespace del {

//============================================================================
// Canonical initial-data generators.  Each hypothesis class of the decay
// theorems gets one generator:
//
//   gaussian      smooth L1 data (physical profile / Fourier-side Gaussian);
//   bump          positive, compactly supported, C^infinity data;
//   heavy_tail    Fourier profile |xi|^{-1/2+delta} 1_{xi<=1}: barely in H,
//                 excluded from every L1-type class;
//   random_energy modal data with O(1) energy and no further structure.
//
// The counter-based generator makes every draw a pure function of
// (seed, counter): platform-independent determinism with no sequencing.
//============================================================================

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Uniform in [0, 1), pure in (seed, counter).
  double uniform(std::uint64_t counter) const;

  // Standard normal via Box-Muller on counters (2c, 2c+1).
  double normal(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

// exp(-(x-center)^2 / (2 width^2)).
double gaussian_profile(double x, double center, double width);

// Smooth bump supported on (s0, s1), peak value 1 at the midpoint:
// exp(1 - 1/(1-y^2)) with y the affine map of (s0,s1) onto (-1,1).
double bump_profile(double x, double s0, double s1);

// Fourier-side profiles for the whole-line realization.
std::function<double(double)> gaussian_fourier(double width);
std::function<double(double)> heavy_tail_fourier(double delta);

// Random modal pair with energy of order one:
//   u0_j = N(0,1) / sqrt(m w_j (1+lambda_j)),  u1_j = N(0,1) / sqrt(m w_j).
CauchyPair random_energy(const ModalOperator& op, std::uint64_t seed);

}  // namespace del
