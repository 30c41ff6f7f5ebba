#include "del/generators.hpp"

#include <cmath>
#include <numbers>

#include "del/errors.hpp"
#include "del/parallel.hpp"

namespace del {

namespace {

// splitmix64 finalizer: the standard avalanche mix.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double CounterRng::uniform(std::uint64_t counter) const {
  const std::uint64_t h = mix64(mix64(seed_) + counter);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
  // u1 in (0, 1] so the log is finite.
  const double u1 = uniform(2 * counter) + 0x1.0p-53;
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double gaussian_profile(double x, double center, double width) {
  if (!(width > 0.0)) {
    throw domain_error("gaussian_profile: width must be > 0");
  }
  const double y = (x - center) / width;
  return std::exp(-0.5 * y * y);
}

double bump_profile(double x, double s0, double s1) {
  if (!(s1 > s0)) {
    throw domain_error("bump_profile: empty support");
  }
  const double y = (2.0 * x - s0 - s1) / (s1 - s0);
  if (y <= -1.0 || y >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

std::function<double(double)> gaussian_fourier(double width) {
  if (!(width > 0.0)) {
    throw domain_error("gaussian_fourier: width must be > 0");
  }
  return [width](double xi) { return std::exp(-0.5 * width * width * xi * xi); };
}

std::function<double(double)> heavy_tail_fourier(double delta) {
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw domain_error("heavy_tail_fourier: delta must lie in (0, 1/2)");
  }
  return [delta](double xi) {
    if (xi > 1.0) return 0.0;
    return std::pow(xi, -0.5 + delta);
  };
}

CauchyPair random_energy(const ModalOperator& op, std::uint64_t seed) {
  const CounterRng rng(seed);
  const std::size_t m = op.size();
  CauchyPair data;
  data.u0.resize(m);
  data.u1.resize(m);
  parallel_for(m, [&](std::size_t j) {
    const EigenMode& mode = op.modes[j];
    const double scale0 =
        1.0 / std::sqrt(m * mode.weight * (1.0 + mode.lambda));
    const double scale1 = 1.0 / std::sqrt(m * mode.weight);
    data.u0[j] = rng.normal(2 * j) * scale0;
    data.u1[j] = rng.normal(2 * j + 1) * scale1;
  });
  return data;
}

}  // namespace del
