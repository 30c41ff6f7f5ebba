// Micro-benchmark: OpenMP kernels against the serial reference on a synthetic
// operator.  Also cross-checks that both paths agree bitwise, which is the
// contract that makes the serial twin a usable oracle.
//
//   bench_kernels [modes] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "del/expansion.hpp"
#include "del/functionals.hpp"
#include "del/generators.hpp"
#include "del/parallel.hpp"
#include "del/serial.hpp"
#include "del/spectral.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    f();
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
  }
  return true;
}

void row(const char* name, double serial_ms, double parallel_ms, bool bitwise) {
  std::printf("%-22s %10.3f ms %10.3f ms %7.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms,
              bitwise ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int m = argc > 1 ? std::atoi(argv[1]) : 200000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  if (m < 1 || repeats < 1) {
    std::fprintf(stderr, "usage: bench_kernels [modes>=1] [repeats>=1]\n");
    return 2;
  }

  std::vector<del::EigenMode> modes(m);
  for (int j = 0; j < m; ++j) {
    const double lambda = std::pow(10.0, -4.0 + 8.0 * j / (m - 1.0));
    modes[j] = {lambda, 1.0};
  }
  const del::ModalOperator op =
      del::make_modal_operator(std::move(modes), "bench");
  const del::CauchyPair data = del::random_energy(op, 42);
  const double t = 3.0;

  std::printf("modes = %d, repeats = %d, threads = %d\n\n", m, repeats,
              del::max_threads());
  std::printf("%-22s %13s %13s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    auto s = del::serial::evolve(op, data, t);
    auto p = del::evolve(op, data, t);
    row("evolve", best_ms(repeats, [&] { s = del::serial::evolve(op, data, t); }),
        best_ms(repeats, [&] { p = del::evolve(op, data, t); }),
        same_bits(s.first, p.first) && same_bits(s.second, p.second));
  }
  {
    auto s = del::serial::heat_apply(op, data.u0, t);
    auto p = del::heat_apply(op, data.u0, t);
    row("heat_apply",
        best_ms(repeats, [&] { s = del::serial::heat_apply(op, data.u0, t); }),
        best_ms(repeats, [&] { p = del::heat_apply(op, data.u0, t); }),
        same_bits(s, p));
  }
  {
    auto s = del::serial::partial_sum_V(3, op, data, t);
    auto p = del::partial_sum_V(3, op, data, t);
    row("partial_sum_V (n=3)",
        best_ms(repeats, [&] { s = del::serial::partial_sum_V(3, op, data, t); }),
        best_ms(repeats, [&] { p = del::partial_sum_V(3, op, data, t); }),
        same_bits(s, p));
  }
  {
    double s = del::serial::l2_sq(op, data.u0);
    double p = del::l2_sq(op, data.u0);
    row("l2_sq",
        best_ms(repeats, [&] { s = del::serial::l2_sq(op, data.u0); }),
        best_ms(repeats, [&] { p = del::l2_sq(op, data.u0); }), s == p);
  }
  {
    double s = del::serial::energy(op, data.u0, data.u1);
    double p = del::energy(op, data.u0, data.u1);
    row("energy",
        best_ms(repeats, [&] { s = del::serial::energy(op, data.u0, data.u1); }),
        best_ms(repeats, [&] { p = del::energy(op, data.u0, data.u1); }),
        s == p);
  }
  {
    double s = del::serial::h_norm_sq(op, data.u0, data.u1);
    double p = del::h_norm_sq(op, data.u0, data.u1);
    row("h_norm_sq",
        best_ms(repeats,
                [&] { s = del::serial::h_norm_sq(op, data.u0, data.u1); }),
        best_ms(repeats, [&] { p = del::h_norm_sq(op, data.u0, data.u1); }),
        s == p);
  }
  return 0;
}
