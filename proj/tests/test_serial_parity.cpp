#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "del/domains.hpp"
#include "del/expansion.hpp"
#include "del/functionals.hpp"
#include "del/generators.hpp"
#include "del/parallel.hpp"
#include "del/serial.hpp"
#include "del/spectral.hpp"

using namespace del;

// The OpenMP kernels fill per-index slots and reduce with a fixed serial
// compensated sum, so they must agree with the plain-loop reference
// implementations bit for bit -- on every input, at every thread count.

namespace {

ModalOperator wide_op(std::size_t m) {
  CounterRng rng(2718);
  std::vector<EigenMode> modes(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double lambda =
        std::pow(10.0, -3.0 + 6.0 * j / static_cast<double>(m - 1));
    modes[j] = {lambda, 0.5 + rng.uniform(j)};
  }
  return make_modal_operator(std::move(modes), "parity");
}

}  // namespace

TEST_CASE("evolve / heat / partial sums: parallel equals serial bitwise") {
  const auto op = wide_op(1000);
  const auto data = random_energy(op, 99);

  for (const int threads : {1, 3}) {
    set_threads(threads);
    CAPTURE(threads);
    for (const double t : {0.0, 0.5, 17.0}) {
      const auto par = evolve(op, data, t);
      const auto ser = serial::evolve(op, data, t);
      CHECK(par.first == ser.first);
      CHECK(par.second == ser.second);
    }
    CHECK(heat_apply(op, data.u0, 2.5) == serial::heat_apply(op, data.u0, 2.5));
    for (const int n : {0, 1, 4}) {
      CHECK(partial_sum_V(n, op, data, 3.0) ==
            serial::partial_sum_V(n, op, data, 3.0));
    }
  }
  set_threads(1);
}

TEST_CASE("reductions: parallel equals serial to the last bit") {
  const auto op = wide_op(1000);
  const auto data = random_energy(op, 7);
  const auto [u, up] = evolve(op, data, 1.25);

  for (const int threads : {1, 3}) {
    set_threads(threads);
    CAPTURE(threads);
    CHECK(l2_sq(op, u) == serial::l2_sq(op, u));
    CHECK(energy(op, u, up) == serial::energy(op, u, up));
    CHECK(h_norm_sq(op, u, up) == serial::h_norm_sq(op, u, up));
  }
  set_threads(1);
}

TEST_CASE("grid transforms: parallel equals serial bitwise") {
  const auto dom = build_interval(2.5, 300);
  std::vector<double> f(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    f[i] = std::sin(3.0 * dom.grid.nodes[i]) *
           std::exp(-dom.grid.nodes[i]);
  }
  for (const int threads : {1, 3}) {
    set_threads(threads);
    CAPTURE(threads);
    const auto c_par = analyze(dom, f);
    const auto c_ser = serial::analyze(dom, f);
    CHECK(c_par == c_ser);
    CHECK(synthesize(dom, c_par) == serial::synthesize(dom, c_ser));
  }
  set_threads(1);
}

TEST_CASE("thread count does not perturb a complete pipeline value") {
  const auto op = wide_op(500);
  const auto data = random_energy(op, 123);
  const auto value_at = [&](int threads) {
    set_threads(threads);
    const auto [u, up] = evolve(op, data, 8.0);
    auto [v, vdt] = partial_sum_V_dt(2, op, data, 8.0);
    for (std::size_t j = 0; j < op.size(); ++j) {
      v[j] = u[j] - v[j];
      vdt[j] = up[j] - vdt[j];
    }
    return h_norm_sq(op, v, vdt);
  };
  const double one = value_at(1);
  const double three = value_at(3);
  const double five = value_at(5);
  set_threads(1);
  CHECK(one == three);
  CHECK(one == five);
}
