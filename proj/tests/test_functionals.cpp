#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "del/domains.hpp"
#include "del/errors.hpp"
#include "del/functionals.hpp"
#include "del/generators.hpp"
#include "del/spectral.hpp"
#include "oracles.hpp"

using namespace del;
using doctest::Approx;

namespace {

ModalOperator tiny_op(std::vector<EigenMode> modes) {
  return make_modal_operator(std::move(modes), "test");
}

// Minimal hand-built physical grid: three uniform interior nodes on (0, 1).
Grid1D unit_grid3() {
  Grid1D g;
  g.geometry.kind = GeometryKind::interval;
  g.geometry.N = 1;
  g.geometry.L = 1.0;
  g.nodes = {0.25, 0.5, 0.75};
  g.cellweights = {0.25, 0.25, 0.25};
  return g;
}

}  // namespace

TEST_CASE("l2_sq / energy / h_norm_sq: hand-summed values") {
  const auto op = tiny_op({{1.0, 2.0}, {4.0, 0.5}});
  const ModalVector u{1.0, -2.0};
  const ModalVector up{0.5, 1.0};

  CHECK(l2_sq(op, u) == Approx(4.0).epsilon(1e-15));
  // E = 2 (0.25 + 1) + 0.5 (1 + 16) = 11.
  CHECK(energy(op, u, up) == Approx(11.0).epsilon(1e-15));

  const auto op0 = tiny_op({{0.0, 1.0}});
  CHECK(h_norm_sq(op0, {1.0}, {0.0}) == Approx(0.5).epsilon(1e-15));
  CHECK(h_norm_sq(op0, {0.0}, {1.0}) == Approx(1.0).epsilon(1e-15));

  const auto rep = energy_report(op, u, up);
  CHECK(rep.energy == energy(op, u, up));
  CHECK(rep.sharp == h_norm_sq(op, u, up));
  CHECK(rep.l2sq == l2_sq(op, u));
}

TEST_CASE("h_norm_sq is sandwiched by split energies") {
  // (g + f/2)^2 + f^2/4 >= f^2/6 + g^2/4 (the cross term discriminant
  // vanishes) and <= f^2 + 3g^2/2 - lambda-free parts; both bounds are
  // checked on pseudo-random data.
  CounterRng rng(7);
  const int m = 40;
  std::vector<EigenMode> modes(m);
  ModalVector f(m), g(m);
  for (int j = 0; j < m; ++j) {
    modes[j] = {0.1 * j, 0.5 + rng.uniform(3 * j)};
    f[j] = rng.normal(1000 + j);
    g[j] = rng.normal(2000 + j);
  }
  const auto op = tiny_op(std::move(modes));
  const double val = h_norm_sq(op, f, g);
  double lo = 0.0, hi = 0.0;
  for (int j = 0; j < m; ++j) {
    const double w = op.modes[j].weight, l = op.modes[j].lambda;
    lo += w * (l * f[j] * f[j] + f[j] * f[j] / 6.0 + g[j] * g[j] / 4.0);
    hi += w * (l * f[j] * f[j] + f[j] * f[j] + 1.5 * g[j] * g[j]);
  }
  CHECK(val >= lo * (1.0 - 1e-12));
  CHECK(val <= hi * (1.0 + 1e-12));
}

TEST_CASE("generator_apply and graph_norm_sq") {
  const auto op = tiny_op({{1.0, 1.0}});
  const GeneratorPair p{{1.0}, {0.0}};
  const auto lp = generator_apply(op, p);
  CHECK(lp.f[0] == 0.0);
  CHECK(lp.g[0] == -1.0);

  // ||p||_H^2 = 1 + 1/4 + 1/4 = 3/2;  ||Lp||_H^2 = (−1 + 0/2)^2 = 1.
  CHECK(graph_norm_sq(op, p, 0) == Approx(1.5).epsilon(1e-15));
  CHECK(graph_norm_sq(op, p, 1) == Approx(2.5).epsilon(1e-15));

  // Telescoping: adding one order adds exactly ||L^{n+1} p||_H^2.
  GeneratorPair q = p;
  double expect = 0.0;
  for (int n = 0; n <= 4; ++n) {
    expect += h_norm_sq(op, q.f, q.g);
    CHECK(graph_norm_sq(op, p, n) == Approx(expect).epsilon(1e-13));
    q = generator_apply(op, q);
  }
  CHECK_THROWS_AS(graph_norm_sq(op, p, 13), order_error);
  CHECK_THROWS_AS(
      graph_norm_sq(op, GeneratorPair{{1.0, 2.0}, {0.0, 0.0}}, 1),
      shape_error);
}

TEST_CASE("dissipation_integral closes the energy identity") {
  // Single overdamped mode, data (0, 1): u' = e^{-t} at lambda = 0, so
  // 2 int_0^60 u'^2 = 1 - e^{-120}.
  const auto op0 = tiny_op({{0.0, 1.0}});
  const CauchyPair d0{{0.0}, {1.0}};
  CHECK(dissipation_integral(op0, d0, 60.0, 1e-11) ==
        Approx(1.0).epsilon(1e-9));

  // Mixed spectrum: E(0) - E(t1) must equal the dissipated amount.
  const auto op = tiny_op({{0.3, 1.0}, {2.0, 0.5}, {15.0, 2.0}});
  const CauchyPair data{{1.0, -0.5, 0.2}, {0.0, 1.0, 0.4}};
  const double t1 = 8.0;
  const auto [u, up] = evolve(op, data, t1);
  const double e0 = energy(op, data.u0, data.u1);
  const double e1 = energy(op, u, up);
  const double diss = dissipation_integral(op, data, t1, 1e-11);
  CHECK(e0 - e1 == Approx(diss).epsilon(1e-9));

  CHECK_THROWS_AS(dissipation_integral(op, data, -1.0, 1e-10), domain_error);
  CHECK_THROWS_AS(dissipation_integral(op, data, 1.0, 1e-13), domain_error);
}

TEST_CASE("heat_square_integral: closed forms for one mode") {
  const auto op = tiny_op({{1.0, 1.0}});
  const ModalVector f{1.0};
  // m = 0: int_0^inf lambda e^{-2 lambda t} dt = 1/2.
  CHECK(heat_square_integral(op, f, 0, 60.0, 1e-11) ==
        Approx(0.5).epsilon(1e-9));
  // m = 1: int (1+t) lambda^2 e^{-2t} dt = 1/2 + 1/4.
  CHECK(heat_square_integral(op, f, 1, 60.0, 1e-11) ==
        Approx(0.75).epsilon(1e-9));
  CHECK_THROWS_AS(heat_square_integral(op, f, 9, 1.0, 1e-10), order_error);
  CHECK_THROWS_AS(heat_square_integral(op, f, -1, 1.0, 1e-10), order_error);

  // Independent quadrature cross-check with a two-mode spectrum.
  const auto op2 = tiny_op({{0.5, 1.5}, {3.0, 0.5}});
  const ModalVector f2{1.0, -2.0};
  const double got = heat_square_integral(op2, f2, 1, 40.0, 1e-11);
  const double ref = testor::simpson(
      [&](double t) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
          const double l = op2.modes[j].lambda, w = op2.modes[j].weight;
          acc += w * l * l * std::exp(-2.0 * l * t) * f2[j] * f2[j];
        }
        return (1.0 + t) * acc;
      },
      0.0, 40.0, 20000);
  CHECK(got == Approx(ref).epsilon(1e-8));
}

TEST_CASE("lq_norm: q = 1, 2, infinity and guards") {
  const std::vector<double> f{1.0, -2.0, 0.5};
  const std::vector<double> w{1.0, 0.5, 2.0};
  CHECK(lq_norm(f, w, 1.0) == Approx(3.0).epsilon(1e-15));
  CHECK(lq_norm(f, w, 2.0) ==
        Approx(std::sqrt(1.0 + 2.0 + 0.5)).epsilon(1e-15));
  CHECK(lq_norm(f, w, std::numeric_limits<double>::infinity()) == 2.0);
  CHECK_THROWS_AS(lq_norm(f, w, 0.5), domain_error);
  CHECK_THROWS_AS(lq_norm(f, {1.0}, 2.0), shape_error);
}

TEST_CASE("weighted_l1_log: hand-summed radial weights") {
  Grid1D g;
  g.geometry.kind = GeometryKind::radial;
  g.geometry.N = 3;
  g.geometry.r_in = 2.0;
  g.geometry.r_out = 10.0;
  g.nodes = {2.0, 4.0};
  g.cellweights = {1.0, 3.0};
  const std::vector<double> f{1.0, -2.0};
  const double expect = 1.0 * (1.0 + std::log(1.0)) * 1.0 +
                        3.0 * (1.0 + std::log(2.0)) * 2.0;
  CHECK(weighted_l1_log(f, g, 2.0) == Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(weighted_l1_log(f, g, 3.0), domain_error);  // node below
  CHECK_THROWS_AS(weighted_l1_log(f, g, -1.0), domain_error);
}

TEST_CASE("local_energy recovers the Dirichlet energy of an eigenmode") {
  // First sine mode on (0, pi): u has unit H-norm and energy lambda_1 = 1;
  // the centered-difference gradient is second-order accurate.
  const auto dom = build_interval(std::numbers::pi, 400);
  const ModalVector c = [&] {
    ModalVector v(dom.op.size(), 0.0);
    v[0] = 1.0;
    return v;
  }();
  const auto u = synthesize(dom, c);
  const std::vector<double> up(u.size(), 0.0);
  // The interior cells miss the two boundary half-cells, where |grad u| of
  // mode one peaks: expect a deficit of order 2/(m+1) ~ 0.5%.
  CHECK(local_energy(dom, u, up, std::numbers::pi) ==
        Approx(1.0).epsilon(0.01));
  // Half the interval carries half the gradient mass of mode one.
  CHECK(local_energy(dom, u, up, std::numbers::pi / 2.0) ==
        Approx(0.5).epsilon(0.02));
  CHECK_THROWS_AS(local_energy(dom, u, up, -1.0), domain_error);
}

TEST_CASE("nash_ratio: hand-computed hat function on the unit interval") {
  const Grid1D g = unit_grid3();
  const std::vector<double> f{0.0, 1.0, 0.0};
  // ||f||_2^2 = 1/4, ||f||_1 = 1/4, ||f'||_2^2 = 2 (slopes -2, 0, 2).
  CHECK(nash_ratio(f, g, NashVariant::nash) == Approx(2.0).epsilon(1e-13));
  // gn with N = 1: ratio = 2^{2/3}.
  CHECK(nash_ratio(f, g, NashVariant::gn) ==
        Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));
  // lognash needs an explicit r_in away from radial geometry.
  CHECK_THROWS_AS(nash_ratio(f, g, NashVariant::lognash), domain_error);
  CHECK(nash_ratio(f, g, NashVariant::lognash, 0.1) > 0.0);

  // Scale invariance f -> c f.
  const std::vector<double> f5{0.0, 5.0, 0.0};
  CHECK(nash_ratio(f5, g, NashVariant::nash) ==
        Approx(nash_ratio(f, g, NashVariant::nash)).epsilon(1e-12));

  CHECK_THROWS_AS(nash_ratio({0.0, 0.0, 0.0}, g, NashVariant::nash),
                  degenerate_error);
}
