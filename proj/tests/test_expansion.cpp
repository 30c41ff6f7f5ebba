#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "del/errors.hpp"
#include "del/expansion.hpp"
#include "del/spectral.hpp"
#include "oracles.hpp"

using namespace del;
using doctest::Approx;

namespace {

ModalOperator tiny_op(std::vector<EigenMode> modes) {
  return make_modal_operator(std::move(modes), "test");
}

}  // namespace

TEST_CASE("binomial: exact small and large values, zero out of range") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(10, 5) == 252.0);
  // Largest row kept exact in 128-bit arithmetic before the double rounding.
  CHECK(binomial(60, 30) == 118264581564861424.0);
  CHECK(binomial(4, 5) == 0.0);
  CHECK(binomial(4, -1) == 0.0);
  CHECK_THROWS_AS(binomial(61, 0), order_error);
  CHECK_THROWS_AS(binomial(-1, 0), order_error);
}

TEST_CASE("profile_poly: hand-expanded low orders") {
  const auto p0 = profile_poly(0);
  CHECK(p0.P == std::vector<double>{1.0});
  CHECK(p0.Q.empty());

  const auto p1 = profile_poly(1);
  CHECK(p1.P == std::vector<double>{2.0, -1.0});
  CHECK(p1.Q == std::vector<double>{1.0});

  const auto p2 = profile_poly(2);
  CHECK(p2.P == std::vector<double>{6.0, -4.0, 0.5});
  CHECK(p2.Q == std::vector<double>{3.0, -1.0});

  const auto p3 = profile_poly(3);
  CHECK(p3.P == std::vector<double>{20.0, -15.0, 3.0, -1.0 / 6.0});
  CHECK(p3.Q == std::vector<double>{10.0, -5.0, 0.5});

  CHECK_THROWS_AS(profile_poly(kMaxProfileOrder + 1), order_error);
  CHECK_THROWS_AS(profile_poly(-1), order_error);
}

TEST_CASE("profile_v_mode: order zero is the heat flow of u0 + u1") {
  for (const double lambda : {0.0, 0.7, 13.0}) {
    const double v = profile_v_mode(0, lambda, 1.5, -4.0, 2.0);
    CHECK(v == Approx(1.5 * std::exp(-2.0 * lambda)).epsilon(1e-15));
  }
  // ell = 1 hand value: lambda e^{-s} ((2 - s) v00 - u0).
  CHECK(profile_v_mode(1, 1.0, 1.0, 0.0, 1.0) ==
        Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(profile_v_mode(1, 2.0, 1.0, 1.0, 0.5) ==
        Approx(2.0 * std::exp(-1.0) * ((2.0 - 1.0) * 1.0 - 1.0)).epsilon(1e-14));
}

TEST_CASE("profile derivatives match difference quotients") {
  const double lambda = 1.3, v00 = 0.8, u0 = -0.4;
  for (int ell : {0, 1, 2, 4}) {
    for (const double t : {0.3, 2.0, 9.0}) {
      const double numeric = testor::d1_central(
          [&](double tt) { return profile_v_mode(ell, lambda, v00, u0, tt); },
          t, 1e-5);
      CHECK(profile_v_dt_mode(ell, lambda, v00, u0, t) ==
            Approx(numeric).epsilon(1e-7));
    }
  }
}

TEST_CASE("profile cascade: v_ell' + lambda v_ell = -v_{ell-1}''") {
  // The defining recursion of the expansion; checked against second
  // difference quotients of the previous profile.
  const double v00 = 1.1, u0 = 0.6;
  for (const double lambda : {0.4, 2.0}) {
    for (int ell : {1, 2, 3}) {
      for (const double t : {0.5, 1.5, 4.0}) {
        const double lhs = profile_v_dt_mode(ell, lambda, v00, u0, t) +
                           lambda * profile_v_mode(ell, lambda, v00, u0, t);
        const double rhs = -testor::d2_central(
            [&](double tt) {
              return profile_v_mode(ell - 1, lambda, v00, u0, tt);
            },
            t, 1e-4);
        CHECK(lhs == Approx(rhs).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("auxiliary family: v_ell = lambda^ell v_{ell,ell}") {
  const double v00 = 0.9, u0 = -1.2;
  for (const double lambda : {0.5, 3.0}) {
    for (int ell : {0, 1, 2, 5}) {
      const double lhs = profile_v_mode(ell, lambda, v00, u0, 1.3);
      const double rhs = std::pow(lambda, ell) *
                         profile_vlk_mode(ell, ell, lambda, v00, u0, 1.3);
      CHECK(lhs == Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("auxiliary family: time derivatives climb k") {
  // d/dt v_{ell,0} = lambda v_{ell,1} and d^2/dt^2 v_{ell,0} = lambda^2 v_{ell,2}.
  const double lambda = 0.8, v00 = 1.4, u0 = 0.3, t = 2.2;
  for (int ell : {1, 2, 3}) {
    const auto f = [&](double tt) {
      return profile_vlk_mode(ell, 0, lambda, v00, u0, tt);
    };
    CHECK(lambda * profile_vlk_mode(ell, 1, lambda, v00, u0, t) ==
          Approx(testor::d1_central(f, t, 1e-5)).epsilon(1e-7));
    CHECK(lambda * lambda * profile_vlk_mode(ell, 2, lambda, v00, u0, t) ==
          Approx(testor::d2_central(f, t, 1e-4)).epsilon(1e-5));
  }
}

TEST_CASE("auxiliary family: initial values alternate to u1") {
  for (int ell : {1, 2, 4}) {
    const double v = profile_vlk_mode(ell, 0, 1.7, 1.0, 0.25, 0.0);
    const double u1 = 1.0 - 0.25;
    CHECK(v == Approx((ell % 2 == 0 ? 1.0 : -1.0) * u1).epsilon(1e-14));
  }
}

TEST_CASE("partial sums telescope and differentiate correctly") {
  const auto op = tiny_op({{0.0, 1.0}, {0.6, 2.0}, {3.0, 0.5}});
  const CauchyPair data{{1.0, -0.5, 0.25}, {0.5, 1.0, -1.0}};
  const double t = 1.8;

  const auto v0 = partial_sum_V(0, op, data, t);
  CHECK(v0 == ModalVector{0.0, 0.0, 0.0});

  for (int n : {1, 2, 3}) {
    const auto big = partial_sum_V(n, op, data, t);
    const auto small = partial_sum_V(n - 1, op, data, t);
    const auto prof = profile_v(n - 1, op, data, t);
    for (std::size_t j = 0; j < op.size(); ++j) {
      CHECK(big[j] - small[j] == Approx(prof[j]).epsilon(1e-13));
    }
  }

  const auto [v, vdt] = partial_sum_V_dt(2, op, data, t);
  CHECK(v == partial_sum_V(2, op, data, t));
  for (std::size_t j = 0; j < op.size(); ++j) {
    const double numeric = testor::d1_central(
        [&](double tt) { return partial_sum_V(2, op, data, tt)[j]; }, t, 1e-5);
    CHECK(vdt[j] == Approx(numeric).epsilon(1e-7));
  }
}

TEST_CASE("in_jn: closed forms at low order") {
  for (const double lambda : {0.0, 0.5, 3.0}) {
    const auto [i1, j1] = in_jn(1, lambda);
    CHECK(i1 == Approx(1.0 / (1.0 + lambda)).epsilon(1e-15));
    CHECK(j1 == Approx(1.0 / (1.0 + lambda)).epsilon(1e-15));
  }
  const auto [i2, j2] = in_jn(2, 1.0);
  CHECK(i2 == Approx(0.5).epsilon(1e-15));
  CHECK(j2 == Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(in_jn(0, 1.0), order_error);
  CHECK_THROWS_AS(in_jn(kMaxRegularizeOrder + 1, 1.0), order_error);
  CHECK_THROWS_AS(in_jn(1, -0.5), domain_error);
}

TEST_CASE("in_jn: partition of unity across the spectrum") {
  for (int n = 1; n <= kMaxRegularizeOrder; ++n) {
    for (const double lambda : {0.0, 1e-6, 0.03, 1.0, 40.0, 1e6}) {
      const auto [in, jn] = in_jn(n, lambda);
      CHECK(in >= 0.0);
      CHECK(jn >= 0.0);
      CHECK(in <= 1.0 + 1e-13);  // exact bound is 1; allow summation ulps
      CHECK(in + std::pow(lambda, n) * jn == Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("regularize splits the data and reassembles it exactly") {
  const auto op = tiny_op({{0.0, 1.0}, {0.8, 1.5}, {12.0, 0.25}});
  const CauchyPair data{{1.0, -2.0, 0.5}, {0.3, 0.7, -1.1}};
  for (int n : {1, 3}) {
    const auto pair = regularize(n, op, data);
    CHECK(pair.n == n);
    for (std::size_t j = 0; j < op.size(); ++j) {
      const double ln = std::pow(op.modes[j].lambda, n);
      CHECK(pair.star.u0[j] + ln * pair.starstar.u0[j] ==
            Approx(data.u0[j]).epsilon(1e-13));
      CHECK(pair.star.u1[j] + ln * pair.starstar.u1[j] ==
            Approx(data.u1[j]).epsilon(1e-13));
      // Components are the scalar symbols applied to the data.
      const auto [in, jn] = in_jn(n, op.modes[j].lambda);
      CHECK(pair.star.u0[j] == Approx(in * data.u0[j]).epsilon(1e-15));
      CHECK(pair.starstar.u1[j] == Approx(jn * data.u1[j]).epsilon(1e-15));
    }
  }
}

TEST_CASE("remainder: lambda = 0 mode leaves only the damped tail") {
  // u = (a+b) - b e^{-t} while V_n = a + b for every n >= 1, so the
  // remainder is -b e^{-t} with derivative +b e^{-t}.
  const auto op = tiny_op({{0.0, 1.0}});
  const CauchyPair data{{2.0}, {0.75}};
  for (int n : {1, 2, 4}) {
    const auto [r, rp] = remainder(n, op, data, 3.0);
    CHECK(r[0] == Approx(-0.75 * std::exp(-3.0)).epsilon(1e-13));
    CHECK(rp[0] == Approx(0.75 * std::exp(-3.0)).epsilon(1e-13));
  }
}

TEST_CASE("err_equation_oracle: hand-solvable case") {
  // n = 1, lambda = 0: the forcing vanishes, U' = -b e^{-t}.
  CHECK(err_equation_oracle(1, 0.0, 1.0, 0.5, 2.0, 1e-10) ==
        Approx(-0.5 * std::exp(-2.0)).epsilon(1e-8));
  CHECK_THROWS_AS(err_equation_oracle(1, 1.0, 1.0, 0.0, 1.0, 1e-13),
                  domain_error);
}

TEST_CASE("decomposition: u - V_n equals the n-th error derivative") {
  // The central identity u = V_n + d^n/dt^n U_n per mode, cross-checked
  // against the independent ODE integration of the error equation.
  for (const double lambda : {0.01, 0.25, 2.0}) {
    const auto op = tiny_op({{lambda, 1.0}});
    const CauchyPair data{{0.3}, {-0.8}};
    for (int n : {1, 2, 3}) {
      for (const double t : {2.0, 7.0}) {
        const auto [r, rp] = remainder(n, op, data, t);
        const double oracle =
            err_equation_oracle(n, lambda, 0.3, -0.8, t, 1e-11);
        CHECK(r[0] == Approx(oracle).epsilon(5e-7));
        (void)rp;
      }
    }
  }
}

TEST_CASE("profile_v at order zero matches heat_apply bitwise") {
  const auto op = tiny_op({{0.0, 1.0}, {1.5, 2.0}, {9.0, 1.0}});
  const CauchyPair data{{1.0, 0.5, -0.25}, {0.5, 0.25, 0.75}};
  ModalVector v00(op.size());
  for (std::size_t j = 0; j < op.size(); ++j) v00[j] = data.u0[j] + data.u1[j];
  const auto direct = heat_apply(op, v00, 2.5);
  const auto prof = profile_v(0, op, data, 2.5);
  CHECK(prof == direct);
}
