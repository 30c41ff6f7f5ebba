#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "del/domains.hpp"
#include "del/errors.hpp"
#include "del/generators.hpp"
#include "oracles.hpp"

using namespace del;
using doctest::Approx;

TEST_CASE("build_interval: exact sine spectrum and discrete orthonormality") {
  const double L = std::numbers::pi;
  const auto d = build_interval(L, 32);
  REQUIRE(d.size() == 32);
  for (std::size_t k = 0; k < d.op.size(); ++k) {
    const double expect = (k + 1.0) * (k + 1.0);
    CHECK(d.op.modes[k].lambda == Approx(expect).epsilon(1e-14));
    CHECK(d.op.modes[k].weight == 1.0);
  }
  // The discrete sine basis is exactly orthonormal under the cell weights.
  const std::size_t m = d.size();
  for (std::size_t k = 0; k < m; k += 7) {
    for (std::size_t l = k; l < m; l += 5) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        acc += d.grid.cellweights[i] * d.eigenbasis[k * m + i] *
               d.eigenbasis[l * m + i];
      }
      CHECK(acc == Approx(k == l ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(build_interval(0.0, 8), domain_error);
  CHECK_THROWS_AS(build_interval(1.0, 0), order_error);
  CHECK_THROWS_AS(build_interval(1.0, 4097), order_error);
}

TEST_CASE("interval analyze/synthesize are mutual inverses") {
  const auto d = build_interval(2.0, 64);
  std::vector<double> f(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.grid.nodes[i];
    f[i] = x * (2.0 - x) * std::exp(-x);
  }
  const auto c = analyze(d, f);
  const auto back = synthesize(d, c);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back[i] == Approx(f[i]).epsilon(1e-10));
  }
}

TEST_CASE("build_whole_line: quadrature cells tile the band") {
  const auto w = build_whole_line(1e-3, 50.0, 500);
  REQUIRE(w.op.size() == 500);
  CHECK(w.t_valid() == Approx(1e4).epsilon(1e-12));
  double total = 0.0;
  for (const auto& mode : w.op.modes) total += mode.weight;
  CHECK(total == Approx(2.0 * (50.0 - 1e-3)).epsilon(1e-12));
  for (std::size_t j = 0; j < w.xi.size(); ++j) {
    CHECK(w.op.modes[j].lambda == Approx(w.xi[j] * w.xi[j]).epsilon(1e-15));
    if (j > 0) CHECK(w.xi[j] > w.xi[j - 1]);
  }
  CHECK_THROWS_AS(build_whole_line(0.0, 1.0, 100), domain_error);
  CHECK_THROWS_AS(build_whole_line(1.0, 0.5, 100), range_error);
  CHECK_THROWS_AS(build_whole_line(1e-3, 50.0, 3), order_error);
}

TEST_CASE("whole line resolves a Gaussian Plancherel integral") {
  // ||u||^2 = 2 int_0^inf e^{-xi^2} dxi = sqrt(pi), up to the missing
  // [0, xi_min) sliver of mass ~ 2 xi_min.
  const auto w = build_whole_line(1e-4, 40.0, 2000);
  const auto c = w.analyze(gaussian_fourier(1.0));
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    acc += w.op.modes[j].weight * c[j] * c[j];
  }
  CHECK(acc == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-3));
}

TEST_CASE("whole line reproduces the exact heat decay law") {
  // ||e^{tA} u||^2 = 2 int e^{-2 t xi^2} e^{-xi^2} dxi = sqrt(pi/(1+2t)).
  const auto w = build_whole_line(1e-4, 40.0, 2000);
  const auto c = w.analyze(gaussian_fourier(1.0));
  for (const double t : {1.0, 10.0, 100.0}) {
    double acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double damped = c[j] * std::exp(-w.op.modes[j].lambda * t);
      acc += w.op.modes[j].weight * damped * damped;
    }
    CHECK(acc ==
          Approx(std::sqrt(std::numbers::pi / (1.0 + 2.0 * t))).epsilon(2e-3));
  }
}

TEST_CASE("tridiag_eigh: two-by-two by hand, random matrix against Jacobi") {
  const auto small = tridiag_eigh({2.0, 2.0}, {1.0});
  REQUIRE(small.values.size() == 2);
  CHECK(small.values[0] == Approx(1.0).epsilon(1e-14));
  CHECK(small.values[1] == Approx(3.0).epsilon(1e-14));
  // Eigenvectors of [[2,1],[1,2]] are (1,-1) and (1,1) normalized.
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(small.vectors[k * 2]) ==
          Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(std::abs(small.vectors[k * 2 + 1]) ==
          Approx(std::sqrt(0.5)).epsilon(1e-13));
  }

  // Random symmetric tridiagonal, cross-checked against a from-scratch
  // cyclic Jacobi eigensolver on the dense embedding.
  const std::size_t n = 24;
  CounterRng rng(314159);
  std::vector<double> diag(n), off(n - 1);
  for (std::size_t i = 0; i < n; ++i) diag[i] = 1.0 + 2.0 * rng.uniform(i);
  for (std::size_t i = 0; i + 1 < n; ++i)
    off[i] = 2.0 * rng.uniform(100 + i) - 1.0;

  const auto got = tridiag_eigh(diag, off);
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) dense[i * n + i] = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dense[i * n + i + 1] = off[i];
    dense[(i + 1) * n + i] = off[i];
  }
  const auto ref = testor::jacobi_eigenvalues(dense, n);
  REQUIRE(got.values.size() == n);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(got.values[k] == Approx(ref[k]).epsilon(1e-11));
    if (k > 0) CHECK(got.values[k] >= got.values[k - 1]);
  }
  // Residual || T v - lambda v ||_inf and pairwise orthonormality.
  for (std::size_t k = 0; k < n; k += 5) {
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = diag[i] * got.vectors[k * n + i];
      if (i > 0) tv += off[i - 1] * got.vectors[k * n + i - 1];
      if (i + 1 < n) tv += off[i] * got.vectors[k * n + i + 1];
      resid = std::max(resid,
                       std::abs(tv - got.values[k] * got.vectors[k * n + i]));
    }
    CHECK(resid < 1e-10);
    for (std::size_t l = 0; l < n; l += 3) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += got.vectors[k * n + i] * got.vectors[l * n + i];
      }
      CHECK(dot == Approx(k == l ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(tridiag_eigh({}, {}), shape_error);
  CHECK_THROWS_AS(tridiag_eigh({1.0, 2.0}, {}), shape_error);
}

TEST_CASE("3d shell spectrum matches the exact substitution eigenvalues") {
  // phi = r psi turns the radial 3d problem into the Dirichlet string on
  // (r_in, r_out): lambda_k = (k pi / (r_out - r_in))^2 exactly.
  const auto d = build_radial_exterior(3, 1.0, 30.0, 600);
  for (int k = 1; k <= 5; ++k) {
    const double expect = std::pow(k * std::numbers::pi / 29.0, 2);
    CHECK(d.op.modes[k - 1].lambda == Approx(expect).epsilon(5e-3));
  }
  for (const auto& mode : d.op.modes) CHECK(mode.lambda >= 0.0);
}

TEST_CASE("2d annulus ground eigenvalue matches the Bessel cross product") {
  const auto d = build_radial_exterior(2, 1.0, 30.0, 600);
  const double k1 = testor::bessel_crossproduct_root(1.0, 30.0);
  CHECK(d.op.modes[0].lambda == Approx(k1 * k1).epsilon(5e-3));
}

TEST_CASE("radial eigenbasis is orthonormal and reproduces sampled data") {
  const auto d = build_radial_exterior(3, 1.0, 12.0, 128);
  const std::size_t m = d.size();
  for (std::size_t k = 0; k < m; k += 17) {
    for (std::size_t l = k; l < m; l += 13) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        acc += d.grid.cellweights[i] * d.eigenbasis[k * m + i] *
               d.eigenbasis[l * m + i];
      }
      CHECK(acc == Approx(k == l ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
  std::vector<double> f(m);
  for (std::size_t i = 0; i < m; ++i) {
    f[i] = bump_profile(d.grid.nodes[i], 2.0, 6.0);
  }
  const auto back = synthesize(d, analyze(d, f));
  double dev = 0.0;
  for (std::size_t i = 0; i < m; ++i) dev = std::max(dev, std::abs(back[i] - f[i]));
  CHECK(dev < 1e-9);
}

TEST_CASE("build_radial_exterior guards its geometry") {
  CHECK_THROWS_AS(build_radial_exterior(4, 1.0, 30.0, 128), domain_error);
  CHECK_THROWS_AS(build_radial_exterior(3, -1.0, 30.0, 128), domain_error);
  CHECK_THROWS_AS(build_radial_exterior(3, 1.0, 4.0, 128), range_error);
  CHECK_THROWS_AS(build_radial_exterior(3, 1.0, 30.0, 63), order_error);
}

TEST_CASE("harmonic_profile: obstacle-vanishing harmonic functions") {
  const auto h3 = harmonic_profile(3, 1.0);
  CHECK(h3(1.0) == 0.0);
  CHECK(h3(2.0) == Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(h3(0.5), domain_error);

  const auto h2 = harmonic_profile(2, 2.0);
  CHECK(h2(2.0) == 0.0);
  CHECK(h2(2.0 * std::numbers::e) == Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(h2(1.0), domain_error);

  CHECK_THROWS_AS(harmonic_profile(1, 1.0), domain_error);
  CHECK_THROWS_AS(harmonic_profile(3, 0.0), domain_error);
}
