#include "del/expansion.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <utility>

#include "del/errors.hpp"
#include "del/parallel.hpp"

namespace del {

namespace {

using u128 = unsigned __int128;

constexpr int kBinomialRows = 61;  // C(n, k) for n <= 2*kMaxProfileOrder

struct CombinatoricsTable {
  std::array<std::array<u128, kBinomialRows>, kBinomialRows> choose{};
  std::array<u128, kMaxProfileOrder + 1> factorial{};

  CombinatoricsTable() {
    for (int n = 0; n < kBinomialRows; ++n) {
      choose[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        choose[n][k] = choose[n - 1][k - 1] + (k <= n - 1 ? choose[n - 1][k] : 0);
      }
    }
    factorial[0] = 1;
    for (int j = 1; j <= kMaxProfileOrder; ++j) {
      factorial[j] = factorial[j - 1] * static_cast<u128>(j);
    }
  }
};

const CombinatoricsTable& tab() {
  static const CombinatoricsTable t;
  return t;
}

double to_double(u128 v) { return static_cast<double>(v); }

std::atomic<bool> g_binomial_fault{false};

// Single table read used by every consumer, so the verification fault hook
// poisons all of them consistently (C(3,1) reads one too large while armed).
double choose_entry(int n, int k) {
  double v = to_double(tab().choose[n][k]);
  if (g_binomial_fault.load(std::memory_order_relaxed) && n == 3 && k == 1) {
    v += 1.0;
  }
  return v;
}

void check_profile_order(int ell, const char* what) {
  if (ell < 0 || ell > kMaxProfileOrder) {
    throw order_error(std::string(what) + ": order " + std::to_string(ell) +
                      " outside [0, " + std::to_string(kMaxProfileOrder) + "]");
  }
}

// Cached P/Q coefficient arrays for all supported orders.
const ProfilePolynomials& poly_cache(int ell) {
  static const std::array<ProfilePolynomials, kMaxProfileOrder + 1> cache = [] {
    std::array<ProfilePolynomials, kMaxProfileOrder + 1> c;
    for (int ell = 0; ell <= kMaxProfileOrder; ++ell) {
      ProfilePolynomials p;
      p.order = ell;
      p.P.resize(ell + 1);
      p.Q.resize(ell == 0 ? 0 : ell);
      double sign = 1.0;
      for (int j = 0; j <= ell; ++j) {
        p.P[j] = sign * to_double(tab().choose[2 * ell][ell + j]) /
                 to_double(tab().factorial[j]);
        if (j < ell) {
          p.Q[j] = sign * to_double(tab().choose[2 * ell - 1][ell + j]) /
                   to_double(tab().factorial[j]);
        }
        sign = -sign;
      }
      c[ell] = std::move(p);
    }
    return c;
  }();
  return cache[ell];
}

double horner(const std::vector<double>& coeff, double s) {
  double acc = 0.0;
  for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * s + coeff[i];
  return acc;
}

// Horner evaluation of the derivative polynomial sum j c_j s^{j-1}.
double horner_ds(const std::vector<double>& coeff, double s) {
  double acc = 0.0;
  for (std::size_t i = coeff.size(); i-- > 1;) {
    acc = acc * s + static_cast<double>(i) * coeff[i];
  }
  return acc;
}

double int_pow(double x, int n) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= x;
  return acc;
}

void check_mode_time(double lambda, double t, const char* what) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw domain_error(std::string(what) + ": eigenvalue must be >= 0");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw domain_error(std::string(what) + ": time must be >= 0");
  }
}

}  // namespace

double binomial(int n, int k) {
  if (n < 0 || n >= kBinomialRows) {
    throw order_error("binomial: n outside [0, 60]");
  }
  if (k < 0 || k > n) return 0.0;
  return choose_entry(n, k);
}

ProfilePolynomials profile_poly(int ell) {
  check_profile_order(ell, "profile_poly");
  return poly_cache(ell);
}

double profile_v_mode(int ell, double lambda, double v00, double u0,
                      double t) {
  const ProfilePolynomials& p = poly_cache(ell);
  const double s = t * lambda;
  const double q = ell == 0 ? 0.0 : horner(p.Q, s);
  return int_pow(lambda, ell) * std::exp(-s) * (horner(p.P, s) * v00 - q * u0);
}

double profile_v_dt_mode(int ell, double lambda, double v00, double u0,
                         double t) {
  // d/dt [ e^{-s} R(s) ] = lambda e^{-s} (R' - R)(s)  with  s = t lambda.
  const ProfilePolynomials& p = poly_cache(ell);
  const double s = t * lambda;
  const double dp = horner_ds(p.P, s) - horner(p.P, s);
  const double dq = ell == 0 ? 0.0 : horner_ds(p.Q, s) - horner(p.Q, s);
  return int_pow(lambda, ell + 1) * std::exp(-s) * (dp * v00 - dq * u0);
}

double profile_vlk_mode(int ell, int k, double lambda, double v00, double u0,
                        double t) {
  const double s = t * lambda;
  const double sign = (ell + k) % 2 == 0 ? 1.0 : -1.0;
  // term_j = (-s)^j / j!, built incrementally.
  double term = 1.0;
  double av = 0.0;
  double bu = 0.0;
  for (int j = 0; j <= ell; ++j) {
    av += to_double(tab().choose[ell + k][j + k]) * term;
    if (j < ell) {
      bu += to_double(tab().choose[ell + k - 1][j + k]) * term;
    }
    term *= -s / (j + 1.0);
  }
  return sign * (av * v00 - bu * u0) * std::exp(-s);
}

ModalVector profile_v(int ell, const ModalOperator& op, const CauchyPair& data,
                      double t) {
  check_profile_order(ell, "profile_v");
  require_match(op, data, "profile_v");
  ModalVector out(op.size());
  parallel_for(op.size(), [&](std::size_t j) {
    out[j] = profile_v_mode(ell, op.modes[j].lambda, data.u0[j] + data.u1[j],
                            data.u0[j], t);
  });
  return out;
}

ModalVector partial_sum_V(int n, const ModalOperator& op,
                          const CauchyPair& data, double t) {
  if (n < 0 || n > kMaxProfileOrder + 1) {
    throw order_error("partial_sum_V: order outside [0, 31]");
  }
  require_match(op, data, "partial_sum_V");
  ModalVector out(op.size(), 0.0);
  parallel_for(op.size(), [&](std::size_t j) {
    const double v00 = data.u0[j] + data.u1[j];
    double acc = 0.0;
    for (int ell = 0; ell < n; ++ell) {
      acc += profile_v_mode(ell, op.modes[j].lambda, v00, data.u0[j], t);
    }
    out[j] = acc;
  });
  return out;
}

std::pair<ModalVector, ModalVector> partial_sum_V_dt(int n,
                                                     const ModalOperator& op,
                                                     const CauchyPair& data,
                                                     double t) {
  if (n < 0 || n > kMaxProfileOrder + 1) {
    throw order_error("partial_sum_V_dt: order outside [0, 31]");
  }
  require_match(op, data, "partial_sum_V_dt");
  ModalVector v(op.size(), 0.0), vdt(op.size(), 0.0);
  parallel_for(op.size(), [&](std::size_t j) {
    const double lambda = op.modes[j].lambda;
    const double v00 = data.u0[j] + data.u1[j];
    double acc = 0.0;
    double acc_dt = 0.0;
    for (int ell = 0; ell < n; ++ell) {
      acc += profile_v_mode(ell, lambda, v00, data.u0[j], t);
      acc_dt += profile_v_dt_mode(ell, lambda, v00, data.u0[j], t);
    }
    v[j] = acc;
    vdt[j] = acc_dt;
  });
  return {std::move(v), std::move(vdt)};
}

ModalVector profile_vlk(int ell, int k, const ModalOperator& op,
                        const CauchyPair& data, double t) {
  if (ell < 0 || k < 0 || ell + k > kMaxProfileOrder) {
    throw order_error("profile_vlk: require ell, k >= 0 and ell + k <= " +
                      std::to_string(kMaxProfileOrder));
  }
  require_match(op, data, "profile_vlk");
  ModalVector out(op.size());
  parallel_for(op.size(), [&](std::size_t j) {
    out[j] = profile_vlk_mode(ell, k, op.modes[j].lambda,
                              data.u0[j] + data.u1[j], data.u0[j], t);
  });
  return out;
}

std::pair<double, double> in_jn(int n, double lambda) {
  if (n < 1 || n > kMaxRegularizeOrder) {
    throw order_error("in_jn: order outside [1, " +
                      std::to_string(kMaxRegularizeOrder) + "]");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw domain_error("in_jn: eigenvalue must be finite and >= 0");
  }
  // All terms positive: I_n = sum C(2n-1,k) x^k y^{2n-1-k} with
  // x = lambda/(1+lambda), y = 1/(1+lambda), and likewise for J_n.
  const double x = lambda / (1.0 + lambda);
  const double y = 1.0 / (1.0 + lambda);
  double xk = 1.0;                       // x^k
  double ymk = int_pow(y, 2 * n - 1);    // y^{2n-1-k}
  double i = 0.0, j = 0.0;
  for (int k = 0; k < n; ++k) {
    i += choose_entry(2 * n - 1, k) * xk * ymk;
    j += choose_entry(2 * n - 1, n + k) * xk * ymk;
    xk *= x;
    ymk /= y;
  }
  return {i, j};
}

RegularizedPair regularize(int n, const ModalOperator& op,
                           const CauchyPair& data) {
  if (n < 1 || n > kMaxRegularizeOrder) {
    throw order_error("regularize: order outside [1, " +
                      std::to_string(kMaxRegularizeOrder) + "]");
  }
  require_match(op, data, "regularize");
  const std::size_t m = op.size();
  RegularizedPair out;
  out.n = n;
  out.star.u0.resize(m);
  out.star.u1.resize(m);
  out.starstar.u0.resize(m);
  out.starstar.u1.resize(m);
  parallel_for(m, [&](std::size_t jj) {
    const auto [i, j] = in_jn(n, op.modes[jj].lambda);
    out.star.u0[jj] = i * data.u0[jj];
    out.star.u1[jj] = i * data.u1[jj];
    out.starstar.u0[jj] = j * data.u0[jj];
    out.starstar.u1[jj] = j * data.u1[jj];
  });
  return out;
}

std::pair<ModalVector, ModalVector> remainder(int n, const ModalOperator& op,
                                              const CauchyPair& data,
                                              double t) {
  require_match(op, data, "remainder");
  auto [u, up] = evolve(op, data, t);
  auto [v, vdt] = partial_sum_V_dt(n, op, data, t);
  parallel_for(op.size(), [&](std::size_t j) {
    u[j] -= v[j];
    up[j] -= vdt[j];
  });
  return {std::move(u), std::move(up)};
}

double err_equation_oracle(int n, double lambda, double a, double b, double t,
                           double tol) {
  if (n < 1 || n > kMaxDerivativeOrder) {
    throw order_error("err_equation_oracle: order outside [1, 12]");
  }
  if (!(tol >= 1e-12) || !std::isfinite(tol)) {
    throw domain_error("err_equation_oracle: tolerance must be >= 1e-12");
  }
  check_mode_time(lambda, t, "err_equation_oracle");

  const double v00 = a + b;
  // Forcing g(s) = d/ds v_{n-1,0}(s) = lambda * v_{n-1,1}(s).
  const auto forcing = [&](double s) {
    return lambda * profile_vlk_mode(n - 1, 1, lambda, v00, a, s);
  };
  const auto rhs = [&](double s, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], -lambda * y[0] - y[1] - forcing(s)};
  };
  const auto rk4_step = [&](double s, std::array<double, 2> y, double h) {
    const auto k1 = rhs(s, y);
    const auto k2 = rhs(s + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const auto k3 = rhs(s + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const auto k4 = rhs(s + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    return y;
  };

  // Adaptive step doubling: compare one h-step against two h/2-steps.
  std::array<double, 2> y{0.0, (n % 2 == 0 ? 1.0 : -1.0) * b};
  const double scale0 = std::abs(a) + std::abs(b) + 1.0;
  double s = 0.0;
  double h = std::min(0.05, t > 0.0 ? t / 16.0 : 0.05);
  long steps = 0;
  constexpr long kMaxSteps = 4000000;
  while (s < t) {
    if (h > t - s) h = t - s;
    const auto full = rk4_step(s, y, h);
    const auto half = rk4_step(s + 0.5 * h, rk4_step(s, y, 0.5 * h), 0.5 * h);
    const double err = std::max(std::abs(full[0] - half[0]),
                                std::abs(full[1] - half[1])) / 15.0;
    const double scale =
        scale0 + std::abs(half[0]) + std::abs(half[1]);
    if (err <= tol * scale) {
      y = half;
      s += h;
      const double grow = err > 0.0 ? 0.9 * std::pow(tol * scale / err, 0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, grow));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(tol * scale / err, 0.2));
    }
    if (++steps > kMaxSteps) {
      throw convergence_error("err_equation_oracle: step limit exceeded");
    }
  }

  // d^n/dt^n U via D_{k+2} = -lambda D_k - D_{k+1} - g^{(k+1)}(t), where
  // g^{(k)}(t) = lambda^k v_{n-1,k}(t) by the derivative identity.
  std::vector<double> d(n + 1);
  d[0] = y[0];
  if (n >= 1) d[1] = y[1];
  for (int k = 0; k + 2 <= n; ++k) {
    const double gk1 = int_pow(lambda, k + 1) *
                       profile_vlk_mode(n - 1, k + 1, lambda, v00, a, t);
    d[k + 2] = -lambda * d[k] - d[k + 1] - gk1;
  }
  return d[n];
}

namespace testhooks {

void corrupt_binomial_table(bool enabled) {
  g_binomial_fault.store(enabled, std::memory_order_relaxed);
}

}  // namespace testhooks

}  // namespace del
