#include "del/domains.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "del/errors.hpp"
#include "del/parallel.hpp"
#include "del/reduce.hpp"

namespace del {

namespace {

constexpr int kMaxIntervalModes = 4096;  // dense basis table cap

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw domain_error(std::string(what) + " must be finite and > 0");
  }
}

// Interior + boundary node layout for the radial shell: a uniform patch
// [r_in, r_patch] holding a quarter of the nodes (the bump data, the local
// energy ball and the 2D log weight all live near the obstacle), then
// log-spaced growth out to r_out.  Returns m+2 points including both
// boundaries.
std::vector<double> radial_nodes(double r_in, double r_out, int m) {
  const double r_patch = std::min(10.0 * r_in, r_in + 0.25 * (r_out - r_in));
  const int n_uni = std::max(2, m / 4);
  const int n_log = m + 1 - n_uni;  // segments in the log part
  std::vector<double> r(m + 2);
  const double h = (r_patch - r_in) / n_uni;
  for (int i = 0; i <= n_uni; ++i) r[i] = r_in + h * i;
  const double g = std::pow(r_out / r_patch, 1.0 / n_log);
  double x = r_patch;
  for (int i = 1; i <= n_log; ++i) {
    x *= g;
    r[n_uni + i] = x;
  }
  r[0] = r_in;
  r[m + 1] = r_out;
  return r;
}

}  // namespace

RealizedDomain build_interval(double L, int m) {
  check_positive(L, "build_interval: L");
  if (m < 1 || m > kMaxIntervalModes) {
    throw order_error("build_interval: m outside [1, " +
                      std::to_string(kMaxIntervalModes) + "]");
  }
  const std::size_t n = static_cast<std::size_t>(m);
  RealizedDomain d;
  d.grid.geometry = {GeometryKind::interval, 1, 0.0, 0.0, L};
  d.grid.nodes.resize(n);
  d.grid.cellweights.assign(n, L / (m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    d.grid.nodes[i] = L * (i + 1.0) / (m + 1);
  }
  d.op.label = "interval";
  d.op.modes.resize(n);
  d.eigenbasis.resize(n * n);
  const double pi = std::numbers::pi;
  const double amp = std::sqrt(2.0 / L);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = (k + 1.0) * pi / L;
    d.op.modes[k] = {kk * kk, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
      d.eigenbasis[k * n + i] = amp * std::sin(kk * d.grid.nodes[i]);
    }
  }
  return d;
}

WholeLine build_whole_line(double xi_min, double xi_max, int m) {
  check_positive(xi_min, "build_whole_line: xi_min");
  if (!(xi_max > xi_min) || !std::isfinite(xi_max)) {
    throw range_error("build_whole_line: require 0 < xi_min < xi_max");
  }
  if (m < 4) {
    throw order_error("build_whole_line: m must be >= 4");
  }
  WholeLine w;
  w.xi_min = xi_min;
  w.xi_max = xi_max;
  w.op.label = "whole-line";
  w.xi.resize(m);
  w.op.modes.resize(m);
  // Log-uniform cells [E_j, E_{j+1}] with geometric-center nodes; the weight
  // 2 * cell width accounts for both Fourier half-lines of even/odd data.
  const double rho = std::pow(xi_max / xi_min, 1.0 / m);
  double edge = xi_min;
  for (int j = 0; j < m; ++j) {
    const double next = xi_min * std::pow(rho, j + 1.0);
    w.xi[j] = std::sqrt(edge * next);
    w.op.modes[j] = {w.xi[j] * w.xi[j], 2.0 * (next - edge)};
    edge = next;
  }
  return w;
}

ModalVector WholeLine::analyze(
    const std::function<double(double)>& fhat) const {
  ModalVector c(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) c[j] = fhat(xi[j]);
  return c;
}

RealizedDomain build_radial_exterior(int N, double r_in, double r_out, int m) {
  if (N != 2 && N != 3) {
    throw domain_error("build_radial_exterior: N must be 2 or 3");
  }
  check_positive(r_in, "build_radial_exterior: r_in");
  if (!(r_out > 4.0 * r_in) || !std::isfinite(r_out)) {
    throw range_error("build_radial_exterior: require r_out > 4 r_in");
  }
  if (m < 64) {
    throw order_error("build_radial_exterior: m must be >= 64");
  }

  const std::vector<double> r = radial_nodes(r_in, r_out, m);
  const double omega = N == 3 ? 4.0 * std::numbers::pi : 2.0 * std::numbers::pi;
  const std::size_t n = static_cast<std::size_t>(m);

  // Finite volume: face conductances s_i = omega F_i^{N-1} / (r_{i+1} - r_i)
  // at the midpoint faces F_i, cell volumes w_i = omega (F_i^N - F_{i-1}^N)/N.
  std::vector<double> face(m + 1), cond(m + 1), vol(n);
  for (int i = 0; i <= m; ++i) {
    face[i] = 0.5 * (r[i] + r[i + 1]);
    const double fpow = N == 3 ? face[i] * face[i] : face[i];
    cond[i] = omega * fpow / (r[i + 1] - r[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a = face[i];
    const double b = face[i + 1];
    vol[i] = N == 3 ? omega * (b * b * b - a * a * a) / 3.0
                    : omega * (b * b - a * a) / 2.0;
  }

  // Symmetrized generalized problem K y = theta D y, T = D^{-1/2} K D^{-1/2}.
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = (cond[i] + cond[i + 1]) / vol[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    off[i] = -cond[i + 1] / std::sqrt(vol[i] * vol[i + 1]);
  }

  TridiagEig eig = tridiag_eigh(diag, off);

  // Clamp discretization noise on the nonnegative spectrum.
  double max_diag = 0.0;
  for (double v : diag) max_diag = std::max(max_diag, std::abs(v));
  const double clamp = 1e-12 * max_diag;
  for (double& v : eig.values) {
    if (v < -clamp) {
      throw numeric_error(
          "build_radial_exterior: negative eigenvalue beyond clamp threshold");
    }
    if (v < 0.0) v = 0.0;
  }

  RealizedDomain d;
  d.grid.geometry = {GeometryKind::radial, N, r_in, r_out, 0.0};
  d.grid.nodes.assign(r.begin() + 1, r.end() - 1);
  d.grid.cellweights = vol;
  d.op.label = N == 3 ? "radial-exterior-3d" : "radial-exterior-2d";
  d.op.modes.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    d.op.modes[k] = {eig.values[k], 1.0};
  }
  // phi_k = D^{-1/2} y_k is orthonormal under the cell volumes.
  d.eigenbasis.resize(n * n);
  parallel_for(n, [&](std::size_t k) {
    for (std::size_t i = 0; i < n; ++i) {
      d.eigenbasis[k * n + i] = eig.vectors[k * n + i] / std::sqrt(vol[i]);
    }
  });
  return d;
}

ModalVector analyze(const RealizedDomain& d, const std::vector<double>& f) {
  const std::size_t n = d.size();
  if (f.size() != n) {
    throw shape_error("analyze: grid function length mismatch");
  }
  ModalVector c(n);
  parallel_for(n, [&](std::size_t k) {
    CompensatedSum acc;
    const double* phi = d.eigenbasis.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      acc.add(d.grid.cellweights[i] * phi[i] * f[i]);
    }
    c[k] = acc.value();
  });
  return c;
}

std::vector<double> synthesize(const RealizedDomain& d, const ModalVector& c) {
  const std::size_t n = d.size();
  if (c.size() != n) {
    throw shape_error("synthesize: coefficient length mismatch");
  }
  std::vector<double> f(n);
  parallel_for(n, [&](std::size_t i) {
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) {
      acc.add(c[k] * d.eigenbasis[k * n + i]);
    }
    f[i] = acc.value();
  });
  return f;
}

std::function<double(double)> harmonic_profile(int N, double r_in) {
  if (N != 2 && N != 3) {
    throw domain_error("harmonic_profile: N must be 2 or 3");
  }
  check_positive(r_in, "harmonic_profile: r_in");
  if (N == 3) {
    return [r_in](double r) {
      if (r < r_in) throw domain_error("harmonic_profile: r < r_in");
      return 1.0 - r_in / r;
    };
  }
  return [r_in](double r) {
    if (r < r_in) throw domain_error("harmonic_profile: r < r_in");
    return std::log(r / r_in);
  };
}

TridiagEig tridiag_eigh(const std::vector<double>& diag,
                        const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) {
    throw shape_error("tridiag_eigh: empty matrix");
  }
  if (offdiag.size() + 1 != n) {
    throw shape_error("tridiag_eigh: offdiagonal must have length n-1");
  }
  // dstemr overwrites its inputs and wants the offdiagonal padded to length n.
  std::vector<double> d = diag;
  std::vector<double> e = offdiag;
  e.push_back(0.0);

  TridiagEig out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  std::vector<lapack_int> isuppz(2 * n);
  lapack_int found = 0;
  lapack_logical tryrac = 1;
  const lapack_int ln = static_cast<lapack_int>(n);
  // Column-major with ldz = n: column k is stored contiguously, which is
  // exactly our vectors[k*n + i] layout.
  const lapack_int info = LAPACKE_dstemr(
      LAPACK_COL_MAJOR, 'V', 'A', ln, d.data(), e.data(), 0.0, 0.0, 0, 0,
      &found, out.values.data(), out.vectors.data(), ln, ln, isuppz.data(),
      &tryrac);
  if (info != 0 || found != ln) {
    throw numeric_error("tridiag_eigh: MRRR eigensolver failed (info=" +
                        std::to_string(info) + ")");
  }
  return out;
}

}  // namespace del
