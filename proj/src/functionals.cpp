#include "del/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "del/errors.hpp"
#include "del/parallel.hpp"
#include "del/quadrature.hpp"
#include "del/reduce.hpp"

namespace del {

namespace {

// Parallel per-mode fill followed by the fixed serial compensated reduction:
// the one summation pattern every functional uses.
template <class Term>
double reduce_modes(std::size_t n, Term&& term) {
  std::vector<double> slot(n);
  parallel_for(n, [&](std::size_t j) { slot[j] = term(j); });
  return csum(slot);
}

void require_grid_function(const Grid1D& grid, const std::vector<double>& f,
                           const char* what) {
  if (f.size() != grid.nodes.size()) {
    throw shape_error(std::string(what) + ": grid function length " +
                      std::to_string(f.size()) + " != node count " +
                      std::to_string(grid.nodes.size()));
  }
}

// Dirichlet boundary positions of a grid that has a physical realization.
std::pair<double, double> boundary_of(const Grid1D& grid, const char* what) {
  switch (grid.geometry.kind) {
    case GeometryKind::interval:
      return {0.0, grid.geometry.L};
    case GeometryKind::radial:
      return {grid.geometry.r_in, grid.geometry.r_out};
    case GeometryKind::line:
      break;
  }
  throw domain_error(std::string(what) +
                     ": whole-line spectral grids have no physical nodes");
}

// Centered first derivative on the (nonuniform) grid, with the homogeneous
// Dirichlet values at both physical boundaries appended so every interior
// node has two neighbors.
std::vector<double> gradient(const Grid1D& grid, const std::vector<double>& f,
                             const char* what) {
  const auto [x_lo, x_hi] = boundary_of(grid, what);
  const std::size_t m = grid.nodes.size();
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double xm = i == 0 ? x_lo : grid.nodes[i - 1];
    const double xp = i + 1 == m ? x_hi : grid.nodes[i + 1];
    const double fm = i == 0 ? 0.0 : f[i - 1];
    const double fp = i + 1 == m ? 0.0 : f[i + 1];
    const double hm = grid.nodes[i] - xm;
    const double hp = xp - grid.nodes[i];
    // Exact for quadratics on a nonuniform stencil.
    g[i] = (hm * hm * fp - hp * hp * fm + (hp * hp - hm * hm) * f[i]) /
           (hm * hp * (hm + hp));
  }
  return g;
}

}  // namespace

double l2_sq(const ModalOperator& op, const ModalVector& f) {
  require_match(op, f, "l2_sq");
  return reduce_modes(op.size(), [&](std::size_t j) {
    return op.modes[j].weight * f[j] * f[j];
  });
}

double energy(const ModalOperator& op, const ModalVector& u,
              const ModalVector& uprime) {
  require_match(op, u, "energy");
  require_match(op, uprime, "energy");
  return reduce_modes(op.size(), [&](std::size_t j) {
    return op.modes[j].weight *
           (uprime[j] * uprime[j] + op.modes[j].lambda * u[j] * u[j]);
  });
}

double h_norm_sq(const ModalOperator& op, const ModalVector& f,
                 const ModalVector& g) {
  require_match(op, f, "h_norm_sq");
  require_match(op, g, "h_norm_sq");
  return reduce_modes(op.size(), [&](std::size_t j) {
    const double fj = f[j];
    const double shifted = g[j] + 0.5 * fj;
    return op.modes[j].weight * (op.modes[j].lambda * fj * fj +
                                 0.25 * fj * fj + shifted * shifted);
  });
}

EnergyReport energy_report(const ModalOperator& op, const ModalVector& u,
                           const ModalVector& uprime) {
  EnergyReport r;
  r.energy = energy(op, u, uprime);
  r.sharp = h_norm_sq(op, u, uprime);
  r.l2sq = l2_sq(op, u);
  return r;
}

GeneratorPair generator_apply(const ModalOperator& op, const GeneratorPair& p) {
  require_match(op, p.f, "generator_apply");
  require_match(op, p.g, "generator_apply");
  GeneratorPair out;
  out.f.resize(op.size());
  out.g.resize(op.size());
  parallel_for(op.size(), [&](std::size_t j) {
    out.f[j] = p.g[j];
    out.g[j] = -op.modes[j].lambda * p.f[j] - p.g[j];
  });
  return out;
}

double graph_norm_sq(const ModalOperator& op, const GeneratorPair& p, int n) {
  if (n < 0 || n > kMaxDerivativeOrder) {
    throw order_error("graph_norm_sq: order outside [0, 12]");
  }
  GeneratorPair cur = p;
  double acc = h_norm_sq(op, cur.f, cur.g);
  for (int k = 1; k <= n; ++k) {
    cur = generator_apply(op, cur);
    acc += h_norm_sq(op, cur.f, cur.g);
  }
  return acc;
}

double dissipation_integral(const ModalOperator& op, const CauchyPair& data,
                            double t1, double tol) {
  require_match(op, data, "dissipation_integral");
  if (!(t1 > 0.0) || !std::isfinite(t1)) {
    throw domain_error("dissipation_integral: t1 must be finite and > 0");
  }
  if (!(tol >= 1e-12)) {
    throw domain_error("dissipation_integral: tolerance must be >= 1e-12");
  }
  const auto integrand = [&](double s) {
    const auto [u, up] = evolve(op, data, s);
    (void)u;
    return 2.0 * l2_sq(op, up);
  };
  return integrate(integrand, 0.0, t1, tol, tol);
}

double heat_square_integral(const ModalOperator& op, const ModalVector& f,
                            int m, double tmax, double tol) {
  require_match(op, f, "heat_square_integral");
  if (m < 0 || m > 8) {
    throw order_error("heat_square_integral: moment outside [0, 8]");
  }
  if (!(tmax > 0.0) || !std::isfinite(tmax)) {
    throw domain_error("heat_square_integral: tmax must be finite and > 0");
  }
  if (!(tol >= 1e-12)) {
    throw domain_error("heat_square_integral: tolerance must be >= 1e-12");
  }
  const auto integrand = [&](double t) {
    const double weight_t = std::pow(1.0 + t, m);
    return weight_t * reduce_modes(op.size(), [&](std::size_t j) {
             const double lam = op.modes[j].lambda;
             double pw = lam;  // lambda^{m+1}
             for (int i = 0; i < m; ++i) pw *= lam;
             return op.modes[j].weight * pw * std::exp(-2.0 * lam * t) * f[j] *
                    f[j];
           });
  };
  return integrate(integrand, 0.0, tmax, tol, tol);
}

double lq_norm(const std::vector<double>& f,
               const std::vector<double>& cellweights, double q) {
  if (f.size() != cellweights.size()) {
    throw shape_error("lq_norm: function/weight length mismatch");
  }
  if (std::isnan(q) || q < 1.0) {
    throw domain_error("lq_norm: q must be >= 1");
  }
  if (std::isinf(q)) {
    double mx = 0.0;
    for (double v : f) mx = std::max(mx, std::abs(v));
    return mx;
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc.add(cellweights[i] * std::pow(std::abs(f[i]), q));
  }
  return std::pow(acc.value(), 1.0 / q);
}

double weighted_l1_log(const std::vector<double>& f, const Grid1D& grid,
                       double r_in) {
  require_grid_function(grid, f, "weighted_l1_log");
  if (!(r_in > 0.0)) {
    throw domain_error("weighted_l1_log: r_in must be > 0");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = grid.nodes[i];
    if (r < r_in) {
      throw domain_error("weighted_l1_log: node below r_in");
    }
    acc.add(grid.cellweights[i] * (1.0 + std::log(r / r_in)) * std::abs(f[i]));
  }
  return acc.value();
}

double local_energy(const RealizedDomain& domain, const std::vector<double>& u,
                    const std::vector<double>& uprime, double R) {
  const Grid1D& grid = domain.grid;
  require_grid_function(grid, u, "local_energy");
  require_grid_function(grid, uprime, "local_energy");
  const auto [x_lo, x_hi] = boundary_of(grid, "local_energy");
  (void)x_hi;
  if (!std::isfinite(R) || R < x_lo) {
    throw domain_error("local_energy: radius below the inner boundary");
  }
  const std::vector<double> grad = gradient(grid, u, "local_energy");
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    if (grid.nodes[i] > R) break;  // nodes ascend
    acc.add(grid.cellweights[i] *
            (uprime[i] * uprime[i] + grad[i] * grad[i]));
  }
  return acc.value();
}

double nash_ratio(const std::vector<double>& f, const Grid1D& grid,
                  NashVariant variant, std::optional<double> r_in) {
  require_grid_function(grid, f, "nash_ratio");
  const int N = grid.geometry.kind == GeometryKind::radial ? grid.geometry.N : 1;

  CompensatedSum l1_acc, l2_acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    l1_acc.add(grid.cellweights[i] * std::abs(f[i]));
    l2_acc.add(grid.cellweights[i] * f[i] * f[i]);
  }
  const double l1 = l1_acc.value();
  const double l2sq = l2_acc.value();
  if (l2sq <= 0.0) {
    throw degenerate_error("nash_ratio: zero function");
  }

  const std::vector<double> grad = gradient(grid, f, "nash_ratio");
  CompensatedSum g_acc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    g_acc.add(grid.cellweights[i] * grad[i] * grad[i]);
  }
  const double gradsq = g_acc.value();
  if (gradsq <= 0.0) {
    throw degenerate_error("nash_ratio: vanishing gradient");
  }

  switch (variant) {
    case NashVariant::nash: {
      const double lhs = std::pow(l2sq, 1.0 + 2.0 / N);  // ||f||_2^{2+4/N}
      return lhs / (std::pow(l1, 4.0 / N) * gradsq);
    }
    case NashVariant::gn: {
      const double p = 1.0 + 2.0 / N;
      CompensatedSum lp_acc;
      for (std::size_t i = 0; i < f.size(); ++i) {
        lp_acc.add(grid.cellweights[i] * std::pow(std::abs(f[i]), p));
      }
      const double lhs = lp_acc.value();  // ||f||_p^p
      const double e1 = (N * N + 4.0) / (N * (N + 2.0));
      const double eg = 4.0 / (N + 2.0);
      return lhs / (std::pow(l1, e1) * std::pow(std::sqrt(gradsq), eg));
    }
    case NashVariant::lognash: {
      double r0 = 0.0;
      if (r_in.has_value()) {
        r0 = *r_in;
      } else if (grid.geometry.kind == GeometryKind::radial) {
        r0 = grid.geometry.r_in;
      } else {
        throw domain_error("nash_ratio: lognash requires r_in");
      }
      CompensatedSum h_acc;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = grid.nodes[i];
        if (r < r0) {
          throw domain_error("nash_ratio: node below r_in");
        }
        h_acc.add(grid.cellweights[i] * (1.0 + std::log(r / r0)) * f[i] * f[i]);
      }
      const double mu = weighted_l1_log(f, grid, r0);
      if (mu <= 0.0) {
        throw degenerate_error("nash_ratio: zero weighted L1 norm");
      }
      return h_acc.value() / (mu * std::sqrt(gradsq));
    }
  }
  throw domain_error("nash_ratio: unknown variant");
}

}  // namespace del
