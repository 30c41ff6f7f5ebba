#include "del/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "del/domains.hpp"
#include "del/errors.hpp"
#include "del/expansion.hpp"
#include "del/functionals.hpp"
#include "del/generators.hpp"
#include "del/rates.hpp"
#include "del/version.hpp"

namespace del {

namespace {

// One of the two realization flavors: a grid-backed domain with an
// eigenbasis, or the grid-free whole-line quadrature.
struct Realization {
  std::optional<RealizedDomain> dom;
  std::optional<WholeLine> line;

  const ModalOperator& op() const { return dom ? dom->op : line->op; }
};

Realization realize(const DomainSpec& d) {
  Realization r;
  switch (d.kind) {
    case GeometryKind::interval:
      r.dom = build_interval(d.L, d.m);
      break;
    case GeometryKind::line:
      r.line = build_whole_line(d.xi_min, d.xi_max, d.m);
      break;
    case GeometryKind::radial:
      r.dom = build_radial_exterior(d.N, d.r_in, d.r_out, d.m);
      break;
  }
  return r;
}

CauchyPair initial_data(const Realization& r, const DataSpec& s) {
  const ModalOperator& op = r.op();
  if (s.generator == "random_energy") {
    return random_energy(op, s.seed.value());
  }
  if (r.line) {
    ModalVector u0;
    if (s.generator == "gaussian") {
      u0 = r.line->analyze(gaussian_fourier(s.width));
    } else if (s.generator == "heavy_tail") {
      u0 = r.line->analyze(heavy_tail_fourier(s.delta));
    } else {
      throw config_error("run: generator \"" + s.generator +
                         "\" is not realizable on the whole line");
    }
    return {std::move(u0), ModalVector(op.size(), 0.0)};
  }
  const RealizedDomain& dom = *r.dom;
  std::vector<double> profile(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const double x = dom.grid.nodes[i];
    if (s.generator == "gaussian") {
      profile[i] = gaussian_profile(x, s.center, s.width);
    } else if (s.generator == "bump") {
      profile[i] = bump_profile(x, s.support_lo, s.support_hi);
    } else {
      throw config_error("run: generator \"" + s.generator +
                         "\" is not realizable on a grid domain");
    }
  }
  return {analyze(dom, profile), ModalVector(dom.size(), 0.0)};
}

double metric_value(Metric metric, const Realization& r, const ModalVector& rem,
                    const ModalVector& rem_dt, double local_radius,
                    std::optional<std::vector<double>>& synth_r,
                    std::optional<std::vector<double>>& synth_rp) {
  const ModalOperator& op = r.op();
  switch (metric) {
    case Metric::l2:
      return std::sqrt(l2_sq(op, rem));
    case Metric::energy:
      return energy(op, rem, rem_dt);
    case Metric::sharp:
      return h_norm_sq(op, rem, rem_dt);
    case Metric::local_energy: {
      const RealizedDomain& dom = *r.dom;  // guaranteed by config validation
      if (!synth_r) synth_r = synthesize(dom, rem);
      if (!synth_rp) synth_rp = synthesize(dom, rem_dt);
      return local_energy(dom, *synth_r, *synth_rp, local_radius);
    }
    case Metric::weighted_l1_log: {
      const RealizedDomain& dom = *r.dom;
      if (!synth_r) synth_r = synthesize(dom, rem);
      return weighted_l1_log(*synth_r, dom.grid, dom.grid.geometry.r_in);
    }
  }
  throw config_error("run: unhandled metric");
}

void judge(MetricSeries& series, const Expectation& exp,
           const std::string& hash) {
  // Informational fit first; series too degenerate to fit simply carry none.
  try {
    series.fit = fit_loglog(series.samples);
  } catch (const error&) {
    series.fit.reset();
  }

  switch (exp.kind) {
    case Expectation::Kind::none:
      return;
    case Expectation::Kind::slope: {
      const BoundCheck check = check_decay(series.samples, exp.value, exp.tol);
      series.fit = check.fit;
      SeriesVerdict v;
      v.kind = "slope";
      v.pass = check.pass;
      v.expected = check.expected_slope;
      v.tol = check.tol;
      v.gap = check.gap;
      v.config_hash = hash;
      series.verdict = v;
      return;
    }
    case Expectation::Kind::log_corrected: {
      const auto [lo, hi] = log_corrected_fit(series.samples, exp.p, exp.sigma);
      SeriesVerdict v;
      v.kind = "log_corrected";
      v.lo = lo;
      v.hi = hi;
      v.ratio = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
      v.ratio_max = exp.ratio_max;
      v.pass = lo > 0.0 && v.ratio <= exp.ratio_max;
      v.config_hash = hash;
      series.verdict = v;
      return;
    }
    case Expectation::Kind::plateau: {
      const Plateau p = plateau_check(series.samples, exp.window_fraction);
      SeriesVerdict v;
      v.kind = "plateau";
      v.lo = p.lo;
      v.hi = p.hi;
      v.ratio = p.ratio;
      v.ratio_max = exp.ratio_max;
      v.pass = p.lo > 0.0 && p.ratio <= exp.ratio_max;
      v.config_hash = hash;
      series.verdict = v;
      return;
    }
  }
}

}  // namespace

Report run(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  const Realization real = realize(cfg.domain);
  const ModalOperator& op = real.op();
  const CauchyPair data = initial_data(real, cfg.data);
  const std::vector<double> times =
      sample_schedule(cfg.schedule.t0, cfg.schedule.t1, cfg.schedule.count);

  // series_samples[metric_idx][order_idx][time_idx]
  const std::size_t n_metrics = cfg.metrics.size();
  const std::size_t n_orders = cfg.orders.size();
  std::vector<std::vector<std::vector<RateSample>>> samples(
      n_metrics, std::vector<std::vector<RateSample>>(n_orders));

  for (double t : times) {
    const auto [u, up] = evolve(op, data, t);
    for (std::size_t oi = 0; oi < n_orders; ++oi) {
      const int n = cfg.orders[oi];
      auto [V, Vdt] = partial_sum_V_dt(n, op, data, t);
      for (std::size_t j = 0; j < op.size(); ++j) {
        V[j] = u[j] - V[j];
        Vdt[j] = up[j] - Vdt[j];
      }
      // V, Vdt now hold the remainder pair (u - V_n, u' - d/dt V_n).
      std::optional<std::vector<double>> synth_r, synth_rp;
      for (std::size_t mi = 0; mi < n_metrics; ++mi) {
        const double value = metric_value(cfg.metrics[mi], real, V, Vdt,
                                          cfg.local_radius, synth_r, synth_rp);
        samples[mi][oi].push_back({t, value});
      }
    }
  }

  Report report;
  report.schema = kReportSchema;
  report.tool_version = kToolVersion;
  report.config_echo = canonical_json(cfg);
  report.config_hash = config_hash(cfg);

  for (std::size_t mi = 0; mi < n_metrics; ++mi) {
    for (std::size_t oi = 0; oi < n_orders; ++oi) {
      MetricSeries s;
      s.base = metric_name(cfg.metrics[mi]);
      s.order = cfg.orders[oi];
      s.label = s.base + "[n=" + std::to_string(s.order) + "]";
      s.samples = std::move(samples[mi][oi]);
      judge(s, cfg.expectation, report.config_hash);
      report.series.push_back(std::move(s));
    }
  }

  const auto stop = std::chrono::steady_clock::now();
  report.runtime_seconds =
      std::chrono::duration<double>(stop - start).count();
  return report;
}

Report run_and_write(const ExperimentConfig& cfg) {
  Report report = run(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path base =
      std::filesystem::path(cfg.out_dir) / cfg.name;
  write_csv(report, (base.string() + ".csv"));
  write_json(report, (base.string() + ".json"));
  return report;
}

}  // namespace del
