#pragma once

#include "del/config.hpp"
#include "del/report.hpp"

namespace del {

//============================================================================
// Experiment driver: realizes the configured domain, prepares initial data,
// samples every metric for every requested expansion order over the time
// schedule, applies the configured expectation to each series, and assembles
// the Report.
//
// Metric conventions (per remainder r = u - V_n, r' = u' - d/dt V_n):
//   l2              ||r||              (norm)
//   energy          E(r, r')           (quadratic)
//   sharp           ||(r, r')||^2_H    (quadratic)
//   local_energy    energy restricted to |x| <= local_radius (quadratic)
//   weighted_l1_log sum w_i (1 + log(r_i/r_in)) |r_i|  (linear)
//============================================================================

// Executes the experiment in memory; writes nothing.
Report run(const ExperimentConfig& cfg);

// run() plus artifacts <out>/<name>.csv and <out>/<name>.json.
Report run_and_write(const ExperimentConfig& cfg);

}  // namespace del
