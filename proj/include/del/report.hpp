#pragma once

#include <optional>
#include <string>
#include <vector>

#include "del/config.hpp"
#include "del/rates.hpp"

namespace del {

//============================================================================
// Run artifacts.  A Report is the complete, reproducible record of one
// experiment: canonical config echo + hash, the sampled metric series, and
// any rate verdicts.  CSV carries the raw samples; JSON carries everything.
//
// Numbers are written with shortest round-trip formatting ('.' decimal
// separator, no locale), so identical runs produce identical bytes.  The
// wall-clock runtime_seconds field is the one value that varies between
// otherwise identical runs; it is excluded from determinism comparisons.
//============================================================================

struct SeriesVerdict {
  std::string kind;      // slope | log_corrected | plateau
  bool pass = false;
  double expected = 0.0;  // expected slope (slope kind)
  double tol = 0.0;
  double gap = 0.0;       // |fitted - expected|
  double lo = 0.0, hi = 0.0, ratio = 0.0;  // compensated-bound kinds
  double ratio_max = 0.0;
  std::string config_hash;  // every verdict names the config it judged
};

struct MetricSeries {
  std::string label;   // e.g. "energy[n=2]"
  std::string base;    // metric name without the order tag
  int order = 0;       // expansion order of the remainder this series tracks
  std::vector<RateSample> samples;
  std::optional<RateFit> fit;          // informational log-log fit
  std::optional<SeriesVerdict> verdict;
};

struct Report {
  std::string schema;
  std::string tool_version;
  std::string config_echo;  // canonical JSON text of the driving config
  std::string config_hash;
  double runtime_seconds = 0.0;
  std::vector<MetricSeries> series;

  bool all_pass() const;
};

// CSV: header "metric,t,value", one row per sample, LF line endings.
std::string to_csv(const Report& report);
void write_csv(const Report& report, const std::string& path);

// JSON: schema-versioned, embeds the canonical config echo as an object.
std::string to_json_text(const Report& report);
void write_json(const Report& report, const std::string& path);
Report report_from_json(const std::string& json_text);
Report load_report_file(const std::string& path);

// Shortest round-trip decimal formatting used by both writers.
std::string format_double(double value);

}  // namespace del
