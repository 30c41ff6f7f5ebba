#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "del/domains.hpp"

namespace del {

//============================================================================
// Declarative experiment configuration (JSON).  All times are dimensionless;
// radii are in the domain's length unit.  Validation collects every violated
// guard into a single config_error so a bad file is diagnosed in one pass.
//============================================================================

struct DomainSpec {
  GeometryKind kind = GeometryKind::interval;
  double L = 0.0;                      // interval
  double xi_min = 0.0, xi_max = 0.0;   // whole line
  int N = 0;                           // radial dimension
  double r_in = 0.0, r_out = 0.0;      // radial shell
  int m = 0;                           // modes / nodes
};

struct DataSpec {
  std::string generator;  // gaussian | bump | heavy_tail | random_energy
  double center = 0.0;
  double width = 1.0;
  double support_lo = 0.0, support_hi = 0.0;
  double delta = 0.0;
  std::optional<std::uint64_t> seed;  // mandatory for randomized generators
};

struct ScheduleSpec {
  double t0 = 0.0;
  double t1 = 0.0;
  int count = 0;
};

enum class Metric { l2, energy, sharp, local_energy, weighted_l1_log };

std::string metric_name(Metric m);

struct Expectation {
  enum class Kind { none, slope, log_corrected, plateau };
  Kind kind = Kind::none;
  double value = 0.0;            // expected log-log slope
  double tol = 0.0;              // slope tolerance
  double p = 0.0, sigma = 0.0;   // log-corrected compensation exponents
  double ratio_max = 0.0;        // admissible hi/lo ratio
  double window_fraction = 0.5;  // plateau trailing window
};

struct ExperimentConfig {
  std::string name = "experiment";
  DomainSpec domain;
  DataSpec data;
  std::vector<int> orders;  // expansion orders n of the remainders u - V_n
  ScheduleSpec schedule;
  std::vector<Metric> metrics;
  double local_radius = 0.0;  // ball radius for the local_energy metric
  Expectation expectation;
  std::string out_dir = "out";
};

// Parse + validate.  Violations are collected and reported together;
// malformed JSON or any violated guard throws config_error.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical serialization (sorted keys, round-trip floats): the config echo
// embedded in reports, and the input of the config hash.
std::string canonical_json(const ExperimentConfig& cfg);

// FNV-1a (64 bit) of the canonical serialization, as fixed-width hex.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace del
