#include "del/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "del/errors.hpp"
#include "json.hpp"

namespace del {

using njson = nlohmann::ordered_json;

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::l2: return "l2";
    case Metric::energy: return "energy";
    case Metric::sharp: return "sharp";
    case Metric::local_energy: return "local_energy";
    case Metric::weighted_l1_log: return "weighted_l1_log";
  }
  throw config_error("metric_name: unhandled metric");
}

namespace {

// ---- collected-violation helpers ------------------------------------------

struct Check {
  std::vector<std::string> problems;

  void fail(const std::string& msg) { problems.push_back(msg); }

  void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }

  [[noreturn]] void raise() const {
    std::ostringstream os;
    os << "config: " << problems.size()
       << (problems.size() == 1 ? " problem:" : " problems:");
    for (const auto& p : problems) os << "\n  - " << p;
    throw config_error(os.str());
  }
};

void check_keys(const njson& obj, const char* where,
                std::initializer_list<const char*> allowed, Check& chk) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) { known = true; break; }
    }
    if (!known) chk.fail(std::string(where) + ": unknown key \"" + item.key() + "\"");
  }
}

// Fetches a required finite number; on any failure records the problem and
// returns fallback so validation can continue scanning the rest of the file.
double need_number(const njson& obj, const char* key, const char* where,
                   Check& chk, double fallback = 0.0) {
  if (!obj.contains(key)) {
    chk.fail(std::string(where) + ": missing required key \"" + key + "\"");
    return fallback;
  }
  const njson& v = obj.at(key);
  if (!v.is_number()) {
    chk.fail(std::string(where) + ": \"" + key + "\" must be a number");
    return fallback;
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    chk.fail(std::string(where) + ": \"" + key + "\" must be finite");
    return fallback;
  }
  return x;
}

int need_int(const njson& obj, const char* key, const char* where, Check& chk,
             int fallback = 0) {
  if (!obj.contains(key)) {
    chk.fail(std::string(where) + ": missing required key \"" + key + "\"");
    return fallback;
  }
  const njson& v = obj.at(key);
  if (!v.is_number_integer()) {
    chk.fail(std::string(where) + ": \"" + key + "\" must be an integer");
    return fallback;
  }
  return v.get<int>();
}

std::string need_string(const njson& obj, const char* key, const char* where,
                        Check& chk, const std::string& fallback = "") {
  if (!obj.contains(key)) {
    chk.fail(std::string(where) + ": missing required key \"" + key + "\"");
    return fallback;
  }
  const njson& v = obj.at(key);
  if (!v.is_string()) {
    chk.fail(std::string(where) + ": \"" + key + "\" must be a string");
    return fallback;
  }
  return v.get<std::string>();
}

// ---- section parsers -------------------------------------------------------

DomainSpec parse_domain(const njson& obj, Check& chk) {
  DomainSpec d;
  if (!obj.is_object()) {
    chk.fail("domain: must be an object");
    return d;
  }
  const std::string kind = need_string(obj, "kind", "domain", chk);
  if (kind == "interval") {
    d.kind = GeometryKind::interval;
    check_keys(obj, "domain", {"kind", "L", "m"}, chk);
    d.L = need_number(obj, "L", "domain", chk);
    d.m = need_int(obj, "m", "domain", chk);
    chk.require(d.L > 0.0, "domain: interval length L must be positive");
    chk.require(d.m >= 1 && d.m <= 4096,
                "domain: interval mode count m must lie in [1, 4096]");
  } else if (kind == "whole_line") {
    d.kind = GeometryKind::line;
    check_keys(obj, "domain", {"kind", "xi_min", "xi_max", "m"}, chk);
    d.xi_min = need_number(obj, "xi_min", "domain", chk);
    d.xi_max = need_number(obj, "xi_max", "domain", chk);
    d.m = need_int(obj, "m", "domain", chk);
    chk.require(d.xi_min > 0.0, "domain: xi_min must be positive");
    chk.require(d.xi_max > d.xi_min, "domain: xi_max must exceed xi_min");
    chk.require(d.m >= 4, "domain: whole-line cell count m must be at least 4");
  } else if (kind == "radial_exterior") {
    d.kind = GeometryKind::radial;
    check_keys(obj, "domain", {"kind", "N", "r_in", "r_out", "m"}, chk);
    d.N = need_int(obj, "N", "domain", chk);
    d.r_in = need_number(obj, "r_in", "domain", chk);
    d.r_out = need_number(obj, "r_out", "domain", chk);
    d.m = need_int(obj, "m", "domain", chk);
    chk.require(d.N == 2 || d.N == 3, "domain: radial dimension N must be 2 or 3");
    chk.require(d.r_in > 0.0, "domain: r_in must be positive");
    chk.require(d.r_out > 4.0 * d.r_in,
                "domain: r_out must exceed 4*r_in for a meaningful exterior shell");
    chk.require(d.m >= 64, "domain: radial cell count m must be at least 64");
  } else if (!kind.empty()) {
    chk.fail("domain: unknown kind \"" + kind +
             "\" (expected interval | whole_line | radial_exterior)");
  }
  return d;
}

DataSpec parse_data(const njson& obj, Check& chk) {
  DataSpec s;
  if (!obj.is_object()) {
    chk.fail("data: must be an object");
    return s;
  }
  s.generator = need_string(obj, "generator", "data", chk);
  if (s.generator == "gaussian") {
    check_keys(obj, "data", {"generator", "center", "width"}, chk);
    if (obj.contains("center")) s.center = need_number(obj, "center", "data", chk);
    s.width = need_number(obj, "width", "data", chk, 1.0);
    chk.require(s.width > 0.0, "data: gaussian width must be positive");
  } else if (s.generator == "bump") {
    check_keys(obj, "data", {"generator", "support"}, chk);
    if (!obj.contains("support") || !obj.at("support").is_array() ||
        obj.at("support").size() != 2 || !obj.at("support").at(0).is_number() ||
        !obj.at("support").at(1).is_number()) {
      chk.fail("data: bump requires \"support\": [lo, hi]");
    } else {
      s.support_lo = obj.at("support").at(0).get<double>();
      s.support_hi = obj.at("support").at(1).get<double>();
      chk.require(std::isfinite(s.support_lo) && std::isfinite(s.support_hi) &&
                      s.support_lo < s.support_hi,
                  "data: bump support must be a finite interval [lo, hi] with lo < hi");
    }
  } else if (s.generator == "heavy_tail") {
    check_keys(obj, "data", {"generator", "delta"}, chk);
    s.delta = need_number(obj, "delta", "data", chk);
    chk.require(s.delta > 0.0 && s.delta < 0.5,
                "data: heavy_tail delta must lie in (0, 1/2)");
  } else if (s.generator == "random_energy") {
    check_keys(obj, "data", {"generator", "seed"}, chk);
    if (!obj.contains("seed") || !obj.at("seed").is_number_unsigned()) {
      chk.fail("data: random_energy requires a non-negative integer \"seed\"");
    } else {
      s.seed = obj.at("seed").get<std::uint64_t>();
    }
  } else if (!s.generator.empty()) {
    chk.fail("data: unknown generator \"" + s.generator +
             "\" (expected gaussian | bump | heavy_tail | random_energy)");
  }
  return s;
}

ScheduleSpec parse_schedule(const njson& obj, Check& chk) {
  ScheduleSpec s;
  if (!obj.is_object()) {
    chk.fail("schedule: must be an object");
    return s;
  }
  check_keys(obj, "schedule", {"t0", "t1", "count"}, chk);
  s.t0 = need_number(obj, "t0", "schedule", chk);
  s.t1 = need_number(obj, "t1", "schedule", chk);
  s.count = need_int(obj, "count", "schedule", chk);
  chk.require(s.t0 > 0.0, "schedule: t0 must be positive");
  chk.require(s.t1 > s.t0, "schedule: t1 must exceed t0");
  chk.require(s.count >= 4, "schedule: count must be at least 4");
  return s;
}

std::vector<Metric> parse_metrics(const njson& arr, Check& chk) {
  std::vector<Metric> metrics;
  if (!arr.is_array()) {
    chk.fail("metrics: must be an array of metric names");
    return metrics;
  }
  for (const auto& item : arr) {
    if (!item.is_string()) {
      chk.fail("metrics: entries must be strings");
      continue;
    }
    const std::string name = item.get<std::string>();
    if (name == "l2") metrics.push_back(Metric::l2);
    else if (name == "energy") metrics.push_back(Metric::energy);
    else if (name == "sharp") metrics.push_back(Metric::sharp);
    else if (name == "local_energy") metrics.push_back(Metric::local_energy);
    else if (name == "weighted_l1_log") metrics.push_back(Metric::weighted_l1_log);
    else chk.fail("metrics: unknown metric \"" + name + "\"");
  }
  return metrics;
}

Expectation parse_expectation(const njson& obj, Check& chk) {
  Expectation e;
  if (!obj.is_object()) {
    chk.fail("expectation: must be an object");
    return e;
  }
  const std::string kind = need_string(obj, "kind", "expectation", chk);
  if (kind == "none") {
    check_keys(obj, "expectation", {"kind"}, chk);
    e.kind = Expectation::Kind::none;
  } else if (kind == "slope") {
    check_keys(obj, "expectation", {"kind", "value", "tol"}, chk);
    e.kind = Expectation::Kind::slope;
    e.value = need_number(obj, "value", "expectation", chk);
    e.tol = need_number(obj, "tol", "expectation", chk);
    chk.require(e.tol > 0.0, "expectation: slope tolerance must be positive");
  } else if (kind == "log_corrected") {
    check_keys(obj, "expectation", {"kind", "p", "sigma", "ratio_max"}, chk);
    e.kind = Expectation::Kind::log_corrected;
    e.p = need_number(obj, "p", "expectation", chk);
    e.sigma = need_number(obj, "sigma", "expectation", chk);
    e.ratio_max = need_number(obj, "ratio_max", "expectation", chk);
    chk.require(e.ratio_max >= 1.0, "expectation: ratio_max must be at least 1");
  } else if (kind == "plateau") {
    check_keys(obj, "expectation", {"kind", "window_fraction", "ratio_max"}, chk);
    e.kind = Expectation::Kind::plateau;
    e.window_fraction = need_number(obj, "window_fraction", "expectation", chk, 0.5);
    e.ratio_max = need_number(obj, "ratio_max", "expectation", chk);
    chk.require(e.window_fraction > 0.0 && e.window_fraction <= 1.0,
                "expectation: window_fraction must lie in (0, 1]");
    chk.require(e.ratio_max >= 1.0, "expectation: ratio_max must be at least 1");
  } else if (!kind.empty()) {
    chk.fail("expectation: unknown kind \"" + kind +
             "\" (expected none | slope | log_corrected | plateau)");
  }
  return e;
}

bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > 128) return false;
  for (char c : name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) return false;
  }
  return name != "." && name != "..";
}

// Outer radius of the support of the initial profile, used by the finite
// propagation guard on bounded grids.  Randomized modal data has no spatial
// locality, so it reports no radius.
std::optional<double> support_radius(const DataSpec& data) {
  if (data.generator == "bump") return data.support_hi;
  if (data.generator == "gaussian") return data.center + 6.0 * data.width;
  return std::nullopt;
}

// ---- cross-section guards --------------------------------------------------

void validate_cross(const ExperimentConfig& cfg, Check& chk) {
  const DomainSpec& d = cfg.domain;
  const DataSpec& s = cfg.data;

  // Generators vs domain realization.
  if (d.kind == GeometryKind::line) {
    chk.require(s.generator != "bump",
                "data: bump has no frequency-side form; use it on interval or "
                "radial_exterior domains");
    chk.require(s.generator != "random_energy",
                "data: random_energy is not available on the whole line");
  } else {
    chk.require(s.generator != "heavy_tail",
                "data: heavy_tail is frequency-side data and requires the "
                "whole_line domain");
  }

  // Localized profiles must fit inside the grid.
  if (s.generator == "bump") {
    if (d.kind == GeometryKind::interval) {
      chk.require(s.support_lo >= 0.0 && s.support_hi <= d.L,
                  "data: bump support must lie inside [0, L]");
    } else if (d.kind == GeometryKind::radial) {
      chk.require(s.support_lo >= d.r_in && s.support_hi <= d.r_out,
                  "data: bump support must lie inside [r_in, r_out]");
    }
  }
  if (s.generator == "gaussian" && d.kind == GeometryKind::radial) {
    chk.require(s.center >= d.r_in,
                "data: gaussian center must not lie below r_in");
  }

  // Window guards.  The truncated frequency grid only mimics the line while
  // e^{-t xi_min^2} stays near 1; waves launched from compactly supported
  // data reach the artificial outer boundary after r_out - R_support.
  if (d.kind == GeometryKind::line && d.xi_min > 0.0) {
    const double t_valid = 0.01 / (d.xi_min * d.xi_min);
    chk.require(cfg.schedule.t1 <= t_valid,
                "schedule: t1 exceeds the resolution window 0.01/xi_min^2 of "
                "the frequency grid; lower t1 or xi_min");
  }
  if (d.kind == GeometryKind::radial) {
    if (auto radius = support_radius(s); radius && d.r_out > *radius) {
      const double t_free = d.r_out - *radius - 2.0;
      chk.require(cfg.schedule.t1 <= t_free,
                  "schedule: t1 exceeds the finite-propagation window "
                  "r_out - support - 2; enlarge r_out or lower t1");
    }
  }

  // Metric availability.
  for (Metric metric : cfg.metrics) {
    if (metric == Metric::local_energy) {
      chk.require(d.kind != GeometryKind::line,
                  "metrics: local_energy needs a spatial grid (interval or "
                  "radial_exterior)");
      chk.require(cfg.local_radius > 0.0,
                  "metrics: local_energy requires a positive local_radius");
      if (d.kind == GeometryKind::radial) {
        chk.require(cfg.local_radius > d.r_in,
                    "metrics: local_radius must exceed r_in");
      }
    } else if (metric == Metric::weighted_l1_log) {
      chk.require(d.kind == GeometryKind::radial,
                  "metrics: weighted_l1_log is defined on radial_exterior "
                  "domains only");
    }
  }

  // Expansion orders drive the profile cache.
  chk.require(!cfg.orders.empty(), "orders: at least one expansion order is required");
  for (int n : cfg.orders) {
    chk.require(n >= 0 && n <= 31, "orders: each order must lie in [0, 31]");
  }

  if (cfg.expectation.kind == Expectation::Kind::log_corrected) {
    chk.require(cfg.schedule.t0 >= 2.0,
                "expectation: log_corrected comparisons need t0 >= 2 so that "
                "log t stays positive on the schedule");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  njson root;
  try {
    root = njson::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: malformed JSON: ") + e.what());
  }

  Check chk;
  if (!root.is_object()) {
    chk.fail("config: top level must be a JSON object");
    chk.raise();
  }
  check_keys(root, "config",
             {"name", "domain", "data", "orders", "schedule", "metrics",
              "local_radius", "expectation", "out"},
             chk);

  ExperimentConfig cfg;
  cfg.name = need_string(root, "name", "config", chk, "experiment");
  if (!cfg.name.empty() && !valid_name(cfg.name)) {
    chk.fail("name: must be 1-128 characters from [A-Za-z0-9._-]");
  }
  cfg.domain = parse_domain(root.contains("domain") ? root.at("domain") : njson(), chk);
  cfg.data = parse_data(root.contains("data") ? root.at("data") : njson(), chk);
  cfg.schedule =
      parse_schedule(root.contains("schedule") ? root.at("schedule") : njson(), chk);

  if (!root.contains("orders") || !root.at("orders").is_array()) {
    chk.fail("orders: must be an array of integers");
  } else {
    for (const auto& item : root.at("orders")) {
      if (!item.is_number_integer()) {
        chk.fail("orders: entries must be integers");
      } else {
        cfg.orders.push_back(item.get<int>());
      }
    }
  }

  cfg.metrics = parse_metrics(root.contains("metrics") ? root.at("metrics") : njson(),
                              chk);
  if (root.contains("local_radius")) {
    cfg.local_radius = need_number(root, "local_radius", "config", chk);
  }
  if (root.contains("expectation")) {
    cfg.expectation = parse_expectation(root.at("expectation"), chk);
  }
  if (root.contains("out")) {
    cfg.out_dir = need_string(root, "out", "config", chk, "out");
    chk.require(!cfg.out_dir.empty(), "out: must be a non-empty path");
  }

  // Cross-section guards only make sense once the sections themselves parsed.
  if (chk.problems.empty()) validate_cross(cfg, chk);
  if (!chk.problems.empty()) chk.raise();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_json(const ExperimentConfig& cfg) {
  // Re-serialized from the parsed struct with sorted keys, so formatting and
  // key order of the input file never leak into the echo or the hash.
  nlohmann::json j;
  j["name"] = cfg.name;

  nlohmann::json dom;
  switch (cfg.domain.kind) {
    case GeometryKind::interval:
      dom["kind"] = "interval";
      dom["L"] = cfg.domain.L;
      break;
    case GeometryKind::line:
      dom["kind"] = "whole_line";
      dom["xi_min"] = cfg.domain.xi_min;
      dom["xi_max"] = cfg.domain.xi_max;
      break;
    case GeometryKind::radial:
      dom["kind"] = "radial_exterior";
      dom["N"] = cfg.domain.N;
      dom["r_in"] = cfg.domain.r_in;
      dom["r_out"] = cfg.domain.r_out;
      break;
  }
  dom["m"] = cfg.domain.m;
  j["domain"] = dom;

  nlohmann::json data;
  data["generator"] = cfg.data.generator;
  if (cfg.data.generator == "gaussian") {
    data["center"] = cfg.data.center;
    data["width"] = cfg.data.width;
  } else if (cfg.data.generator == "bump") {
    data["support"] = {cfg.data.support_lo, cfg.data.support_hi};
  } else if (cfg.data.generator == "heavy_tail") {
    data["delta"] = cfg.data.delta;
  } else if (cfg.data.generator == "random_energy") {
    data["seed"] = cfg.data.seed.value_or(0);
  }
  j["data"] = data;

  j["orders"] = cfg.orders;
  j["schedule"] = {{"t0", cfg.schedule.t0},
                   {"t1", cfg.schedule.t1},
                   {"count", cfg.schedule.count}};

  std::vector<std::string> names;
  names.reserve(cfg.metrics.size());
  for (Metric m : cfg.metrics) names.push_back(metric_name(m));
  j["metrics"] = names;
  if (cfg.local_radius > 0.0) j["local_radius"] = cfg.local_radius;

  nlohmann::json exp;
  switch (cfg.expectation.kind) {
    case Expectation::Kind::none:
      exp["kind"] = "none";
      break;
    case Expectation::Kind::slope:
      exp["kind"] = "slope";
      exp["value"] = cfg.expectation.value;
      exp["tol"] = cfg.expectation.tol;
      break;
    case Expectation::Kind::log_corrected:
      exp["kind"] = "log_corrected";
      exp["p"] = cfg.expectation.p;
      exp["sigma"] = cfg.expectation.sigma;
      exp["ratio_max"] = cfg.expectation.ratio_max;
      break;
    case Expectation::Kind::plateau:
      exp["kind"] = "plateau";
      exp["window_fraction"] = cfg.expectation.window_fraction;
      exp["ratio_max"] = cfg.expectation.ratio_max;
      break;
  }
  j["expectation"] = exp;
  // The output directory is artifact plumbing, not experiment identity: two
  // runs of the same config written to different places must share a hash.
  return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_json(cfg);
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64-bit offset basis
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace del
