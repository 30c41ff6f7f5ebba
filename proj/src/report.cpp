#include "del/report.hpp"

#include <charconv>
#include <fstream>

#include "del/errors.hpp"
#include "json.hpp"

namespace del {

using njson = nlohmann::json;

std::string format_double(double value) {
  // Shortest decimal that round-trips to the same double; locale-free,
  // '.' separator.  This is what keeps repeated runs byte-identical.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

bool Report::all_pass() const {
  for (const auto& s : series) {
    if (s.verdict && !s.verdict->pass) return false;
  }
  return true;
}

std::string to_csv(const Report& report) {
  std::string out = "metric,t,value\n";
  for (const auto& s : report.series) {
    for (const auto& sample : s.samples) {
      out += s.label;
      out += ',';
      out += format_double(sample.t);
      out += ',';
      out += format_double(sample.value);
      out += '\n';
    }
  }
  return out;
}

void write_csv(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("report: cannot open \"" + path + "\" for writing");
  const std::string text = to_csv(report);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw config_error("report: failed writing \"" + path + "\"");
}

namespace {

njson fit_to_json(const RateFit& fit) {
  njson j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["rms_residual"] = fit.rms_residual;
  j["t_lo"] = fit.t_lo;
  j["t_hi"] = fit.t_hi;
  j["used"] = fit.used;
  j["filtered"] = fit.filtered;
  return j;
}

RateFit fit_from_json(const njson& j) {
  RateFit fit;
  fit.slope = j.at("slope").get<double>();
  fit.intercept = j.at("intercept").get<double>();
  fit.rms_residual = j.at("rms_residual").get<double>();
  fit.t_lo = j.at("t_lo").get<double>();
  fit.t_hi = j.at("t_hi").get<double>();
  fit.used = j.at("used").get<int>();
  fit.filtered = j.at("filtered").get<int>();
  return fit;
}

njson verdict_to_json(const SeriesVerdict& v) {
  njson j;
  j["kind"] = v.kind;
  j["pass"] = v.pass;
  j["config_hash"] = v.config_hash;
  if (v.kind == "slope") {
    j["expected"] = v.expected;
    j["tol"] = v.tol;
    j["gap"] = v.gap;
  } else {
    j["lo"] = v.lo;
    j["hi"] = v.hi;
    j["ratio"] = v.ratio;
    j["ratio_max"] = v.ratio_max;
  }
  return j;
}

SeriesVerdict verdict_from_json(const njson& j) {
  SeriesVerdict v;
  v.kind = j.at("kind").get<std::string>();
  v.pass = j.at("pass").get<bool>();
  v.config_hash = j.at("config_hash").get<std::string>();
  if (v.kind == "slope") {
    v.expected = j.at("expected").get<double>();
    v.tol = j.at("tol").get<double>();
    v.gap = j.at("gap").get<double>();
  } else {
    v.lo = j.at("lo").get<double>();
    v.hi = j.at("hi").get<double>();
    v.ratio = j.at("ratio").get<double>();
    v.ratio_max = j.at("ratio_max").get<double>();
  }
  return v;
}

}  // namespace

std::string to_json_text(const Report& report) {
  njson j;
  j["schema"] = report.schema;
  j["tool_version"] = report.tool_version;
  try {
    j["config"] = njson::parse(report.config_echo);
  } catch (const njson::exception& e) {
    throw config_error(std::string("report: config echo is not valid JSON: ") +
                       e.what());
  }
  j["config_hash"] = report.config_hash;
  j["runtime_seconds"] = report.runtime_seconds;

  njson series = njson::array();
  for (const auto& s : report.series) {
    njson js;
    js["metric"] = s.label;
    js["base"] = s.base;
    js["order"] = s.order;
    njson samples = njson::array();
    for (const auto& sample : s.samples) {
      samples.push_back(njson::array({sample.t, sample.value}));
    }
    js["samples"] = samples;
    if (s.fit) js["fit"] = fit_to_json(*s.fit);
    if (s.verdict) js["verdict"] = verdict_to_json(*s.verdict);
    series.push_back(js);
  }
  j["series"] = series;
  return j.dump(2) + "\n";
}

void write_json(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("report: cannot open \"" + path + "\" for writing");
  const std::string text = to_json_text(report);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw config_error("report: failed writing \"" + path + "\"");
}

Report report_from_json(const std::string& json_text) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const njson::exception& e) {
    throw config_error(std::string("report: malformed JSON: ") + e.what());
  }
  try {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.config_echo = j.at("config").dump();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.runtime_seconds = j.at("runtime_seconds").get<double>();
    for (const auto& js : j.at("series")) {
      MetricSeries s;
      s.label = js.at("metric").get<std::string>();
      s.base = js.at("base").get<std::string>();
      s.order = js.at("order").get<int>();
      for (const auto& sample : js.at("samples")) {
        s.samples.push_back(
            {sample.at(0).get<double>(), sample.at(1).get<double>()});
      }
      if (js.contains("fit")) s.fit = fit_from_json(js.at("fit"));
      if (js.contains("verdict")) s.verdict = verdict_from_json(js.at("verdict"));
      r.series.push_back(std::move(s));
    }
    return r;
  } catch (const njson::exception& e) {
    throw config_error(std::string("report: missing or mistyped field: ") +
                       e.what());
  }
}

Report load_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("report: cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return report_from_json(text);
}

}  // namespace del
