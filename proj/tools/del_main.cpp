#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "del/acceptance.hpp"
#include "del/config.hpp"
#include "del/errors.hpp"
#include "del/expansion.hpp"
#include "del/parallel.hpp"
#include "del/report.hpp"
#include "del/runner.hpp"
#include "del/version.hpp"

namespace {

int do_simulate(const std::string& config_path, const std::string& out_dir) {
  del::ExperimentConfig cfg = del::load_config_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  const del::Report report = del::run_and_write(cfg);
  std::cout << "wrote " << cfg.out_dir << "/" << cfg.name << ".{csv,json}  ("
            << report.series.size() << " series, config "
            << report.config_hash << ", " << report.runtime_seconds << "s)\n";
  for (const auto& s : report.series) {
    std::cout << "  ";
    if (s.verdict) {
      std::cout << (s.verdict->pass ? "[PASS] " : "[FAIL] ");
    }
    std::cout << s.label;
    if (s.fit) std::cout << ": slope " << s.fit->slope;
    if (s.verdict && s.verdict->kind != "slope") {
      std::cout << ": ratio " << s.verdict->ratio << " (max "
                << s.verdict->ratio_max << ")";
    }
    std::cout << "\n";
  }
  return report.all_pass() ? 0 : 1;
}

int do_verify(const std::string& level, const std::string& inject,
              bool json_summary) {
  if (!inject.empty()) {
    std::cout << "fault injection armed: " << inject
              << " (failures below are the expected demonstration)\n";
    del::testhooks::corrupt_binomial_table(true);
  }
  const auto results = level == "full" ? del::acceptance::run_full()
                                       : del::acceptance::run_fast();
  if (!inject.empty()) del::testhooks::corrupt_binomial_table(false);

  int fails = 0;
  for (const auto& r : results) {
    if (!r.pass) ++fails;
  }
  if (json_summary) {
    std::cout << del::acceptance::summary_json(results);
  } else {
    for (const auto& r : results) {
      std::cout << del::acceptance::format_line(r) << "\n";
    }
    std::cout << (fails == 0 ? "all criteria passed"
                             : std::to_string(fails) + " criteria failed")
              << " (" << results.size() << " total, level " << level << ")\n";
  }
  return std::min(fails, 125);
}

int do_export(const std::string& report_path, const std::string& format,
              const std::string& out_dir) {
  const del::Report report = del::load_report_file(report_path);
  const std::string text =
      format == "csv" ? del::to_csv(report) : del::to_json_text(report);
  if (out_dir.empty()) {
    std::cout << text;
    return 0;
  }
  std::filesystem::create_directories(out_dir);
  const std::string stem = std::filesystem::path(report_path).stem().string();
  const std::filesystem::path target =
      std::filesystem::path(out_dir) / (stem + "." + format);
  if (format == "csv") {
    del::write_csv(report, target.string());
  } else {
    del::write_json(report, target.string());
  }
  std::cout << "wrote " << target.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"damped-expansion-lab: diffusion-phenomenon experiments for "
               "u'' + Au + u' = 0"};
  app.set_version_flag("--version", std::string("del ") + del::kToolVersion);
  app.require_subcommand(1);
  // Let --threads/--out be given after the subcommand as well;
  // subcommands created below inherit this.
  app.fallthrough();

  int threads = 0;
  app.add_option("--threads", threads,
                 "OpenMP thread count (default: DEL_THREADS, then runtime)");
  std::string out_dir;
  app.add_option("--out", out_dir, "output directory override");

  auto* sim = app.add_subcommand("simulate",
                                 "run an experiment from a JSON config");
  std::string config_path;
  sim->add_option("--config", config_path, "experiment config (JSON)")
      ->required();

  auto* ver = app.add_subcommand("verify", "run the self-verification suite");
  std::string level{"fast"};
  ver->add_option("--level", level, "fast (seconds) or full (minutes)")
      ->check(CLI::IsMember({"fast", "full"}));
  std::string inject;
  ver->add_option("--inject-fault", inject,
                  "arm a deliberate internal fault to demonstrate that "
                  "failures are caught and reported")
      ->check(CLI::IsMember({"binomial"}));
  bool json_summary = false;
  ver->add_flag("--json", json_summary, "machine-readable summary");

  auto* exp = app.add_subcommand("export", "re-emit a stored report");
  std::string report_path;
  exp->add_option("--report", report_path, "stored JSON report")->required();
  std::string format{"csv"};
  exp->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share exit code 2 with runtime errors; --help and
    // --version still exit 0.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (threads <= 0) {
    if (const char* env = std::getenv("DEL_THREADS")) {
      threads = std::atoi(env);
    }
  }
  del::set_threads(threads);

  try {
    if (*sim) return do_simulate(config_path, out_dir);
    if (*ver) return do_verify(level, inject, json_summary);
    if (*exp) return do_export(report_path, format, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
