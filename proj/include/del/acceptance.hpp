#pragma once

#include <string>
#include <vector>

namespace del::acceptance {

//============================================================================
// Self-contained verification suites behind `del verify`.  The fast suite is
// a sub-10-second smoke screen of the core invariants; the full suite is the
// complete battery, including the long shell experiments, with wall-clock
// budgets enforced.  Every check reports one line: id, verdict, and the
// worst-case numbers that drove it.
//============================================================================

struct CriterionResult {
  std::string id;      // stable identifier, e.g. "A5" / "F2"
  std::string name;    // short slug, e.g. "decomposition-oracle"
  bool pass = false;
  std::string detail;  // worst-case numbers or the caught error
  double seconds = 0.0;
};

std::vector<CriterionResult> run_fast();
std::vector<CriterionResult> run_full();

// One line per criterion, e.g. "[PASS] A1 partition-of-unity ...".
std::string format_line(const CriterionResult& r);

// Machine-readable summary of a suite run.
std::string summary_json(const std::vector<CriterionResult>& results);

}  // namespace del::acceptance
