// Acceptance battery: runs the fast and full verification suites and prints
// one verdict line per criterion.  Exit status is the number of failures, so
// ctest reports exactly how much is broken.  A final meta-check arms the
// binomial fault hook and demands that the fast suite notices -- a
// verification layer that cannot see injected corruption proves nothing.

#include <cstdio>
#include <vector>

#include "del/acceptance.hpp"
#include "del/expansion.hpp"
#include "del/parallel.hpp"

int main() {
  using del::acceptance::CriterionResult;
  int failures = 0;

  const auto report = [&](const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
      std::puts(del::acceptance::format_line(r).c_str());
      if (!r.pass) ++failures;
    }
  };

  std::puts("== fast suite ==");
  report(del::acceptance::run_fast());

  std::puts("== full suite ==");
  report(del::acceptance::run_full());

  std::puts("== fault-injection sensitivity ==");
  del::testhooks::corrupt_binomial_table(true);
  const auto faulted = del::acceptance::run_fast();
  del::testhooks::corrupt_binomial_table(false);
  int caught = 0;
  for (const auto& r : faulted) {
    if (!r.pass) ++caught;
  }
  const bool detected = caught > 0;
  std::printf("[%s] FI  fault-detection  corrupted binomial table failed %d "
              "fast criteria (want >= 1)\n",
              detected ? "PASS" : "FAIL", caught);
  if (!detected) ++failures;

  // The hook must disarm cleanly: a single clean re-run of the cheapest
  // criterion set guards against sticky state.
  const auto clean = del::acceptance::run_fast();
  bool restored = true;
  for (const auto& r : clean) restored = restored && r.pass;
  std::printf("[%s] FI2 fault-disarm  fast suite %s after disarming\n",
              restored ? "PASS" : "FAIL", restored ? "clean" : "still failing");
  if (!restored) ++failures;

  std::printf("%d criterion(s) failed\n", failures);
  return failures > 125 ? 125 : failures;
}
