#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hermite::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;  // measured quantity (worst case)
  double limit = 0.0;  // threshold it was compared against
  std::string detail;
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

/// Suite ids: basis, nodes, interp, colloc, post, all.
std::vector<std::string> suite_ids();

/// Runs the invariant checks of one suite (or every suite for "all").
/// Random checks draw from seeds derived from `seed`. Throws InputError for
/// an unknown id.
Report run(const std::string& suite, std::uint64_t seed = 1);

}  // namespace hermite::verify
