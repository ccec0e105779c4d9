#pragma once

#include <string>
#include <vector>

namespace vanet {

struct SelfTestResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Three-vehicle golden matrices, their spectra and verdicts, plus exhaustive
// small-N equivalences between the walk, spectral and traversal tests.
std::vector<SelfTestResult> run_selftest();

}  // namespace vanet
