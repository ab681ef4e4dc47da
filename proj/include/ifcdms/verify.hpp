#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ifcdms {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double max_violation = 0.0;  // largest observed deviation, in the property's own units
  std::string detail;
};

/// info, classify, regions, gaussian, all.
const std::vector<std::string>& suite_names();

/// Runs one property suite. Throws InvalidInput for an unknown name.
std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace ifcdms
