#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kleinb/sampling.hpp"

namespace kleinb {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation
  double tolerance = 0.0;  // what it was held to
  std::size_t points = 0;
};

struct SelftestOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t points = 10000;
};

// Unitarity, closed form vs boundary solve, field-free reduction, no-flip
// anchors with the b^{1/2} flip scaling, and spin symmetry, on one seeded
// grid.
std::vector<CheckResult> run_selftest(const SelftestOptions& options);

}  // namespace kleinb
