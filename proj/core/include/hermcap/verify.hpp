#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hermcap/hermitian.hpp"

namespace hermcap {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the library's self-checks on a model: field axioms, surface and
/// tangent-section counts, the classical ovoid and incremental coverage
/// maintenance. `deep` adds generator enumeration and, for q <= 3, the
/// exhaustive relevance oracles. Stops at the first failure.
std::vector<CheckResult> run_invariant_suite(const SurfaceModel& model, bool deep, std::uint64_t seed = 1);

}  // namespace hermcap
