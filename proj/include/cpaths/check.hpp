#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpaths/oracle.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t max_size = 12;  // random term size bound
  std::size_t samples = 200;
  Budget budget{};
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::string detail;  // first failure, or a short summary
};

/// Randomized invariant suites: groupoid laws, idempotence, round trips,
/// homomorphism, oracle agreement, local confluence and trace replay.
/// Group-level suites are skipped for presentations without a group tag.
std::vector<SuiteResult> run_check_suites(const SpaceRef& space, const CheckOptions& options);

}  // namespace cpaths
