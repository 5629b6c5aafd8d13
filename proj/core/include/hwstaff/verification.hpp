#pragma once

// Property suites behind `hwstaff verify`: the monotone approach of
// C(a + beta sqrt(a), a) to C*(beta), the stochastic ordering of Y_a, and the
// numerical identities linking the independent evaluation routes.

#include <string>
#include <vector>

#include "hwstaff/numerics.hpp"

namespace hwstaff::verification {

struct PropertyCheck {
  std::string name;
  bool passed = false;
  /// Worst-case slack; positive when the property holds with room to spare.
  double worst_margin = 0.0;
  std::string detail;
};

/// Betas and grid used by the monotonicity suite.
inline constexpr double kSweepBetas[] = {0.1, 0.5, 1.0, 2.0, 3.0};
inline constexpr double kSweepLoadMin = 0.01;
inline constexpr double kSweepLoadMax = 1e4;
inline constexpr int kSweepPoints = 40;

std::vector<PropertyCheck> verify_monotonicity(const numerics::QuadratureConfig& cfg = {});
std::vector<PropertyCheck> verify_order();
std::vector<PropertyCheck> verify_identities(const numerics::QuadratureConfig& cfg = {});
std::vector<PropertyCheck> verify_all(const numerics::QuadratureConfig& cfg = {});

}  // namespace hwstaff::verification
