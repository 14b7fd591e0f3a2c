#pragma once

#include <string>
#include <vector>

#include "wiretap/prob.hpp"

namespace wiretap {

enum class VerifyLevel { kFast, kFull };

struct CheckResult {
  std::string name;
  bool passed = false;
  double gap = 0.0;        // observed worst-case gap
  double tolerance = 0.0;  // what the gap was held against
};

/// Oracle suite: min-form vs max-form E_s, E_b closed form vs brute force,
/// the E_b fixed point, convexity probes, E_t reconciliation, the
/// exhaustive ensemble mean and the per-type decomposition of E[D].
std::vector<CheckResult> run_verification(const Distribution& p_x,
                                          const Channel& w, double r_prime,
                                          VerifyLevel level);

}  // namespace wiretap
