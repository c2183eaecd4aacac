#pragma once

// Verification suite: algebra oracle, rotor and spinor invariants, phase
// identities, matrix correspondences and Dirac residuals. Groups are numbered
// 1..12 and may run concurrently; results come back in group order.

#include <optional>
#include <string>
#include <vector>

#include "sta/multivector.hpp"

namespace sta {

struct VerifyOutcome {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  // True when the check requires max_residual > tolerance (a lower bound).
  bool lower_bound = false;
};

struct VerifyGroup {
  int id = 0;
  std::string name;
  std::vector<VerifyOutcome> outcomes;

  bool passed() const;
};

struct VerifyConfig {
  // Replaces the tolerance of every upper-bound check.
  std::optional<double> tolerance;
  // Structure constants under test; a mutated copy exercises the oracle.
  CayleyTable table = kCayleyTable;
  unsigned long long seed = 20240613ULL;
  bool parallel = true;
};

std::vector<VerifyGroup> run_verify(const VerifyConfig& config = {});

// Flips the sign of the (g1, g2) structure constant.
CayleyTable mutated_table();

bool all_passed(const std::vector<VerifyGroup>& groups);

}  // namespace sta
