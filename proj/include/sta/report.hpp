#pragma once

// Phase report serialization. Column order and names are fixed:
//   t, delta_dot_L, gamma_dot_L, delta_hat_dot_L, gamma_hat_dot_L, beta, v0, consistency_residual
// Columns of a formula that was not selected are empty (CSV) or null (JSON).

#include <string>

#include "sta/phase.hpp"

namespace sta {

inline constexpr const char* kVersion = "0.1.0";
// Integrator tolerance target for closed-loop phases at the default step count.
inline constexpr double kIntegratorTolerance = 1e-6;

std::string report_to_csv(const PhaseReport& report);
std::string report_to_json(const PhaseReport& report);

}  // namespace sta
