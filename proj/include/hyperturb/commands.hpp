/// @file commands.hpp
/// @brief Run orchestration for the CLI modes.
///
/// Exit codes: 0 success, 2 configuration error, 3 numerical abort,
/// 4 acceptance-check failure.

#pragma once

#include <ostream>

#include "hyperturb/config.hpp"

namespace hyperturb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalAbort = 3;
inline constexpr int kExitCheckFailure = 4;

int command_run(const RunConfig& config, std::ostream& out);
int command_sweep(const RunConfig& config, std::ostream& out);
int command_check(const RunConfig& config, std::ostream& out);
int command_eigen(const RunConfig& config, std::ostream& out);

/// Dispatch on config.mode.
int run_command(const RunConfig& config, std::ostream& out);

}  // namespace hyperturb
