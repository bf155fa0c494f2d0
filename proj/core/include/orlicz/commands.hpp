#ifndef ORLICZ_COMMANDS_HPP
#define ORLICZ_COMMANDS_HPP

#include "orlicz/run_config.hpp"

#include <iosfwd>

namespace orlicz {

// Exit codes shared by the CLI and the command layer.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitViolation = 4;
inline constexpr int kExitInfinite = 10;

// Each command validates the configuration, writes its CSV/JSON outputs under
// config.out_dir, logs a one-line summary to `diag`, and returns an exit
// code: 0 success, 2 config error, 3 numeric failure, 4 inequality violation,
// 10 infinite-bound verdict.
int cmd_conjugate(const RunConfig& config, std::ostream& diag);
int cmd_partition(const RunConfig& config, std::ostream& diag);
int cmd_bounds(const RunConfig& config, std::ostream& diag);
int cmd_simulate(const RunConfig& config, std::ostream& diag);
int cmd_verify_sobolev(const RunConfig& config, std::ostream& diag);

} // namespace orlicz

#endif
