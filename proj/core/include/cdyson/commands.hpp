#pragma once

#include <string>

#include "cdyson/config.hpp"

namespace cdyson {

struct CommandOptions {
  std::string out_dir = ".";
  std::string format = "csv";  // csv | bin for simulate/sample; json elsewhere
  std::string cache_dir;       // empty: CONTOUR_DYSON_CACHE or <out>/cache
};

/// Exit codes: 0 success, 1 computation failure, 2 config error,
/// 3 validation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

int run_simulate(const RunConfig& config, const CommandOptions& options);
int run_sample(const RunConfig& config, const CommandOptions& options);
int run_maps(const RunConfig& config, const CommandOptions& options);
int run_freeenergy(const RunConfig& config, const CommandOptions& options);
int run_partition(const RunConfig& config, const CommandOptions& options);
int run_validate(const RunConfig& config, const CommandOptions& options);

/// Dispatch by command name; throws ConfigError for unknown commands.
int run_command(const std::string& command, const RunConfig& config,
                const CommandOptions& options);

}  // namespace cdyson
