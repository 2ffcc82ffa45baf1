#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace gravsim::cli {

struct Options {
  std::filesystem::path out_dir = ".";
  bool paper_gs = false;
};

void cmd_rabi(RunConfig& config, const Options& options);
void cmd_fringe(RunConfig& config, const Options& options);
void cmd_gsweep(RunConfig& config, const Options& options);
void cmd_allan(RunConfig& config, const Options& options);
void cmd_sensitivity(RunConfig& config, const Options& options);
void cmd_psd_variance(RunConfig& config, const Options& options);
void cmd_synth(RunConfig& config, const Options& options);

/// Full command line without the program name; returns the process exit code.
int run(const std::vector<std::string>& args);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitConvergence = 4;
inline constexpr int kExitCoverage = 5;

}  // namespace gravsim::cli
