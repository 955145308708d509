#pragma once

#include <filesystem>

#include "darkpot/app/config.hpp"
#include "darkpot/app/writers.hpp"

namespace darkpot::app {

// Each command writes its files under out and returns the JSON summary that
// is also written there (when JSON output is enabled).
Json cmd_profile(const RunConfig& c, const std::filesystem::path& out);
Json cmd_potential(const RunConfig& c, const std::filesystem::path& out);
Json cmd_features(const RunConfig& c, const std::filesystem::path& out);
Json cmd_boundstate(const RunConfig& c, const std::filesystem::path& out);
Json cmd_scan(const RunConfig& c, const std::filesystem::path& out);
Json cmd_experiment(const RunConfig& c, const std::filesystem::path& out);

Json run_command(const RunConfig& c, const std::filesystem::path& out);

// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kNumeric = 3, kIo = 4 };

}  // namespace darkpot::app
