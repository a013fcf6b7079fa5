#pragma once

#include <filesystem>
#include <string_view>

#include "semnoma/config.hpp"

namespace semnoma {

enum class ScenarioId { s1, s2 };

ScenarioId parse_scenario(std::string_view text);

// Each command writes CSVs plus a manifest into `out` and returns the process
// exit code. Errors propagate as exceptions; run_cli maps them to codes.
int cmd_region(const RunConfig& cfg, const std::filesystem::path& out);
int cmd_solve(ScenarioId scenario, const SchemeId& scheme, const RunConfig& cfg,
              const std::filesystem::path& out);
int cmd_figure(FigureId fig, const RunConfig& cfg, const std::filesystem::path& out);
// Compares solve_s2 with the brute-force oracle on small instances drawn
// from the configured seed; non-zero exit if any gap exceeds 2%.
int cmd_oracle_check(const RunConfig& cfg, int instances, int states,
                     const std::filesystem::path& out);

/// Exit codes: 0 ok, 1 usage/config/IO error, 2 infeasible target,
/// 3 oracle check failed.
int run_cli(int argc, char** argv);

}  // namespace semnoma
