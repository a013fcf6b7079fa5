#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "semnoma/csv.hpp"
#include "semnoma/evaluation.hpp"
#include "semnoma/rate_region.hpp"
#include "semnoma/scenario1.hpp"
#include "semnoma/scenario2.hpp"

namespace semnoma {

struct SchemeId {
  ModePolicy mode = ModePolicy::opportunistic;
  PowerPolicy power = PowerPolicy::continuous;
  TimePolicy time = TimePolicy::continuous;
};

/// "<mode>/<power>/<time>", e.g. "opportunistic/continuous/on_off".
std::string to_string(const SchemeId& scheme);

using SchemeConfig = std::variant<Scenario1Config, Scenario2Config>;

struct SchemeOutcome {
  std::vector<PolicyDecision> decisions;
  EvalResult eval;
  double multiplier = 0.0;  // lambda (on-off) or beta (continuous)
  double delta = 0.0;       // power multiplier; 0 for the on-off scenario
  double dual_value = 0.0;
  bool converged = true;
  std::size_t fractional_states = 0;
};

/// A Scenario1Config admits only the on_off/on_off scheme (constant power, no
/// average-power limit). A Scenario2Config runs the continuous solver with the
/// scheme's mode, power and time restrictions applied.
SchemeOutcome solve_scheme(const SchemeId& scheme,
                           std::span<const FadingState> states,
                           const SchemeConfig& cfg, const SystemParams& params);

/// Quantized choice grid of the oracle. Continuous power uses `power_levels`
/// points including zero: uniform steps of p_peak/(power_levels-1), with the
/// level nearest above the SemCom activation power of each state replaced by
/// that activation power. Continuous time uses alpha in {k/(alpha_levels-1)}.
struct OracleGrid {
  int power_levels = 21;
  int alpha_levels = 11;
  int beta_points = 48;
  int delta_points = 32;
};

struct OracleResult {
  bool feasible = false;  // some quantized policy meets both constraints
  double best_primal = 0.0;
  std::vector<PolicyDecision> policy;
  double dual_bound = 0.0;  // upper bound on the quantized optimum
};

/// Independent optimum certifier for small instances: scans a grid of
/// multipliers, maximizes each state exhaustively over the quantized choices,
/// then repairs and greedily improves every multiplier policy. Throws
/// ArgumentError for more than 64 states.
OracleResult brute_force_oracle(const SchemeId& scheme,
                                std::span<const FadingState> states,
                                const OracleGrid& grid, const SchemeConfig& cfg,
                                const SystemParams& params);

enum class FigureId { region, fig5, fig6, fig7, fig8, pavg, fig9 };

std::string_view to_string(FigureId fig);
/// Accepts the names above plus "fig2" for region. Throws ArgumentError.
FigureId parse_figure_id(std::string_view text);

/// Sweep values and cases; defaults follow the numerical study.
struct FigureSettings {
  std::vector<double> region_p_max{0.1, 10.0};
  RegionSpec region;
  std::vector<double> r_bar_values{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  std::vector<double> p0_cases{2.0, 10.0};       // fig5
  std::vector<double> r_bar_cases{4.0, 8.0};     // fig6, fig7, pavg
  std::vector<double> p0_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};  // fig6
  std::vector<std::pair<double, double>> budget_cases{{1.0, 2.0}, {8.0, 10.0}};
  std::vector<double> p_avg_values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};  // pavg
  double pavg_peak = 10.0;
  double fig9_p_avg = 8.0;
  double fig9_p_peak = 10.0;
  unsigned threads = 1;
};

/// Emits the sweep for one figure. Solver figures take their solver knobs
/// (tolerances, grids) from the base configs; swept fields are overwritten.
CsvTable run_figure(FigureId fig, std::span<const FadingState> states,
                    const FigureSettings& settings, const Scenario1Config& base1,
                    const Scenario2Config& base2, const SystemParams& params);

/// Column names shared by all solver figures.
std::vector<std::string> sweep_header(const std::vector<std::string>& case_columns);

}  // namespace semnoma
