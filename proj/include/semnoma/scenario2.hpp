#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "semnoma/link_model.hpp"

namespace semnoma {

enum class PowerPolicy { continuous, on_off };
enum class TimePolicy { continuous, on_off };

std::string_view to_string(PowerPolicy policy);
std::string_view to_string(TimePolicy policy);
PowerPolicy parse_power_policy(std::string_view text);
TimePolicy parse_time_policy(std::string_view text);

/// Continuous resource management under peak and average power limits.
struct Scenario2Config {
  double r_bar = 0.0;   // ergodic N-user target, bits/s/Hz
  double p_avg = 1.0;   // average power limit, W
  double p_peak = 2.0;  // peak power limit, W
  int power_grid = 1001;
  double ellipsoid_tol = 1e-5;
  int ellipsoid_max_iters = 500;
  double ellipsoid_radius = 1e6;
  ModePolicy modes = ModePolicy::opportunistic;
  // on_off power: p in {0, p_peak}. on_off time: alpha in {0, 1}.
  PowerPolicy power = PowerPolicy::continuous;
  TimePolicy time = TimePolicy::continuous;

  void validate() const;
};

struct DualPoint {
  double beta = 0.0;   // rate-constraint multiplier
  double delta = 0.0;  // average-power multiplier
};

struct EllipsoidState {
  std::array<double, 2> center{1.0, 1.0};
  std::array<std::array<double, 2>, 2> shape{};
};

/// Lagrangian density of one state:
///   S_mode(p) + beta * (R(p) - R(0)) - delta * p.
double pi_value(double p, Method mode, const FadingState& st,
                const DualPoint& dual, const Scenario2Config& cfg,
                const SystemParams& params);

struct PiMaximum {
  double p_star = 0.0;
  double pi_star = 0.0;
  // Best over p > 0 where the method delivers a positive rate (for SemCom,
  // above the similarity floor). Used when the recovery LP reopens a state
  // whose density peaks at zero.
  double p_active = 0.0;
  double pi_active = 0.0;
};

/// Grid search over [0, p_peak] plus Brent refinement of the best
/// bracket. SemCom splits the interval where the similarity floor switches on.
PiMaximum maximize_pi(Method mode, const FadingState& st, const DualPoint& dual,
                      const Scenario2Config& cfg, const SystemParams& params);

struct StateLagrangian {
  PolicyDecision decision;
  double contribution = 0.0;  // beta * R(0) + alpha * Pi*
  double rate = 0.0;          // N-user rate under the decision
};

/// alpha = 1 iff the best density is strictly positive. Ties between methods
/// go to BitCom.
StateLagrangian subproblem_s2(const FadingState& st, const DualPoint& dual,
                              const Scenario2Config& cfg,
                              const SystemParams& params);

struct DualEvaluation {
  double g2 = 0.0;
  std::array<double, 2> subgrad{};  // (E[R*] - r_bar, p_avg - E[alpha* p*])
};

DualEvaluation dual_function(std::span<const FadingState> states,
                             const DualPoint& dual, const Scenario2Config& cfg,
                             const SystemParams& params);

struct EllipsoidResult {
  DualPoint duals;
  double g2 = 0.0;
  int iterations = 0;
  bool converged = false;
  EllipsoidState final_state;
  std::vector<double> best_trace;  // best g2 after each objective cut
  std::vector<DualPoint> runners_up;  // lowest-g2 centers after the best
};

/// Central-cut ellipsoid minimization of g2 over beta, delta >= 0.
/// Throws InfeasibleError when r_bar exceeds the all-off ceiling.
EllipsoidResult ellipsoid_solve(std::span<const FadingState> states,
                                const Scenario2Config& cfg,
                                const SystemParams& params);

struct Scenario2Solution {
  std::vector<PolicyDecision> decisions;
  DualPoint duals;
  double ergodic_s = 0.0;
  double ergodic_r = 0.0;
  double avg_power = 0.0;
  double dual_value = 0.0;  // g2 at duals
  double gap = 0.0;         // dual_value - ergodic_s
  int iterations = 0;
  bool converged = false;
  bool lp_infeasible = false;
  std::size_t fractional_states = 0;
};

/// Fixes method and power per state at the given duals and solves the
/// time-sharing LP for alpha.
Scenario2Solution recover_primal(std::span<const FadingState> states,
                                 const DualPoint& duals,
                                 const Scenario2Config& cfg,
                                 const SystemParams& params);

/// Ellipsoid, then primal recovery at the best center, at the runner-up
/// centers and at small relative perturbations of the best center; the
/// feasible recovery with the largest objective is returned. Near-ties between
/// methods or powers at the optimum make the per-state choice at one dual
/// point fragile, and nearby points resolve those ties differently.
Scenario2Solution solve_s2(std::span<const FadingState> states,
                           const Scenario2Config& cfg,
                           const SystemParams& params);

}  // namespace semnoma
