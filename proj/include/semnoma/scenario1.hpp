#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semnoma/link_model.hpp"

namespace semnoma {

/// On-off resource management: in every state the F-user is either silent or
/// transmits at p0 for the whole block.
struct Scenario1Config {
  double p0 = 2.0;            // constant on-power, W
  double r_bar = 0.0;         // ergodic N-user target, bits/s/Hz
  double lambda_tol = 1e-4;   // relative tolerance on the rate constraint
  int lambda_max_doublings = 60;
  ModePolicy modes = ModePolicy::opportunistic;

  void validate() const;
};

struct Scenario1Solution {
  std::vector<PolicyDecision> decisions;
  double lambda_star = 0.0;
  double ergodic_s = 0.0;
  double ergodic_r = 0.0;
  double dual_value = 0.0;  // g1(lambda_star)
  int iterations = 0;       // dual evaluations spent
  // Set when the rate constraint is met with equality by time-sharing one
  // boundary state between its on and off decisions (fractional alpha at p0).
  std::optional<std::size_t> time_shared_state;
};

/// Per-state maximizer of S + lambda * R~ over silent, BitCom at p0 and
/// SemCom at p0. Exact ties keep the lower branch (silent over on, BitCom
/// over SemCom).
PolicyDecision subproblem_s1(const FadingState& st, double lambda,
                             const Scenario1Config& cfg,
                             const SystemParams& params);

/// Mean interference-free N-user rate: the largest achievable target.
double all_off_ceiling(std::span<const FadingState> states,
                       const SystemParams& params);

/// Maximizes the ergodic F-user rate subject to E[R~] >= r_bar by bisection on
/// the single multiplier. Throws InfeasibleError when r_bar exceeds
/// all_off_ceiling.
Scenario1Solution solve_s1(std::span<const FadingState> states,
                           const Scenario1Config& cfg,
                           const SystemParams& params);

}  // namespace semnoma
