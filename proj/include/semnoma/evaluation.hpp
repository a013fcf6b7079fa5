#pragma once

#include <span>

#include "semnoma/link_model.hpp"

namespace semnoma {

/// Sample-average metrics of a per-state policy.
struct EvalResult {
  double ergodic_s = 0.0;   // E[S(v)], suts/s/Hz
  double ergodic_r = 0.0;   // E[R(v)], bits/s/Hz
  double avg_power = 0.0;   // E[alpha(v) p(v)], W
  double frac_off = 0.0;    // E[1 - alpha]
  double frac_bitcom = 0.0; // E[alpha 1(rho = 0)]
  double frac_semcom = 0.0; // E[alpha 1(rho = 1)]
};

/// Throws ArgumentError unless there is exactly one decision per state.
EvalResult evaluate_policy(std::span<const PolicyDecision> decisions,
                           std::span<const FadingState> states,
                           const SystemParams& params);

}  // namespace semnoma
