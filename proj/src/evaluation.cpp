#include "semnoma/evaluation.hpp"

#include "semnoma/errors.hpp"

namespace semnoma {

EvalResult evaluate_policy(std::span<const PolicyDecision> decisions,
                           std::span<const FadingState> states,
                           const SystemParams& params) {
  if (states.empty()) throw ArgumentError("evaluate_policy: no states");
  if (decisions.size() != states.size())
    throw ArgumentError("evaluate_policy: " + std::to_string(decisions.size()) +
                        " decisions for " + std::to_string(states.size()) +
                        " states");
  EvalResult out;
  for (std::size_t v = 0; v < states.size(); ++v) {
    const PolicyDecision& d = decisions[v];
    out.ergodic_s += f_user_semantic_rate(d, states[v], params);
    out.ergodic_r += n_user_bit_rate(d.alpha, d.p, states[v], params);
    out.avg_power += d.alpha * d.p;
    out.frac_off += 1.0 - d.alpha;
    (d.semcom() ? out.frac_semcom : out.frac_bitcom) += d.alpha;
  }
  const double n = static_cast<double>(states.size());
  out.ergodic_s /= n;
  out.ergodic_r /= n;
  out.avg_power /= n;
  out.frac_off /= n;
  out.frac_bitcom /= n;
  out.frac_semcom /= n;
  return out;
}

}  // namespace semnoma
