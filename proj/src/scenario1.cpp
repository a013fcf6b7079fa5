#include "semnoma/scenario1.hpp"

#include <cmath>
#include <sstream>

#include "semnoma/errors.hpp"
#include "semnoma/evaluation.hpp"

namespace semnoma {

namespace {

// Everything the per-state Lagrangian needs; independent of lambda.
struct StateTerms {
  double s_sem = 0.0;  // SemCom rate at p0
  double s_bit = 0.0;  // equivalent BitCom rate at p0
  double r_on = 0.0;   // N-user rate while the F-user transmits at p0
  double r_off = 0.0;  // interference-free N-user rate
};

StateTerms make_terms(const FadingState& st, const Scenario1Config& cfg,
                      const SystemParams& params) {
  return {semcom_rate(cfg.p0, st, params), bitcom_rate(cfg.p0, st, params),
          interfered_rate(cfg.p0, st, params),
          interference_free_rate(st, params)};
}

struct Choice {
  bool on = false;
  Method rho = Method::bitcom;
  double value = 0.0;  // Lagrangian density at the choice
};

Choice decide(const StateTerms& t, double lambda, ModePolicy modes) {
  const double off = lambda * t.r_off;
  const double sem_on = t.s_sem + lambda * t.r_on;
  const double bit_on = t.s_bit + lambda * t.r_on;
  switch (modes) {
    case ModePolicy::semcom_only:
      if (sem_on > off) return {true, Method::semcom, sem_on};
      return {false, Method::semcom, off};
    case ModePolicy::bitcom_only:
      if (bit_on > off) return {true, Method::bitcom, bit_on};
      return {false, Method::bitcom, off};
    case ModePolicy::opportunistic: {
      const bool bit_active = bit_on > off;
      const double best_bit = bit_active ? bit_on : off;
      if (sem_on > best_bit) return {true, Method::semcom, sem_on};
      return {bit_active, Method::bitcom, best_bit};
    }
  }
  return {};
}

struct Sweep {
  std::vector<Choice> choices;
  double mean_rate = 0.0;   // E[R~] under the choices
  double mean_value = 0.0;  // E[max Lagrangian density]
};

Sweep evaluate(const std::vector<StateTerms>& terms, double lambda,
               ModePolicy modes) {
  Sweep out;
  out.choices.reserve(terms.size());
  for (const StateTerms& t : terms) {
    const Choice c = decide(t, lambda, modes);
    out.mean_rate += c.on ? t.r_on : t.r_off;
    out.mean_value += c.value;
    out.choices.push_back(c);
  }
  out.mean_rate /= static_cast<double>(terms.size());
  out.mean_value /= static_cast<double>(terms.size());
  return out;
}

PolicyDecision to_decision(const Choice& c, double p0) {
  return c.on ? PolicyDecision{c.rho, 1.0, p0} : PolicyDecision{c.rho, 0.0, 0.0};
}

std::size_t on_off_differences(const Sweep& a, const Sweep& b) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < a.choices.size(); ++v)
    n += a.choices[v].on != b.choices[v].on;
  return n;
}

}  // namespace

void Scenario1Config::validate() const {
  if (!(p0 > 0.0)) throw ParameterError("scenario1: p0 must be > 0");
  if (!(r_bar >= 0.0)) throw ParameterError("scenario1: r_bar must be >= 0");
  if (!(lambda_tol > 0.0))
    throw ParameterError("scenario1: lambda_tol must be > 0");
  if (lambda_max_doublings < 1)
    throw ParameterError("scenario1: lambda_max_doublings must be >= 1");
}

PolicyDecision subproblem_s1(const FadingState& st, double lambda,
                             const Scenario1Config& cfg,
                             const SystemParams& params) {
  if (!(lambda >= 0.0)) throw ArgumentError("subproblem_s1: lambda must be >= 0");
  return to_decision(decide(make_terms(st, cfg, params), lambda, cfg.modes),
                     cfg.p0);
}

double all_off_ceiling(std::span<const FadingState> states,
                       const SystemParams& params) {
  if (states.empty()) throw ArgumentError("all_off_ceiling: no states");
  double sum = 0.0;
  for (const FadingState& st : states) sum += interference_free_rate(st, params);
  return sum / static_cast<double>(states.size());
}

Scenario1Solution solve_s1(std::span<const FadingState> states,
                           const Scenario1Config& cfg,
                           const SystemParams& params) {
  cfg.validate();
  params.validate();
  if (states.empty()) throw ArgumentError("solve_s1: no states");

  std::vector<StateTerms> terms;
  terms.reserve(states.size());
  for (const FadingState& st : states) terms.push_back(make_terms(st, cfg, params));

  const double ceiling = all_off_ceiling(states, params);
  if (cfg.r_bar > ceiling) {
    std::ostringstream msg;
    msg << "scenario1: infeasible target " << cfg.r_bar
        << " exceeds the all-off ceiling " << ceiling;
    throw InfeasibleError(msg.str());
  }

  Scenario1Solution sol;
  const auto finish = [&](const Sweep& sweep, double lambda) {
    sol.decisions.clear();
    for (const Choice& c : sweep.choices) sol.decisions.push_back(to_decision(c, cfg.p0));
    sol.lambda_star = lambda;
    sol.dual_value = sweep.mean_value - lambda * cfg.r_bar;
  };

  Sweep hi = evaluate(terms, 0.0, cfg.modes);
  ++sol.iterations;
  double lambda_hi = 0.0;
  double lambda_lo = 0.0;
  Sweep lo;

  if (hi.mean_rate < cfg.r_bar) {
    // Bracket the multiplier by doubling.
    lambda_hi = 1.0;
    int doublings = 0;
    for (;;) {
      Sweep trial = evaluate(terms, lambda_hi, cfg.modes);
      ++sol.iterations;
      if (trial.mean_rate >= cfg.r_bar) {
        hi = std::move(trial);
        break;
      }
      lo = std::move(trial);
      lambda_lo = lambda_hi;
      if (++doublings > cfg.lambda_max_doublings) {
        std::ostringstream msg;
        msg << "scenario1: no multiplier up to " << lambda_hi
            << " meets target " << cfg.r_bar;
        throw InfeasibleError(msg.str());
      }
      lambda_hi *= 2.0;
    }
    if (lambda_lo == 0.0) {
      lo = evaluate(terms, 0.0, cfg.modes);
      ++sol.iterations;
    }

    // Bisect until the feasible side meets the target within tolerance or
    // the two sides differ by a single state switching on/off.
    while (hi.mean_rate - cfg.r_bar > cfg.lambda_tol * cfg.r_bar &&
           on_off_differences(lo, hi) > 1 &&
           lambda_hi - lambda_lo > 1e-15 * lambda_hi) {
      const double mid = 0.5 * (lambda_lo + lambda_hi);
      Sweep trial = evaluate(terms, mid, cfg.modes);
      ++sol.iterations;
      if (trial.mean_rate >= cfg.r_bar) {
        hi = std::move(trial);
        lambda_hi = mid;
      } else {
        lo = std::move(trial);
        lambda_lo = mid;
      }
    }
  }

  finish(hi, lambda_hi);

  if (hi.mean_rate - cfg.r_bar > cfg.lambda_tol * cfg.r_bar && lambda_hi > 0.0) {
    // Time-share the states that switch inside the final bracket so the
    // constraint holds with equality.
    const double theta =
        (cfg.r_bar - lo.mean_rate) / (hi.mean_rate - lo.mean_rate);
    for (std::size_t v = 0; v < terms.size(); ++v) {
      const Choice& a = hi.choices[v];
      const Choice& b = lo.choices[v];
      if (a.on == b.on) continue;
      const Choice& on = a.on ? a : b;
      const double alpha = a.on ? theta : 1.0 - theta;
      sol.decisions[v] = {on.rho, alpha, cfg.p0};
      sol.time_shared_state = v;
    }
  }

  const EvalResult eval = evaluate_policy(sol.decisions, states, params);
  sol.ergodic_s = eval.ergodic_s;
  sol.ergodic_r = eval.ergodic_r;
  return sol;
}

}  // namespace semnoma
