#include "semnoma/scenario2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "semnoma/errors.hpp"
#include "semnoma/evaluation.hpp"
#include "semnoma/scenario1.hpp"
#include "semnoma/time_share_lp.hpp"

namespace semnoma {

std::string_view to_string(PowerPolicy policy) {
  return policy == PowerPolicy::continuous ? "continuous" : "on_off";
}

std::string_view to_string(TimePolicy policy) {
  return policy == TimePolicy::continuous ? "continuous" : "on_off";
}

PowerPolicy parse_power_policy(std::string_view text) {
  if (text == "continuous") return PowerPolicy::continuous;
  if (text == "on_off") return PowerPolicy::on_off;
  throw ArgumentError("unknown power policy '" + std::string(text) + "'");
}

TimePolicy parse_time_policy(std::string_view text) {
  if (text == "continuous") return TimePolicy::continuous;
  if (text == "on_off") return TimePolicy::on_off;
  throw ArgumentError("unknown time policy '" + std::string(text) + "'");
}

void Scenario2Config::validate() const {
  if (std::isfinite(r_bar) && r_bar >= 0.0 && std::isfinite(p_peak) &&
      p_avg > 0.0 && p_avg <= p_peak && power_grid >= 2 && ellipsoid_tol > 0.0 &&
      ellipsoid_max_iters >= 1 && ellipsoid_radius > 0.0)
    return;
  std::ostringstream msg;
  msg << "scenario2 config: need r_bar >= 0 (" << r_bar << "), 0 < p_avg <= p_peak ("
      << p_avg << ", " << p_peak << "), power_grid >= 2 (" << power_grid
      << "), positive ellipsoid_tol, ellipsoid_max_iters and ellipsoid_radius";
  throw ParameterError(msg.str());
}

namespace {

constexpr int kBrentBits = std::numeric_limits<double>::digits / 2;
constexpr std::uintmax_t kBrentIters = 100;
constexpr std::size_t kRunnersUp = 8;
constexpr double kPerturbations[] = {1e-3, 1e-2, 1e-1};
constexpr int kRefineRounds = 2;
constexpr double kRefineTol = 1e-10;
constexpr std::size_t kMaxTied = 4;
constexpr double kJump = 1e-6;  // power change that counts as a jump, per unit p_peak

double grid_point(int i, int n, double hi) {
  return hi * (static_cast<double>(i) / static_cast<double>(n - 1));
}

double rate_of(Method m, double p, const FadingState& st, const SystemParams& params) {
  return m == Method::semcom ? semcom_rate(p, st, params) : bitcom_rate(p, st, params);
}

// Per-state data that does not depend on the multipliers. Grid values are
// cached so each dual evaluation is a pass of fused multiply-adds.
class StateModel {
 public:
  StateModel(const FadingState& st, const Scenario2Config& cfg,
             const SystemParams& params, bool cache_grid)
      : st_(st), cfg_(&cfg), params_(&params) {
    r_off_ = interference_free_rate(st, params);
    const double gamma_c = threshold_snr(params.sem);
    const double a = st.hf2 / params.sigma2;
    if (gamma_c <= 0.0) {
      p_cross_ = 0.0;
    } else if (!std::isfinite(gamma_c) || a <= 0.0 || gamma_c / a > cfg.p_peak) {
      p_cross_ = std::numeric_limits<double>::infinity();
    } else {
      p_cross_ = gamma_c / a;
      for (int k = 0; k < 64 && p_cross_ <= cfg.p_peak &&
                      semcom_rate(p_cross_, st, params) == 0.0;
           ++k)
        p_cross_ = std::nextafter(p_cross_, std::numeric_limits<double>::infinity());
      if (p_cross_ > cfg.p_peak) p_cross_ = std::numeric_limits<double>::infinity();
    }
    if (cache_grid && cfg.power == PowerPolicy::continuous) {
      const int n = cfg.power_grid;
      s_sem_.resize(n);
      s_bit_.resize(n);
      dr_.resize(n);
      for (int i = 0; i < n; ++i) {
        const double p = grid_point(i, n, cfg.p_peak);
        s_sem_[i] = semcom_rate(p, st, params);
        s_bit_[i] = bitcom_rate(p, st, params);
        dr_[i] = interfered_rate(p, st, params) - r_off_;
      }
    }
  }

  double r_off() const { return r_off_; }

  double value(double p, Method m, const DualPoint& d) const {
    return rate_of(m, p, st_, *params_) +
           d.beta * (interfered_rate(p, st_, *params_) - r_off_) - d.delta * p;
  }

  double rate_loss(double p) const { return r_off_ - interfered_rate(p, st_, *params_); }

  PiMaximum maximize(Method m, const DualPoint& d) const {
    const Scenario2Config& cfg = *cfg_;
    PiMaximum out;
    if (cfg.power == PowerPolicy::on_off) {
      const double v0 = value(0.0, m, d);
      const double v1 = value(cfg.p_peak, m, d);
      out.p_active = cfg.p_peak;
      out.pi_active = v1;
      if (v1 > v0) {
        out.p_star = cfg.p_peak;
        out.pi_star = v1;
      } else {
        out.pi_star = v0;
      }
      return out;
    }

    const int n = cfg.power_grid;
    // Grid index where the SemCom floor switches on; pieces are [0, split) and
    // [split, n) in index space, with p_cross itself added as a candidate.
    int split = 0;
    const bool two_pieces = m == Method::semcom && p_cross_ > 0.0 && p_cross_ <= cfg.p_peak;
    if (two_pieces) {
      split = static_cast<int>(std::ceil(p_cross_ / cfg.p_peak * (n - 1)));
      while (split > 0 && grid_point(split - 1, n, cfg.p_peak) >= p_cross_) --split;
      while (split < n && grid_point(split, n, cfg.p_peak) < p_cross_) ++split;
    }

    out.pi_star = -std::numeric_limits<double>::infinity();
    out.pi_active = -std::numeric_limits<double>::infinity();
    const auto consider = [&](double lo, double hi, bool lo_open, bool hi_open,
                              int i_begin, int i_end, bool active_piece) {
      // Candidates, in order: the lower endpoint when it belongs to the piece
      // and is off the grid, then the piece's grid points.
      const bool lo_extra =
          !lo_open && (i_begin >= i_end || grid_point(i_begin, n, cfg.p_peak) > lo);
      const int count = std::max(0, i_end - i_begin) + (lo_extra ? 1 : 0);
      if (count == 0) return;
      const auto cand_p = [&](int k) {
        if (lo_extra) return k == 0 ? lo : grid_point(i_begin + k - 1, n, cfg.p_peak);
        return grid_point(i_begin + k, n, cfg.p_peak);
      };
      const auto cand_v = [&](int k) {
        const int i = i_begin + k - (lo_extra ? 1 : 0);
        if (dr_.empty() || (lo_extra && k == 0)) return value(cand_p(k), m, d);
        return (m == Method::semcom ? s_sem_[i] : s_bit_[i]) + d.beta * dr_[i] -
               d.delta * cand_p(k);
      };
      struct Cand {
        double p, v;
      };
      int best = 0, best_pos = -1;
      double v_best = -std::numeric_limits<double>::infinity();
      double v_pos = v_best;
      for (int k = 0; k < count; ++k) {
        const double v = cand_v(k);
        if (v > v_best) {
          v_best = v;
          best = k;
        }
        if (cand_p(k) > 0.0 && v > v_pos) {
          v_pos = v;
          best_pos = k;
        }
      }
      const auto refine = [&](int k, double vk) -> Cand {
        const double a = k > 0 ? cand_p(k - 1) : lo;
        const double b = k + 1 < count ? cand_p(k + 1) : hi;
        Cand top{cand_p(k), vk};
        if (!(b > a)) return top;
        // Brent on the bracket around the best grid point.
        std::uintmax_t iters = kBrentIters;
        const auto [x, fx] = boost::math::tools::brent_find_minima(
            [&](double p) { return -value(p, m, d); }, a, b, kBrentBits, iters);
        if (-fx > top.v && x > 0.0 && !(hi_open && x >= hi)) top = {x, -fx};
        return top;
      };
      const Cand r = refine(best, v_best);
      if (r.v > out.pi_star) {
        out.p_star = r.p;
        out.pi_star = r.v;
      }
      if (active_piece && best_pos >= 0) {
        const Cand ra = best_pos == best && r.p > 0.0 ? r : refine(best_pos, v_pos);
        if (ra.p > 0.0 && ra.v > out.pi_active) {
          out.p_active = ra.p;
          out.pi_active = ra.v;
        }
      }
    };

    if (two_pieces) {
      consider(0.0, p_cross_, false, true, 0, split, false);
      consider(p_cross_, cfg.p_peak, false, false, split, n, true);
    } else {
      consider(0.0, cfg.p_peak, false, false, 0, n, true);
    }
    // p = 0 wins exact ties: the zero-power point is the first candidate and
    // only strictly better points replace it.
    if (out.pi_star <= value(0.0, m, d)) {
      out.p_star = 0.0;
      out.pi_star = value(0.0, m, d);
    }
    if (out.pi_active == -std::numeric_limits<double>::infinity()) {
      out.p_active = cfg.p_peak;
      out.pi_active = value(cfg.p_peak, m, d);
    }
    return out;
  }

  struct Decision {
    StateLagrangian lag;
    PiMaximum sem, bit;
  };

  Decision decide(const DualPoint& d) const {
    const ModePolicy modes = cfg_->modes;
    Decision out;
    const bool use_sem = allows(modes, Method::semcom);
    const bool use_bit = allows(modes, Method::bitcom);
    if (use_sem) out.sem = maximize(Method::semcom, d);
    if (use_bit) out.bit = maximize(Method::bitcom, d);
    const double l_sem = use_sem ? std::max(out.sem.pi_star, 0.0) : 0.0;
    const double l_bit = use_bit ? std::max(out.bit.pi_star, 0.0) : 0.0;
    Method rho;
    if (!use_bit)
      rho = Method::semcom;
    else if (!use_sem)
      rho = Method::bitcom;
    else
      rho = l_sem > l_bit ? Method::semcom : Method::bitcom;
    const PiMaximum& pm = rho == Method::semcom ? out.sem : out.bit;
    StateLagrangian& lag = out.lag;
    lag.decision.rho = rho;
    if (pm.pi_star > 0.0) {
      lag.decision.alpha = 1.0;
      lag.decision.p = pm.p_star;
      lag.contribution = d.beta * r_off_ + pm.pi_star;
      lag.rate = interfered_rate(pm.p_star, st_, *params_);
    } else {
      lag.decision.alpha = 0.0;
      lag.decision.p = pm.p_star;
      lag.contribution = d.beta * r_off_;
      lag.rate = r_off_;
    }
    return out;
  }

 private:
  FadingState st_;
  const Scenario2Config* cfg_;
  const SystemParams* params_;
  double r_off_ = 0.0;
  double p_cross_ = 0.0;  // 0: floor met everywhere; inf: never within p_peak
  std::vector<double> s_sem_, s_bit_, dr_;
};

class Problem {
 public:
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;
  Problem(std::span<const FadingState> states, const Scenario2Config& cfg,
          const SystemParams& params)
      : states_(states), cfg_(cfg), params_(params) {
    cfg_.validate();
    params_.validate();
    if (states.empty()) throw ArgumentError("scenario2: no fading states");
    models_.reserve(states.size());
    for (const FadingState& st : states) models_.emplace_back(st, cfg_, params_, true);
  }

  const Scenario2Config& cfg() const { return cfg_; }
  std::size_t size() const { return models_.size(); }
  const StateModel& model(std::size_t v) const { return models_[v]; }

  double ceiling() const {
    double sum = 0.0;
    for (const StateModel& m : models_) sum += m.r_off();
    return sum / static_cast<double>(models_.size());
  }

  // Per-state decisions held fixed while the multipliers move; null entries
  // (or an empty vector) leave a state free.
  using Pins = std::vector<const StateModel::Decision*>;

  DualEvaluation evaluate(const DualPoint& d, const Pins& pins = {}) const {
    double contribution = 0.0, rate = 0.0, power = 0.0;
    for (std::size_t v = 0; v < models_.size(); ++v) {
      const StateModel& m = models_[v];
      const bool pinned = !pins.empty() && pins[v] != nullptr;
      const StateLagrangian lag = pinned ? pins[v]->lag : m.decide(d).lag;
      contribution += lag.contribution;
      rate += lag.rate;
      power += lag.decision.alpha * lag.decision.p;
    }
    const double n = static_cast<double>(models_.size());
    DualEvaluation out;
    out.g2 = contribution / n - d.beta * cfg_.r_bar + d.delta * cfg_.p_avg;
    out.subgrad = {rate / n - cfg_.r_bar, cfg_.p_avg - power / n};
    return out;
  }

  void check_feasible() const {
    const double c = ceiling();
    if (cfg_.r_bar > c) {
      std::ostringstream msg;
      msg << "scenario2: infeasible target " << cfg_.r_bar
          << " exceeds the all-off ceiling " << c;
      throw InfeasibleError(msg.str());
    }
  }

  EllipsoidResult ellipsoid() const {
    check_feasible();
    EllipsoidResult out;
    EllipsoidState& e = out.final_state;
    const double b2 = cfg_.ellipsoid_radius * cfg_.ellipsoid_radius;
    e.center = {1.0, 1.0};
    e.shape = {{{b2, 0.0}, {0.0, b2}}};

    double best = std::numeric_limits<double>::infinity();
    DualPoint best_point{};
    std::vector<std::pair<double, DualPoint>> visited;
    for (int it = 0; it < cfg_.ellipsoid_max_iters; ++it) {
      out.iterations = it + 1;
      std::array<double, 2> g;
      bool objective_cut = false;
      if (e.center[0] < 0.0) {
        g = {-1.0, 0.0};
      } else if (e.center[1] < 0.0) {
        g = {0.0, -1.0};
      } else {
        const DualPoint d{e.center[0], e.center[1]};
        const DualEvaluation ev = evaluate(d);
        if (ev.g2 < best) {
          best = ev.g2;
          best_point = d;
        }
        out.best_trace.push_back(best);
        visited.emplace_back(ev.g2, d);
        g = ev.subgrad;
        objective_cut = true;
      }
      const auto& A = e.shape;
      const std::array<double, 2> ag{A[0][0] * g[0] + A[0][1] * g[1],
                                     A[1][0] * g[0] + A[1][1] * g[1]};
      const double gag = g[0] * ag[0] + g[1] * ag[1];
      if (!(gag > 0.0)) {
        out.converged = objective_cut;
        break;
      }
      const double root = std::sqrt(gag);
      if (objective_cut && root <= cfg_.ellipsoid_tol) {
        out.converged = true;
        break;
      }
      const std::array<double, 2> gt{ag[0] / root, ag[1] / root};
      e.center[0] -= gt[0] / 3.0;
      e.center[1] -= gt[1] / 3.0;
      std::array<std::array<double, 2>, 2> next{};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          next[r][c] = 4.0 / 3.0 * (A[r][c] - 2.0 / 3.0 * gt[r] * gt[c]);
      next[0][1] = next[1][0] = 0.5 * (next[0][1] + next[1][0]);
      e.shape = next;
    }
    if (!std::isfinite(best)) {
      best_point = {std::max(e.center[0], 0.0), std::max(e.center[1], 0.0)};
      best = evaluate(best_point).g2;
    }
    out.duals = best_point;
    out.g2 = best;
    std::stable_sort(visited.begin(), visited.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [g, d] : visited) {
      if (out.runners_up.size() >= kRunnersUp) break;
      if (d.beta == best_point.beta && d.delta == best_point.delta) continue;
      out.runners_up.push_back(d);
    }
    return out;
  }

  // Bisection on one multiplier (0: beta, 1: delta) with the other held, to
  // where its subgradient component turns non-negative. Returns the bracket
  // (lo, hi); hi sits on the feasible side of that constraint.
  std::pair<DualPoint, DualPoint> refine(DualPoint d, int coord, const Pins& pins = {}) const {
    const auto at = [&](double c) {
      DualPoint q = d;
      (coord == 0 ? q.beta : q.delta) = c;
      return q;
    };
    const auto slack = [&](double c) { return evaluate(at(c), pins).subgrad[coord]; };
    const double c0 = coord == 0 ? d.beta : d.delta;
    if (slack(0.0) >= 0.0) return {at(0.0), at(0.0)};
    double lo = 0.0, hi = std::max(c0, 1e-12);
    if (slack(hi) >= 0.0) {
      for (int k = 0; k < 60 && hi > 1e-300; ++k) {
        const double next = 0.5 * hi;
        if (slack(next) < 0.0) {
          lo = next;
          break;
        }
        hi = next;
      }
    } else {
      for (int k = 0; k < 200; ++k) {
        lo = hi;
        hi *= 2.0;
        if (slack(hi) >= 0.0) break;
      }
    }
    for (int k = 0; k < 100 && hi - lo > kRefineTol * hi; ++k) {
      const double mid = 0.5 * (lo + hi);
      (slack(mid) >= 0.0 ? hi : lo) = mid;
    }
    return {at(lo), at(hi)};
  }

  std::vector<StateModel::Decision> decide_all(const DualPoint& d, const Pins& pins = {}) const {
    std::vector<StateModel::Decision> out;
    out.reserve(models_.size());
    for (std::size_t v = 0; v < models_.size(); ++v)
      out.push_back(!pins.empty() && pins[v] ? *pins[v] : models_[v].decide(d));
    return out;
  }

  Scenario2Solution recover(const DualPoint& raw) const {
    const DualPoint d{std::max(raw.beta, 0.0), std::max(raw.delta, 0.0)};
    return recover_fixed(d, decide_all(d));
  }

  // LP recovery with each state's method and power taken from `fixed`.
  Scenario2Solution recover_fixed(const DualPoint& d,
                                  const std::vector<StateModel::Decision>& fixed) const {
    check_feasible();
    const std::size_t n = models_.size();
    TimeShareLp lp;
    lp.gain.resize(n);
    lp.loss.resize(n);
    lp.power.resize(n);
    std::vector<PolicyDecision> decisions(n);
    double off_sum = 0.0;
    double lag_value = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const StateModel::Decision& f = fixed[v];
      PolicyDecision dec = f.lag.decision;
      lag_value += f.lag.contribution;
      if (dec.alpha == 0.0) {
        // Zero-density states may still be reopened by the LP: offer the best
        // positive-power point of an allowed method, ranked by Pi per unit of
        // gain (a tiny BitCom power has Pi near 0 but is worthless).
        const auto score = [&](Method m, const PiMaximum& pm) {
          const double gain = rate_of(m, pm.p_active, states_[v], params_);
          return gain > 0.0 ? pm.pi_active / gain : -std::numeric_limits<double>::infinity();
        };
        const bool use_sem = allows(cfg_.modes, Method::semcom);
        const bool use_bit = allows(cfg_.modes, Method::bitcom);
        if (use_sem && (!use_bit || score(Method::semcom, f.sem) >
                                        score(Method::bitcom, f.bit))) {
          dec.rho = Method::semcom;
          dec.p = f.sem.p_active;
        } else {
          dec.rho = Method::bitcom;
          dec.p = f.bit.p_active;
        }
      }
      decisions[v] = dec;
      const StateModel& m = models_[v];
      lp.gain[v] = std::max(rate_of(dec.rho, dec.p, states_[v], params_), 0.0);
      lp.loss[v] = std::max(m.rate_loss(dec.p), 0.0);
      lp.power[v] = dec.p;
      off_sum += m.r_off();
    }
    lp.loss_budget = off_sum - static_cast<double>(n) * cfg_.r_bar;
    lp.power_budget = static_cast<double>(n) * cfg_.p_avg;

    Scenario2Solution sol;
    sol.duals = d;
    const TimeShareLpResult res = solve_time_share_lp(lp);
    if (res.feasible) {
      for (std::size_t v = 0; v < n; ++v) {
        double a = res.alpha[v];
        if (cfg_.time == TimePolicy::on_off && a < 1.0) a = 0.0;
        decisions[v].alpha = a;
      }
    } else {
      sol.lp_infeasible = true;
      for (std::size_t v = 0; v < n; ++v) decisions[v] = fixed[v].lag.decision;
    }
    for (PolicyDecision& dec : decisions) {
      if (dec.alpha == 0.0) dec.p = 0.0;
      if (dec.alpha > 0.0 && dec.alpha < 1.0) ++sol.fractional_states;
    }

    const EvalResult ev = evaluate_policy(decisions, states_, params_);
    sol.decisions = std::move(decisions);
    sol.ergodic_s = ev.ergodic_s;
    sol.ergodic_r = ev.ergodic_r;
    sol.avg_power = ev.avg_power;
    sol.dual_value = lag_value / static_cast<double>(n) - d.beta * cfg_.r_bar +
                     d.delta * cfg_.p_avg;
    sol.gap = sol.dual_value - sol.ergodic_s;
    return sol;
  }

 private:
  std::span<const FadingState> states_;
  Scenario2Config cfg_;
  SystemParams params_;
  std::vector<StateModel> models_;
};

}  // namespace

double pi_value(double p, Method mode, const FadingState& st, const DualPoint& dual,
                const Scenario2Config& cfg, const SystemParams& params) {
  if (!(p >= 0.0 && p <= cfg.p_peak)) {
    std::ostringstream msg;
    msg << "pi_value: power " << p << " outside [0, " << cfg.p_peak << "]";
    throw ArgumentError(msg.str());
  }
  return rate_of(mode, p, st, params) +
         dual.beta * (interfered_rate(p, st, params) - interference_free_rate(st, params)) -
         dual.delta * p;
}

PiMaximum maximize_pi(Method mode, const FadingState& st, const DualPoint& dual,
                      const Scenario2Config& cfg, const SystemParams& params) {
  cfg.validate();
  return StateModel(st, cfg, params, false).maximize(mode, dual);
}

StateLagrangian subproblem_s2(const FadingState& st, const DualPoint& dual,
                              const Scenario2Config& cfg, const SystemParams& params) {
  cfg.validate();
  return StateModel(st, cfg, params, false).decide(dual).lag;
}

DualEvaluation dual_function(std::span<const FadingState> states, const DualPoint& dual,
                             const Scenario2Config& cfg, const SystemParams& params) {
  return Problem(states, cfg, params).evaluate(dual);
}

EllipsoidResult ellipsoid_solve(std::span<const FadingState> states,
                                const Scenario2Config& cfg, const SystemParams& params) {
  return Problem(states, cfg, params).ellipsoid();
}

Scenario2Solution recover_primal(std::span<const FadingState> states,
                                 const DualPoint& duals, const Scenario2Config& cfg,
                                 const SystemParams& params) {
  return Problem(states, cfg, params).recover(duals);
}

Scenario2Solution solve_s2(std::span<const FadingState> states,
                           const Scenario2Config& cfg, const SystemParams& params) {
  const Problem problem(states, cfg, params);
  const EllipsoidResult e = problem.ellipsoid();

  std::vector<DualPoint> candidates{e.duals};
  candidates.insert(candidates.end(), e.runners_up.begin(), e.runners_up.end());
  for (double eps : kPerturbations) {
    candidates.push_back({e.duals.beta * (1.0 - eps), e.duals.delta});
    candidates.push_back({e.duals.beta * (1.0 + eps), e.duals.delta});
    candidates.push_back({e.duals.beta, e.duals.delta * (1.0 - eps)});
    candidates.push_back({e.duals.beta, e.duals.delta * (1.0 + eps)});
  }
  // The dual is flat near its minimum, so the ellipsoid center can sit where
  // a constraint is visibly slack; coordinate bisection pins each multiplier
  // to the point where its constraint turns tight.
  DualPoint d = e.duals;
  struct Bracket {
    DualPoint lo, hi;
    int coord;
  };
  std::vector<Bracket> brackets;
  for (int round = 0; round < kRefineRounds; ++round)
    for (int coord : {1, 0}) {
      const auto [lo, hi] = problem.refine(d, coord);
      candidates.push_back(lo);
      candidates.push_back(hi);
      if (round + 1 == kRefineRounds) brackets.push_back({lo, hi, coord});
      d = hi;
    }

  const auto feasible = [&](const Scenario2Solution& s) {
    return !s.lp_infeasible &&
           s.ergodic_r >= cfg.r_bar - 1e-9 * std::max(cfg.r_bar, 1.0) &&
           s.avg_power <= cfg.p_avg * (1.0 + 1e-9);
  };
  Scenario2Solution best = problem.recover(e.duals);
  const auto offer = [&](Scenario2Solution s) {
    if (feasible(s) && (!feasible(best) || s.ergodic_s > best.ergodic_s)) best = std::move(s);
  };
  for (std::size_t k = 1; k < candidates.size(); ++k) offer(problem.recover(candidates[k]));

  // At a bracket's multiplier the states whose decision jumps across it are
  // tied. Try each way of resolving those ties, re-tightening the constraint
  // with the tied states held.
  for (const auto& [lo, hi, coord] : brackets) {
    const auto at_lo = problem.decide_all(lo);
    const auto at_hi = problem.decide_all(hi);
    std::vector<std::size_t> tied;
    for (std::size_t v = 0; v < at_lo.size() && tied.size() < kMaxTied; ++v) {
      const PolicyDecision& a = at_lo[v].lag.decision;
      const PolicyDecision& b = at_hi[v].lag.decision;
      if (a.rho != b.rho || a.alpha != b.alpha || std::abs(a.p - b.p) > kJump * cfg.p_peak)
        tied.push_back(v);
    }
    if (tied.empty()) continue;
    for (std::size_t mask = 0; mask < (std::size_t{1} << tied.size()); ++mask) {
      Problem::Pins pins(at_hi.size(), nullptr);
      for (std::size_t j = 0; j < tied.size(); ++j)
        pins[tied[j]] = mask >> j & 1 ? &at_lo[tied[j]] : &at_hi[tied[j]];
      const DualPoint tight = problem.refine(hi, coord, pins).second;
      offer(problem.recover_fixed(tight, problem.decide_all(tight, pins)));
    }
  }
  best.duals = e.duals;
  best.dual_value = e.g2;
  best.gap = best.dual_value - best.ergodic_s;
  best.iterations = e.iterations;
  best.converged = e.converged;
  return best;
}

}  // namespace semnoma
