#include "semnoma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "semnoma/errors.hpp"
#include "semnoma/parallel.hpp"

namespace semnoma {

std::string to_string(const SchemeId& scheme) {
  std::string out(to_string(scheme.mode));
  out += '/';
  out += to_string(scheme.power);
  out += '/';
  out += to_string(scheme.time);
  return out;
}

SchemeOutcome solve_scheme(const SchemeId& scheme, std::span<const FadingState> states,
                           const SchemeConfig& cfg, const SystemParams& params) {
  SchemeOutcome out;
  if (const auto* c1 = std::get_if<Scenario1Config>(&cfg)) {
    if (scheme.power != PowerPolicy::on_off || scheme.time != TimePolicy::on_off)
      throw ArgumentError("scheme " + to_string(scheme) +
                          " needs a continuous-scenario configuration");
    Scenario1Config c = *c1;
    c.modes = scheme.mode;
    Scenario1Solution sol = solve_s1(states, c, params);
    out.decisions = std::move(sol.decisions);
    out.multiplier = sol.lambda_star;
    out.dual_value = sol.dual_value;
    out.fractional_states = sol.time_shared_state ? 1 : 0;
  } else {
    Scenario2Config c = std::get<Scenario2Config>(cfg);
    c.modes = scheme.mode;
    c.power = scheme.power;
    c.time = scheme.time;
    Scenario2Solution sol = solve_s2(states, c, params);
    out.decisions = std::move(sol.decisions);
    out.multiplier = sol.duals.beta;
    out.delta = sol.duals.delta;
    out.dual_value = sol.dual_value;
    out.converged = sol.converged;
    out.fractional_states = sol.fractional_states;
  }
  out.eval = evaluate_policy(out.decisions, states, params);
  return out;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

struct Option {
  PolicyDecision dec;
  double s = 0.0;
  double loss = 0.0;
  double power = 0.0;
};

// Smallest power at which SemCom clears the similarity floor, by bisection on
// the rate itself; 0 if it does at any positive power, nullopt if never.
std::optional<double> sem_activation(const FadingState& st, double p_peak,
                                     const SystemParams& params) {
  if (semcom_rate(p_peak, st, params) <= 0.0) return std::nullopt;
  double lo = 0.0, hi = p_peak;
  if (semcom_rate(std::numeric_limits<double>::min(), st, params) > 0.0) return 0.0;
  for (int it = 0; it < 200 && std::nextafter(lo, hi) < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (semcom_rate(mid, st, params) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

std::vector<Option> state_options(const SchemeId& scheme, const FadingState& st,
                                  const OracleGrid& grid, const SchemeConfig& cfg,
                                  const SystemParams& params) {
  std::vector<Option> opts;
  opts.push_back({{Method::bitcom, 0.0, 0.0}, 0.0, 0.0, 0.0});
  const double r_off = n_user_bit_rate(0.0, 0.0, st, params);
  const auto add = [&](Method m, double alpha, double p) {
    const PolicyDecision dec{m, alpha, p};
    opts.push_back({dec, f_user_semantic_rate(dec, st, params),
                    r_off - n_user_bit_rate(alpha, p, st, params), alpha * p});
  };
  const Method methods[] = {Method::bitcom, Method::semcom};

  if (const auto* c1 = std::get_if<Scenario1Config>(&cfg)) {
    for (Method m : methods)
      if (allows(scheme.mode, m)) add(m, 1.0, c1->p0);
    return opts;
  }
  const auto& c2 = std::get<Scenario2Config>(cfg);
  std::vector<double> alphas;
  if (scheme.time == TimePolicy::on_off) {
    alphas = {1.0};
  } else {
    for (int k = 1; k < grid.alpha_levels; ++k)
      alphas.push_back(static_cast<double>(k) / (grid.alpha_levels - 1));
  }
  for (Method m : methods) {
    if (!allows(scheme.mode, m)) continue;
    std::vector<double> powers;
    if (scheme.power == PowerPolicy::on_off) {
      powers = {c2.p_peak};
    } else {
      for (int j = 1; j < grid.power_levels; ++j)
        powers.push_back(c2.p_peak * j / (grid.power_levels - 1));
      if (m == Method::semcom) {
        const auto act = sem_activation(st, c2.p_peak, params);
        if (act && *act > 0.0) {
          auto it = std::lower_bound(powers.begin(), powers.end(), *act);
          if (it != powers.end()) *it = *act;
        }
      }
    }
    for (double p : powers)
      for (double a : alphas) add(m, a, p);
  }
  return opts;
}

std::vector<double> log_grid(int count, double lo, double hi) {
  std::vector<double> out{0.0};
  for (int i = 0; i + 1 < count; ++i) {
    const double t = count > 2 ? static_cast<double>(i) / (count - 2) : 0.0;
    out.push_back(lo * std::pow(hi / lo, t));
  }
  return out;
}

}  // namespace

OracleResult brute_force_oracle(const SchemeId& scheme, std::span<const FadingState> states,
                                const OracleGrid& grid, const SchemeConfig& cfg,
                                const SystemParams& params) {
  if (states.empty() || states.size() > 64)
    throw ArgumentError("oracle: needs between 1 and 64 states");
  if (grid.power_levels < 2 || grid.alpha_levels < 2 || grid.beta_points < 2 ||
      grid.delta_points < 2)
    throw ArgumentError("oracle: grid sizes must be >= 2");

  const std::size_t n = states.size();
  const double nn = static_cast<double>(n);
  std::vector<std::vector<Option>> opts;
  double r_off_sum = 0.0;
  for (const FadingState& st : states) {
    opts.push_back(state_options(scheme, st, grid, cfg, params));
    r_off_sum += n_user_bit_rate(0.0, 0.0, st, params);
  }
  const bool apc = std::holds_alternative<Scenario2Config>(cfg);
  const double r_bar = apc ? std::get<Scenario2Config>(cfg).r_bar
                           : std::get<Scenario1Config>(cfg).r_bar;
  // Budgets in sum form.
  const double loss_budget = r_off_sum - nn * r_bar;
  const double power_budget =
      apc ? nn * std::get<Scenario2Config>(cfg).p_avg : std::numeric_limits<double>::infinity();

  OracleResult out;
  if (loss_budget < 0.0) return out;

  const std::vector<double> betas = log_grid(grid.beta_points, 1e-5, 10.0);
  const std::vector<double> deltas =
      apc ? log_grid(grid.delta_points, 1e-6, 1.0) : std::vector<double>{0.0};

  const auto within = [](double used, double budget) {
    return used <= budget + 1e-12 * std::max(1.0, std::abs(budget));
  };

  out.dual_bound = std::numeric_limits<double>::infinity();
  std::set<std::vector<int>> seeds;
  for (double beta : betas) {
    for (double delta : deltas) {
      std::vector<int> pick(n);
      double value = 0.0;
      for (std::size_t v = 0; v < n; ++v) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t o = 0; o < opts[v].size(); ++o) {
          const Option& op = opts[v][o];
          const double lag = op.s - beta * op.loss - delta * op.power;
          if (lag > best) {
            best = lag;
            pick[v] = static_cast<int>(o);
          }
        }
        value += best;
      }
      const double bound =
          (value + beta * loss_budget + (apc ? delta * power_budget : 0.0)) / nn;
      out.dual_bound = std::min(out.dual_bound, bound);
      seeds.insert(std::move(pick));
    }
  }

  double best_s = -1.0;
  std::vector<int> best_pick;
  for (std::vector<int> pick : seeds) {
    double s = 0.0, loss = 0.0, power = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const Option& op = opts[v][pick[v]];
      s += op.s;
      loss += op.loss;
      power += op.power;
    }
    const auto violation = [&](double l, double p) {
      double x = std::max(0.0, l - loss_budget) / std::max(loss_budget, 1e-12);
      if (apc) x += std::max(0.0, p - power_budget) / power_budget;
      return x;
    };
    // Repair: cheapest violation reduction per unit of objective given up.
    for (int it = 0; it < 4000 && !(within(loss, loss_budget) && within(power, power_budget));
         ++it) {
      const double now = violation(loss, power);
      double best_ratio = -1.0;
      std::size_t bv = 0, bo = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const Option& cur = opts[v][pick[v]];
        for (std::size_t o = 0; o < opts[v].size(); ++o) {
          const Option& op = opts[v][o];
          const double drop =
              now - violation(loss - cur.loss + op.loss, power - cur.power + op.power);
          if (drop <= 0.0) continue;
          const double ratio = drop / std::max(cur.s - op.s, 1e-15);
          if (ratio > best_ratio) {
            best_ratio = ratio;
            bv = v;
            bo = o;
          }
        }
      }
      if (best_ratio < 0.0) break;
      const Option& cur = opts[bv][pick[bv]];
      const Option& op = opts[bv][bo];
      s += op.s - cur.s;
      loss += op.loss - cur.loss;
      power += op.power - cur.power;
      pick[bv] = static_cast<int>(bo);
    }
    if (!(within(loss, loss_budget) && within(power, power_budget))) continue;
    // Improve: best single-state change that stays feasible.
    for (int it = 0; it < 4000; ++it) {
      double best_gain = 1e-15;
      std::size_t bv = n, bo = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const Option& cur = opts[v][pick[v]];
        for (std::size_t o = 0; o < opts[v].size(); ++o) {
          const Option& op = opts[v][o];
          const double gain = op.s - cur.s;
          if (gain <= best_gain) continue;
          if (!within(loss - cur.loss + op.loss, loss_budget) ||
              !within(power - cur.power + op.power, power_budget))
            continue;
          best_gain = gain;
          bv = v;
          bo = o;
        }
      }
      if (bv == n) break;
      const Option& cur = opts[bv][pick[bv]];
      const Option& op = opts[bv][bo];
      s += op.s - cur.s;
      loss += op.loss - cur.loss;
      power += op.power - cur.power;
      pick[bv] = static_cast<int>(bo);
    }
    if (s > best_s) {
      best_s = s;
      best_pick = pick;
    }
  }

  if (best_s >= 0.0) {
    out.feasible = true;
    out.best_primal = best_s / nn;
    for (std::size_t v = 0; v < n; ++v) out.policy.push_back(opts[v][best_pick[v]].dec);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Figures

std::string_view to_string(FigureId fig) {
  switch (fig) {
    case FigureId::region: return "region";
    case FigureId::fig5: return "fig5";
    case FigureId::fig6: return "fig6";
    case FigureId::fig7: return "fig7";
    case FigureId::fig8: return "fig8";
    case FigureId::pavg: return "pavg";
    case FigureId::fig9: return "fig9";
  }
  return "?";
}

FigureId parse_figure_id(std::string_view text) {
  if (text == "region" || text == "fig2") return FigureId::region;
  for (FigureId f : {FigureId::fig5, FigureId::fig6, FigureId::fig7, FigureId::fig8,
                     FigureId::pavg, FigureId::fig9})
    if (text == to_string(f)) return f;
  throw ArgumentError("unknown figure '" + std::string(text) +
                      "' (expected region, fig2, fig5, fig6, fig7, fig8, pavg, fig9)");
}

std::vector<std::string> sweep_header(const std::vector<std::string>& case_columns) {
  std::vector<std::string> h = case_columns;
  for (const char* c : {"scheme", "mode", "power", "time", "status", "ergodic_s", "ergodic_r",
                        "avg_power", "frac_off", "frac_bitcom", "frac_semcom", "multiplier",
                        "delta", "dual_value", "converged"})
    h.emplace_back(c);
  return h;
}

namespace {

struct Job {
  std::vector<double> case_values;
  SchemeId scheme;
  SchemeConfig cfg;
};

CsvTable run_jobs(const std::vector<std::string>& case_columns, const std::vector<Job>& jobs,
                  std::span<const FadingState> states, const SystemParams& params,
                  unsigned threads) {
  std::vector<std::vector<std::string>> rows(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    std::vector<std::string> row;
    for (double x : job.case_values) row.push_back(format_number(x));
    row.push_back(to_string(job.scheme));
    row.emplace_back(to_string(job.scheme.mode));
    row.emplace_back(to_string(job.scheme.power));
    row.emplace_back(to_string(job.scheme.time));
    try {
      const SchemeOutcome o = solve_scheme(job.scheme, states, job.cfg, params);
      row.emplace_back("ok");
      for (double x : {o.eval.ergodic_s, o.eval.ergodic_r, o.eval.avg_power, o.eval.frac_off,
                       o.eval.frac_bitcom, o.eval.frac_semcom, o.multiplier, o.delta,
                       o.dual_value})
        row.push_back(format_number(x));
      row.emplace_back(o.converged ? "1" : "0");
    } catch (const InfeasibleError&) {
      row.emplace_back("infeasible");
      for (int k = 0; k < 9; ++k) row.emplace_back("nan");
      row.emplace_back("0");
    }
    rows[i] = std::move(row);
  });
  CsvTable t;
  t.header = sweep_header(case_columns);
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

const ModePolicy kModes[] = {ModePolicy::opportunistic, ModePolicy::semcom_only,
                             ModePolicy::bitcom_only};

}  // namespace

CsvTable run_figure(FigureId fig, std::span<const FadingState> states,
                    const FigureSettings& settings, const Scenario1Config& base1,
                    const Scenario2Config& base2, const SystemParams& params) {
  std::vector<Job> jobs;
  std::vector<std::string> cols;
  const auto s1 = [&](double p0, double r_bar) {
    Scenario1Config c = base1;
    c.p0 = p0;
    c.r_bar = r_bar;
    return c;
  };
  const auto s2 = [&](double p_avg, double p_peak, double r_bar) {
    Scenario2Config c = base2;
    c.p_avg = p_avg;
    c.p_peak = p_peak;
    c.r_bar = r_bar;
    return c;
  };
  const auto on_off = [](ModePolicy m) {
    return SchemeId{m, PowerPolicy::on_off, TimePolicy::on_off};
  };
  const auto continuous = [](ModePolicy m) {
    return SchemeId{m, PowerPolicy::continuous, TimePolicy::continuous};
  };

  switch (fig) {
    case FigureId::region: {
      const FadingState st = static_state(params);
      CsvTable t;
      t.header = {"p_f_max", "objective", "r_bar", "s", "p_f", "alpha_f"};
      for (double pmax : settings.region_p_max)
        for (RegionObjective obj : {RegionObjective::semcom, RegionObjective::bitcom_equivalent}) {
          RegionSpec spec = settings.region;
          spec.p_f_max = pmax;
          spec.objective = obj;
          for (const RegionPoint& pt : sweep_boundary(spec, st, params))
            t.add_row({format_number(pmax), std::string(to_string(obj)),
                       format_number(pt.r_bar), format_number(pt.s), format_number(pt.p_f),
                       format_number(pt.alpha_f)});
        }
      return t;
    }
    case FigureId::fig5:
      cols = {"p0", "r_bar"};
      for (double p0 : settings.p0_cases)
        for (ModePolicy m : kModes)
          for (double r : settings.r_bar_values) jobs.push_back({{p0, r}, on_off(m), s1(p0, r)});
      break;
    case FigureId::fig6:
      cols = {"r_bar", "p0"};
      for (double r : settings.r_bar_cases)
        for (ModePolicy m : kModes)
          for (double p0 : settings.p0_values) jobs.push_back({{r, p0}, on_off(m), s1(p0, r)});
      break;
    case FigureId::fig7:
      cols = {"r_bar", "p0"};
      for (double r : settings.r_bar_cases)
        for (double p0 : settings.p0_cases)
          jobs.push_back({{r, p0}, on_off(ModePolicy::opportunistic), s1(p0, r)});
      break;
    case FigureId::fig8:
      cols = {"p_avg", "p_peak", "r_bar"};
      for (const auto& [pa, pp] : settings.budget_cases)
        for (ModePolicy m : kModes)
          for (double r : settings.r_bar_values)
            jobs.push_back({{pa, pp, r}, continuous(m), s2(pa, pp, r)});
      break;
    case FigureId::pavg:
      cols = {"r_bar", "p_peak", "p_avg"};
      for (double r : settings.r_bar_cases)
        for (ModePolicy m : kModes)
          for (double pa : settings.p_avg_values)
            jobs.push_back({{r, settings.pavg_peak, pa}, continuous(m),
                            s2(pa, settings.pavg_peak, r)});
      break;
    case FigureId::fig9: {
      cols = {"p_avg", "p_peak", "r_bar"};
      const double pa = settings.fig9_p_avg, pp = settings.fig9_p_peak;
      for (PowerPolicy pw : {PowerPolicy::continuous, PowerPolicy::on_off})
        for (TimePolicy tm : {TimePolicy::continuous, TimePolicy::on_off})
          for (double r : settings.r_bar_values)
            jobs.push_back({{pa, pp, r}, SchemeId{ModePolicy::opportunistic, pw, tm},
                            s2(pa, pp, r)});
      break;
    }
  }
  return run_jobs(cols, jobs, states, params, settings.threads);
}

}  // namespace semnoma
