#include "semnoma/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "semnoma/csv.hpp"
#include "semnoma/errors.hpp"

namespace semnoma {

namespace fs = std::filesystem;

ScenarioId parse_scenario(std::string_view text) {
  if (text == "s1") return ScenarioId::s1;
  if (text == "s2") return ScenarioId::s2;
  throw ArgumentError("unknown scenario '" + std::string(text) + "' (expected s1 or s2)");
}

namespace {

void write_manifest(const fs::path& path, std::string_view command, const RunConfig& cfg) {
  const nlohmann::json doc = {
      {"command", command},
      {"version", SEMNOMA_VERSION},
      {"git_describe", SEMNOMA_GIT_DESCRIBE},
      {"seed", cfg.seed},
      {"state_count", cfg.state_count},
      {"config", to_json(cfg)},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

void prepare(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error("cannot create output directory " + out.string() + ": " + ec.message());
}

std::vector<FadingState> states_for(const RunConfig& cfg, const SystemParams& params) {
  return sample_states(cfg.seed, cfg.state_count, params);
}

CsvTable per_state_table(std::span<const PolicyDecision> decisions,
                         std::span<const FadingState> states, const SystemParams& params) {
  CsvTable t;
  t.header = {"index", "hn2", "hf2", "rho", "alpha", "p", "R", "S"};
  for (std::size_t v = 0; v < states.size(); ++v) {
    const PolicyDecision& d = decisions[v];
    t.add_row({std::to_string(states[v].index), format_number(states[v].hn2),
               format_number(states[v].hf2), std::to_string(static_cast<int>(d.rho)),
               format_number(d.alpha), format_number(d.p),
               format_number(n_user_bit_rate(d.alpha, d.p, states[v], params)),
               format_number(f_user_semantic_rate(d, states[v], params))});
  }
  return t;
}

}  // namespace

int cmd_region(const RunConfig& cfg, const fs::path& out) {
  const SystemParams params = cfg.system();
  prepare(out);
  const FadingState st = static_state(params);
  for (RegionObjective obj : {RegionObjective::semcom, RegionObjective::bitcom_equivalent}) {
    RegionSpec spec = cfg.region;
    spec.objective = obj;
    CsvTable t;
    t.header = {"r_bar", "s", "p_f", "alpha_f"};
    for (const RegionPoint& pt : sweep_boundary(spec, st, params))
      t.add_row({format_number(pt.r_bar), format_number(pt.s), format_number(pt.p_f),
                 format_number(pt.alpha_f)});
    t.write(out / ("region_" + std::string(to_string(obj)) + ".csv"));
  }
  write_manifest(out / "region_manifest.json", "region", cfg);
  return 0;
}

int cmd_solve(ScenarioId scenario, const SchemeId& scheme, const RunConfig& cfg,
              const fs::path& out) {
  const SystemParams params = cfg.system();
  const std::vector<FadingState> states = states_for(cfg, params);
  CsvTable summary;
  summary.header = {"key", "value"};
  const auto put = [&](const char* key, double v) { summary.add_row({key, format_number(v)}); };
  std::string tag;
  std::vector<PolicyDecision> decisions;

  if (scenario == ScenarioId::s1) {
    tag = "s1";
    Scenario1Config c = cfg.scenario1;
    c.modes = scheme.mode;
    const Scenario1Solution sol = solve_s1(states, c, params);
    decisions = sol.decisions;
    summary.add_row({"scheme", to_string(SchemeId{scheme.mode, PowerPolicy::on_off,
                                                  TimePolicy::on_off})});
    put("r_bar", c.r_bar);
    put("p0", c.p0);
    put("lambda_star", sol.lambda_star);
    put("dual_value", sol.dual_value);
    put("ergodic_s", sol.ergodic_s);
    put("ergodic_r", sol.ergodic_r);
    put("iterations", sol.iterations);
    put("time_shared_state",
        sol.time_shared_state ? static_cast<double>(*sol.time_shared_state) : -1.0);
  } else {
    tag = "s2";
    Scenario2Config c = cfg.scenario2;
    c.modes = scheme.mode;
    c.power = scheme.power;
    c.time = scheme.time;
    const Scenario2Solution sol = solve_s2(states, c, params);
    decisions = sol.decisions;
    summary.add_row({"scheme", to_string(scheme)});
    put("r_bar", c.r_bar);
    put("p_avg", c.p_avg);
    put("p_peak", c.p_peak);
    put("beta_star", sol.duals.beta);
    put("delta_star", sol.duals.delta);
    put("g2", sol.dual_value);
    put("primal_objective", sol.ergodic_s);
    put("gap_estimate", sol.gap);
    put("ergodic_r", sol.ergodic_r);
    put("avg_power", sol.avg_power);
    put("iterations", sol.iterations);
    put("converged", sol.converged ? 1.0 : 0.0);
    put("lp_infeasible", sol.lp_infeasible ? 1.0 : 0.0);
    put("fractional_states", static_cast<double>(sol.fractional_states));
    if (!sol.converged)
      std::cerr << "warning: ellipsoid stopped at the iteration cap (" << sol.iterations
                << ")\n";
  }
  const EvalResult ev = evaluate_policy(decisions, states, params);
  put("frac_off", ev.frac_off);
  put("frac_bitcom", ev.frac_bitcom);
  put("frac_semcom", ev.frac_semcom);

  prepare(out);
  per_state_table(decisions, states, params).write(out / ("solution_" + tag + ".csv"));
  summary.write(out / ("summary_" + tag + ".csv"));
  write_manifest(out / ("solve_" + tag + "_manifest.json"), "solve " + tag, cfg);
  return 0;
}

int cmd_figure(FigureId fig, const RunConfig& cfg, const fs::path& out) {
  const SystemParams params = cfg.system();
  std::vector<FadingState> states;
  if (fig != FigureId::region) states = states_for(cfg, params);
  const CsvTable t =
      run_figure(fig, states, cfg.figure, cfg.scenario1, cfg.scenario2, params);
  prepare(out);
  const std::string name(to_string(fig));
  t.write(out / (name + ".csv"));
  write_manifest(out / (name + "_manifest.json"), "figure " + name, cfg);
  return 0;
}

int cmd_oracle_check(const RunConfig& cfg, int instances, int states_per, const fs::path& out) {
  if (instances < 1 || states_per < 1 || states_per > 64)
    throw ArgumentError("oracle-check: need instances >= 1 and 1..64 states");
  const SystemParams params = cfg.system();
  CsvTable t;
  t.header = {"instance", "seed", "status", "solver_s", "oracle_s", "oracle_dual_bound", "g2",
              "relative_gap", "fractional_states"};
  bool ok = true;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const auto states = sample_states(seed, static_cast<std::size_t>(states_per), params);
    const SchemeConfig sc = cfg.scenario2;
    const OracleResult orc = brute_force_oracle(cfg.scheme, states, OracleGrid{}, sc, params);
    std::vector<std::string> row{std::to_string(i), std::to_string(seed)};
    try {
      const SchemeOutcome sol = solve_scheme(cfg.scheme, states, sc, params);
      const double rel = std::abs(sol.eval.ergodic_s - orc.best_primal) /
                         std::max(orc.best_primal, 1e-12);
      const bool pass = orc.feasible && (rel <= 0.02 || std::abs(sol.eval.ergodic_s -
                                                                 orc.best_primal) <= 1e-6);
      ok = ok && pass;
      row.insert(row.end(), {pass ? "pass" : "fail", format_number(sol.eval.ergodic_s),
                             format_number(orc.best_primal), format_number(orc.dual_bound),
                             format_number(sol.dual_value), format_number(rel),
                             std::to_string(sol.fractional_states)});
    } catch (const InfeasibleError&) {
      const bool pass = !orc.feasible;
      ok = ok && pass;
      row.insert(row.end(), {pass ? "infeasible" : "fail", "nan", "nan", "nan", "nan", "nan",
                             "0"});
    }
    t.add_row(std::move(row));
  }
  prepare(out);
  t.write(out / "oracle_check.csv");
  write_manifest(out / "oracle_check_manifest.json", "oracle-check", cfg);
  return ok ? 0 : 3;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Two-user uplink NOMA with an opportunistic SemCom/BitCom far user"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> states;
  std::optional<unsigned> threads;
  app.add_option("--config", config_path, "JSON configuration file")->envname("SEMNOMA_CONFIG");
  app.add_option("--out", out_dir, "output directory")->envname("SEMNOMA_OUT");
  app.add_option("--seed", seed, "fading seed")->envname("SEMNOMA_SEED");
  app.add_option("--states", states, "number of fading states")->envname("SEMNOMA_STATES");
  app.add_option("--threads", threads, "worker threads for sweeps")
      ->envname("SEMNOMA_THREADS")
      ->check(CLI::PositiveNumber);

  CLI::App* region = app.add_subcommand("region", "semantic-versus-bit rate region boundary");

  CLI::App* solve = app.add_subcommand("solve", "optimal policy for one scenario");
  std::string scenario_text;
  std::string mode_text, power_text, time_text;
  solve->add_option("scenario", scenario_text, "s1 (on-off) or s2 (continuous)")->required();
  solve->add_option("--mode", mode_text, "opportunistic, semcom_only or bitcom_only");
  solve->add_option("--power", power_text, "s2 power policy: continuous or on_off");
  solve->add_option("--time", time_text, "s2 time policy: continuous or on_off");

  CLI::App* figure = app.add_subcommand("figure", "figure sweep data");
  std::string fig_text;
  figure->add_option("id", fig_text, "region|fig2, fig5, fig6, fig7, fig8, pavg, fig9")
      ->required();

  CLI::App* oracle = app.add_subcommand("oracle-check", "solver against brute force");
  int oracle_instances = 5;
  int oracle_states = 16;
  oracle->add_option("--instances", oracle_instances, "number of instances");
  oracle->add_option("--instance-states", oracle_states, "states per instance (<= 64)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (states) cfg.state_count = *states;
    if (threads) cfg.threads = cfg.figure.threads = *threads;
    cfg.validate();
    const fs::path out(out_dir);

    if (*region) return cmd_region(cfg, out);
    if (*solve) {
      SchemeId scheme = cfg.scheme;
      if (!mode_text.empty()) scheme.mode = parse_mode_policy(mode_text);
      if (!power_text.empty()) scheme.power = parse_power_policy(power_text);
      if (!time_text.empty()) scheme.time = parse_time_policy(time_text);
      return cmd_solve(parse_scenario(scenario_text), scheme, cfg, out);
    }
    if (*figure) return cmd_figure(parse_figure_id(fig_text), cfg, out);
    if (*oracle) return cmd_oracle_check(cfg, oracle_instances, oracle_states, out);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace semnoma
