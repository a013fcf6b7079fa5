#include "semnoma/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "semnoma/errors.hpp"

namespace semnoma {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported by their dotted path.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(key_path(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer() && !v->is_number_unsigned())
        throw ConfigError(key_path(key) + ": expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_integer() && v->get<long long>() < 0)
          throw ConfigError(key_path(key) + ": expected a non-negative integer");
      }
      out = v->get<Int>();
    }
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(key_path(key) + ": expected an array of numbers");
      out.clear();
      for (const json& x : *v) {
        if (!x.is_number()) throw ConfigError(key_path(key) + ": expected an array of numbers");
        out.push_back(x.get<double>());
      }
    }
  }

  template <class Parse>
  void text(const std::string& key, Parse&& parse) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(key_path(key) + ": expected a string");
      try {
        parse(v->get<std::string>());
      } catch (const Error& e) {
        throw ConfigError(key_path(key) + ": " + e.what());
      }
    }
  }

  std::optional<Section> sub(const std::string& key) {
    if (const json* v = find(key)) return Section(*v, key_path(key));
    return std::nullopt;
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(key_path(it.key()) + ": unknown key");
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_geometry(Section& s, LinkGeometry& g) {
  s.number("distance_m", g.distance_m);
  s.number("rho0_db", g.rho0_db);
  s.number("path_exp", g.path_exp);
  s.finish();
}

json geometry_json(const LinkGeometry& g) {
  return {{"distance_m", g.distance_m}, {"rho0_db", g.rho0_db}, {"path_exp", g.path_exp}};
}

// Runs a validate() and rewraps its message under a config key.
template <class Fn>
void check(const std::string& key, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

SystemParams RunConfig::system() const {
  SystemParams p;
  p.p_n = p_n_w;
  p.sigma2 = dbm_to_watts(noise_dbm);
  p.n_geom = near;
  p.f_geom = far;
  check("semantic.logistic", [&] {
    if (!logistic.contains(k))
      throw ParameterError("no entry for k = " + std::to_string(k));
  });
  check("semantic", [&] { p.sem = make_semcom_profile(logistic, k, eps_bar, i_suts, l_words); });
  p.bit = bit;
  check("bitcom", [&] { p.bit.validate(); });
  check("system", [&] { p.validate(); });
  return p;
}

void RunConfig::validate() const {
  (void)system();
  if (state_count == 0) throw ConfigError("monte_carlo.state_count: must be >= 1");
  if (threads == 0) throw ConfigError("monte_carlo.threads: must be >= 1");
  check("region", [&] { region.validate(); });
  check("scenario1", [&] { scenario1.validate(); });
  check("scenario2", [&] { scenario2.validate(); });
  for (double x : figure.region_p_max)
    if (!(x > 0.0)) throw ConfigError("figure.region_p_max: entries must be > 0");
  for (double x : figure.p_avg_values)
    if (!(x > 0.0 && x <= figure.pavg_peak))
      throw ConfigError("figure.p_avg_values: entries must lie in (0, pavg_peak]");
  for (const auto& [pa, pp] : figure.budget_cases)
    if (!(pa > 0.0 && pa <= pp))
      throw ConfigError("figure.budget_cases: need 0 < p_avg <= p_peak");
  if (!(figure.fig9_p_avg > 0.0 && figure.fig9_p_avg <= figure.fig9_p_peak))
    throw ConfigError("figure.fig9_p_avg: need 0 < fig9_p_avg <= fig9_p_peak");
}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  Section root(doc, "");
  if (auto s = root.sub("system")) {
    s->number("p_n_w", c.p_n_w);
    s->number("noise_dbm", c.noise_dbm);
    if (auto g = s->sub("near")) read_geometry(*g, c.near);
    if (auto g = s->sub("far")) read_geometry(*g, c.far);
    s->finish();
  }
  if (auto s = root.sub("semantic")) {
    s->integer("k", c.k);
    s->number("eps_bar", c.eps_bar);
    s->number("i_suts", c.i_suts);
    s->number("l_words", c.l_words);
    if (const json* table = s->find("logistic")) {
      const std::string key = s->key_path("logistic");
      if (!table->is_array()) throw ConfigError(key + ": expected an array of entries");
      c.logistic = LogisticTable{};
      for (std::size_t i = 0; i < table->size(); ++i) {
        Section e((*table)[i], key + "[" + std::to_string(i) + "]");
        LogisticParams lp;
        e.integer("k", lp.k);
        e.number("a1", lp.a1);
        e.number("a2", lp.a2);
        e.number("c1", lp.c1);
        e.number("c2", lp.c2);
        e.finish();
        check(key + "[" + std::to_string(i) + "]", [&] { lp.validate(); });
        c.logistic.set(lp);
      }
    }
    s->finish();
  }
  if (auto s = root.sub("bitcom")) {
    s->number("mu", c.bit.mu);
    s->number("eps_c", c.bit.eps_c);
    s->finish();
  }
  if (auto s = root.sub("monte_carlo")) {
    s->integer("seed", c.seed);
    s->integer("state_count", c.state_count);
    s->integer("threads", c.threads);
    s->finish();
  }
  if (auto s = root.sub("region")) {
    s->number("p_f_max", c.region.p_f_max);
    s->integer("p_grid", c.region.p_grid);
    s->integer("alpha_grid", c.region.alpha_grid);
    s->integer("r_sweep", c.region.r_sweep);
    s->finish();
  }
  if (auto s = root.sub("scenario1")) {
    s->number("p0", c.scenario1.p0);
    s->number("r_bar", c.scenario1.r_bar);
    s->number("lambda_tol", c.scenario1.lambda_tol);
    s->integer("lambda_max_doublings", c.scenario1.lambda_max_doublings);
    s->finish();
  }
  if (auto s = root.sub("scenario2")) {
    Scenario2Config& s2 = c.scenario2;
    s->number("r_bar", s2.r_bar);
    s->number("p_avg", s2.p_avg);
    s->number("p_peak", s2.p_peak);
    s->integer("power_grid", s2.power_grid);
    s->number("ellipsoid_tol", s2.ellipsoid_tol);
    s->integer("ellipsoid_max_iters", s2.ellipsoid_max_iters);
    s->number("ellipsoid_radius", s2.ellipsoid_radius);
    s->finish();
  }
  if (auto s = root.sub("scheme")) {
    s->text("mode", [&](const std::string& v) { c.scheme.mode = parse_mode_policy(v); });
    s->text("power", [&](const std::string& v) { c.scheme.power = parse_power_policy(v); });
    s->text("time", [&](const std::string& v) { c.scheme.time = parse_time_policy(v); });
    s->finish();
  }
  if (auto s = root.sub("figure")) {
    FigureSettings& f = c.figure;
    s->numbers("region_p_max", f.region_p_max);
    s->numbers("r_bar_values", f.r_bar_values);
    s->numbers("p0_cases", f.p0_cases);
    s->numbers("r_bar_cases", f.r_bar_cases);
    s->numbers("p0_values", f.p0_values);
    if (const json* v = s->find("budget_cases")) {
      const std::string key = s->key_path("budget_cases");
      if (!v->is_array()) throw ConfigError(key + ": expected an array of [p_avg, p_peak]");
      f.budget_cases.clear();
      for (const json& pair : *v) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number())
          throw ConfigError(key + ": expected an array of [p_avg, p_peak]");
        f.budget_cases.emplace_back(pair[0].get<double>(), pair[1].get<double>());
      }
    }
    s->numbers("p_avg_values", f.p_avg_values);
    s->number("pavg_peak", f.pavg_peak);
    s->number("fig9_p_avg", f.fig9_p_avg);
    s->number("fig9_p_peak", f.fig9_p_peak);
    s->finish();
  }
  root.finish();
  c.figure.region = c.region;
  c.figure.threads = c.threads;
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json logistic = json::array();
  for (const LogisticParams& lp : c.logistic.entries())
    logistic.push_back({{"k", lp.k}, {"a1", lp.a1}, {"a2", lp.a2}, {"c1", lp.c1}, {"c2", lp.c2}});
  json budgets = json::array();
  for (const auto& [pa, pp] : c.figure.budget_cases) budgets.push_back({pa, pp});
  const Scenario2Config& s2 = c.scenario2;
  return {
      {"system",
       {{"p_n_w", c.p_n_w},
        {"noise_dbm", c.noise_dbm},
        {"near", geometry_json(c.near)},
        {"far", geometry_json(c.far)}}},
      {"semantic",
       {{"k", c.k},
        {"eps_bar", c.eps_bar},
        {"i_suts", c.i_suts},
        {"l_words", c.l_words},
        {"logistic", logistic}}},
      {"bitcom", {{"mu", c.bit.mu}, {"eps_c", c.bit.eps_c}}},
      {"monte_carlo",
       {{"seed", c.seed}, {"state_count", c.state_count}, {"threads", c.threads}}},
      {"region",
       {{"p_f_max", c.region.p_f_max},
        {"p_grid", c.region.p_grid},
        {"alpha_grid", c.region.alpha_grid},
        {"r_sweep", c.region.r_sweep}}},
      {"scenario1",
       {{"p0", c.scenario1.p0},
        {"r_bar", c.scenario1.r_bar},
        {"lambda_tol", c.scenario1.lambda_tol},
        {"lambda_max_doublings", c.scenario1.lambda_max_doublings}}},
      {"scenario2",
       {{"r_bar", s2.r_bar},
        {"p_avg", s2.p_avg},
        {"p_peak", s2.p_peak},
        {"power_grid", s2.power_grid},
        {"ellipsoid_tol", s2.ellipsoid_tol},
        {"ellipsoid_max_iters", s2.ellipsoid_max_iters},
        {"ellipsoid_radius", s2.ellipsoid_radius}}},
      {"scheme",
       {{"mode", std::string(to_string(c.scheme.mode))},
        {"power", std::string(to_string(c.scheme.power))},
        {"time", std::string(to_string(c.scheme.time))}}},
      {"figure",
       {{"region_p_max", c.figure.region_p_max},
        {"r_bar_values", c.figure.r_bar_values},
        {"p0_cases", c.figure.p0_cases},
        {"r_bar_cases", c.figure.r_bar_cases},
        {"p0_values", c.figure.p0_values},
        {"budget_cases", budgets},
        {"p_avg_values", c.figure.p_avg_values},
        {"pavg_peak", c.figure.pavg_peak},
        {"fig9_p_avg", c.figure.fig9_p_avg},
        {"fig9_p_peak", c.figure.fig9_p_peak}}},
  };
}

}  // namespace semnoma
