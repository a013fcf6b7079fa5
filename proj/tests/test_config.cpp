#include <cmath>
#include <string>

#include "doctest.h"
#include "semnoma/config.hpp"
#include "semnoma/csv.hpp"
#include "semnoma/errors.hpp"

using namespace semnoma;
using nlohmann::json;

namespace {

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("default config reproduces the default system") {
  const RunConfig c;
  const SystemParams a = c.system(), b = SystemParams::defaults();
  CHECK(a.p_n == b.p_n);
  CHECK(a.sigma2 == doctest::Approx(b.sigma2).epsilon(1e-15));
  CHECK(a.sem.k == 5);
  CHECK(a.sem.eps_bar == 0.9);
  CHECK(a.bit.mu == 40.0);
  CHECK(a.n_geom.distance_m == 10.0);
  CHECK(a.f_geom.distance_m == 30.0);
  CHECK(c.region.p_f_max == 0.1);
  CHECK(c.figure.p0_cases == std::vector<double>{2.0, 10.0});
}

TEST_CASE("config round trip") {
  json doc = {
      {"system", {{"p_n_w", 2.0}, {"far", {{"distance_m", 40.0}}}}},
      {"semantic", {{"k", 4}, {"eps_bar", 0.45}}},
      {"monte_carlo", {{"seed", 99}, {"state_count", 123}, {"threads", 2}}},
      {"scenario2", {{"r_bar", 3.5}, {"p_avg", 1.5}, {"p_peak", 2.5}}},
      {"scheme", {{"mode", "semcom_only"}, {"time", "on_off"}}},
      {"figure", {{"budget_cases", {{1.0, 3.0}}}, {"r_bar_values", {1.0, 2.0}}}},
  };
  const RunConfig c = parse_config(doc);
  CHECK(c.p_n_w == 2.0);
  CHECK(c.far.distance_m == 40.0);
  CHECK(c.k == 4);
  CHECK(c.seed == 99);
  CHECK(c.state_count == 123);
  CHECK(c.figure.threads == 2);
  CHECK(c.scenario2.p_peak == 2.5);
  CHECK(c.scheme.mode == ModePolicy::semcom_only);
  CHECK(c.scheme.time == TimePolicy::on_off);
  CHECK(c.figure.budget_cases.size() == 1);
  const json once = to_json(c);
  CHECK(to_json(parse_config(once)) == once);
  CHECK(to_json(parse_config(to_json(RunConfig{}))) == to_json(RunConfig{}));
}

TEST_CASE("config errors name the key") {
  CHECK(config_error({{"system", {{"p_n", 1.0}}}}).find("system.p_n") != std::string::npos);
  CHECK(config_error({{"bogus", 1}}).find("bogus") != std::string::npos);
  CHECK(config_error({{"scenario2", {{"p_avg", "high"}}}}).find("scenario2.p_avg") !=
        std::string::npos);
  CHECK(config_error({{"semantic", {{"k", 7}}}}).find("semantic.logistic") !=
        std::string::npos);
  const json only_k4 = {
      {"semantic",
       {{"logistic", {{{"k", 4}, {"a1", 0.1}, {"a2", 0.95}, {"c1", 0.3}, {"c2", -0.4}}}}}}};
  CHECK(config_error(only_k4).find("no entry for k = 5") != std::string::npos);
  CHECK(config_error({{"scenario2", {{"p_avg", 5.0}, {"p_peak", 2.0}}}}).find("scenario2") !=
        std::string::npos);
  CHECK(config_error({{"scheme", {{"power", "half"}}}}).find("scheme.power") !=
        std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/semnoma.json"), ConfigError);
}

TEST_CASE("number formatting is stable") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_number(std::nan("")) == "nan");
  CsvTable t;
  t.header = {"a", "b"};
  t.add_row({"1", "2"});
  CHECK(t.to_string() == "a,b\n1,2\n");
  CHECK_THROWS_AS(t.add_row({"1"}), ArgumentError);
}
