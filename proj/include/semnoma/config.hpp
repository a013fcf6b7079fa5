#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "json.hpp"

#include "semnoma/experiments.hpp"
#include "semnoma/link_model.hpp"
#include "semnoma/rate_region.hpp"
#include "semnoma/scenario1.hpp"
#include "semnoma/scenario2.hpp"
#include "semnoma/semantic_model.hpp"

namespace semnoma {

/// Everything a CLI run needs, in human units. Defaults reproduce the
/// numerical study.
struct RunConfig {
  // system
  double p_n_w = 1.0;
  double noise_dbm = -80.0;
  LinkGeometry near{10.0, -30.0, 4.0};
  LinkGeometry far{30.0, -30.0, 4.0};
  // semantic
  int k = 5;
  double eps_bar = 0.9;
  double i_suts = 1.0;
  double l_words = 1.0;
  LogisticTable logistic = LogisticTable::defaults();
  // bitcom
  BitComProfile bit;
  // monte_carlo
  std::uint64_t seed = 1;
  std::size_t state_count = 10000;
  unsigned threads = 1;

  RegionSpec region;
  Scenario1Config scenario1;
  Scenario2Config scenario2;
  SchemeId scheme;
  FigureSettings figure;

  /// Throws ConfigError naming the offending key.
  SystemParams system() const;
  void validate() const;
};

/// Reads a JSON document; unknown keys and wrong types are ConfigErrors that
/// name the dotted key path. Missing keys keep their defaults.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved document; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace semnoma
