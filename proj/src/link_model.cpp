#include "semnoma/link_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "semnoma/errors.hpp"

namespace semnoma {

void LinkGeometry::validate() const {
  if (!(distance_m > 0.0))
    throw ParameterError("link geometry: distance_m must be > 0");
  if (!(path_exp > 0.0))
    throw ParameterError("link geometry: path_exp must be > 0");
  if (!std::isfinite(rho0_db))
    throw ParameterError("link geometry: rho0_db must be finite");
}

void SystemParams::validate() const {
  if (!(p_n > 0.0)) throw ParameterError("system: p_n must be > 0");
  if (!(sigma2 > 0.0)) throw ParameterError("system: sigma2 must be > 0");
  n_geom.validate();
  f_geom.validate();
  sem.validate();
  bit.validate();
}

SystemParams SystemParams::defaults() {
  SystemParams params;
  params.p_n = 1.0;
  params.sigma2 = dbm_to_watts(-80.0);
  params.n_geom = {10.0, -30.0, 4.0};
  params.f_geom = {30.0, -30.0, 4.0};
  params.sem = make_semcom_profile(LogisticTable::defaults(), 5, 0.9);
  params.bit = {40.0, 1.0};
  return params;
}

std::string_view to_string(ModePolicy mode) {
  switch (mode) {
    case ModePolicy::opportunistic: return "opportunistic";
    case ModePolicy::semcom_only: return "semcom_only";
    case ModePolicy::bitcom_only: return "bitcom_only";
  }
  return "unknown";
}

ModePolicy parse_mode_policy(std::string_view text) {
  if (text == "opportunistic") return ModePolicy::opportunistic;
  if (text == "semcom_only") return ModePolicy::semcom_only;
  if (text == "bitcom_only") return ModePolicy::bitcom_only;
  throw ArgumentError("unknown mode policy '" + std::string(text) + "'");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double path_loss(const LinkGeometry& geom) {
  geom.validate();
  return db_to_linear(geom.rho0_db) * std::pow(1.0 / geom.distance_m, geom.path_exp);
}

std::vector<FadingState> sample_states(std::uint64_t seed, std::size_t count,
                                       const SystemParams& params) {
  if (count == 0) throw ArgumentError("sample_states: count must be >= 1");
  const double rho_n = path_loss(params.n_geom);
  const double rho_f = path_loss(params.f_geom);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> unit_exp(1.0);
  std::vector<FadingState> states(count);
  for (std::size_t v = 0; v < count; ++v) {
    const double e_n = unit_exp(rng);
    const double e_f = unit_exp(rng);
    states[v] = {v, rho_n * e_n, rho_f * e_f};
  }
  return states;
}

FadingState static_state(const SystemParams& params) {
  return {0, path_loss(params.n_geom), path_loss(params.f_geom)};
}

double snr(double p, double h2, double sigma2) {
  if (!(sigma2 > 0.0)) throw ArgumentError("snr: sigma2 must be > 0");
  if (!(p >= 0.0) || !(h2 >= 0.0))
    throw ArgumentError("snr: power and gain must be >= 0");
  return p * h2 / sigma2;
}

double interference_free_rate(const FadingState& st, const SystemParams& params) {
  return std::log2(1.0 + params.p_n * st.hn2 / params.sigma2);
}

double interfered_rate(double p_f, const FadingState& st,
                       const SystemParams& params) {
  return std::log2(1.0 + params.p_n * st.hn2 / (p_f * st.hf2 + params.sigma2));
}

double n_user_bit_rate(double alpha, double p_f, const FadingState& st,
                       const SystemParams& params) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ArgumentError("n_user_bit_rate: alpha outside [0, 1]");
  if (!(p_f >= 0.0)) throw ArgumentError("n_user_bit_rate: p_f must be >= 0");
  return alpha * interfered_rate(p_f, st, params) +
         (1.0 - alpha) * interference_free_rate(st, params);
}

double semcom_rate(double p, const FadingState& st, const SystemParams& params) {
  return effective_semantic_rate(params.sem, 1.0, snr(p, st.hf2, params.sigma2));
}

double bitcom_rate(double p, const FadingState& st, const SystemParams& params) {
  return equivalent_semantic_rate(params.bit, params.sem, 1.0,
                                  snr(p, st.hf2, params.sigma2));
}

double f_user_semantic_rate(const PolicyDecision& dec, const FadingState& st,
                            const SystemParams& params) {
  if (!(dec.alpha >= 0.0 && dec.alpha <= 1.0))
    throw ArgumentError("f_user_semantic_rate: alpha outside [0, 1]");
  const double gamma = snr(dec.p, st.hf2, params.sigma2);
  return dec.semcom()
             ? effective_semantic_rate(params.sem, dec.alpha, gamma)
             : equivalent_semantic_rate(params.bit, params.sem, dec.alpha, gamma);
}

}  // namespace semnoma
