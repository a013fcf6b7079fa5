#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "semnoma/semantic_model.hpp"

namespace semnoma {

/// Large-scale link description: rho = 10^(rho0_db/10) * (1/d)^path_exp.
struct LinkGeometry {
  double distance_m = 1.0;
  double rho0_db = -30.0;
  double path_exp = 4.0;

  void validate() const;
};

/// Everything the rate formulas need. Powers and noise are in Watts.
struct SystemParams {
  double p_n = 1.0;       // N-user transmit power
  double sigma2 = 1e-11;  // noise power at the AP
  LinkGeometry n_geom{10.0, -30.0, 4.0};
  LinkGeometry f_geom{30.0, -30.0, 4.0};
  SemComProfile sem;
  BitComProfile bit;

  void validate() const;

  // Two-user setup used throughout the numerical study: P_n = 1 W,
  // sigma^2 = -80 dBm, 10 m / 30 m links, K = 5, eps_bar = 0.9, mu = 40.
  static SystemParams defaults();
};

/// One block-fading realization (linear power gains, path loss included).
struct FadingState {
  std::size_t index = 0;
  double hn2 = 0.0;
  double hf2 = 0.0;
};

enum class Method : int { bitcom = 0, semcom = 1 };

/// What the F-user does in one fading state.
struct PolicyDecision {
  Method rho = Method::bitcom;
  double alpha = 0.0;  // time share
  double p = 0.0;      // transmit power, W

  bool semcom() const { return rho == Method::semcom; }
};

/// Which communication methods the F-user may pick from.
enum class ModePolicy { opportunistic, semcom_only, bitcom_only };

std::string_view to_string(ModePolicy mode);
ModePolicy parse_mode_policy(std::string_view text);

inline bool allows(ModePolicy policy, Method m) {
  switch (policy) {
    case ModePolicy::opportunistic: return true;
    case ModePolicy::semcom_only: return m == Method::semcom;
    case ModePolicy::bitcom_only: return m == Method::bitcom;
  }
  return false;
}

double dbm_to_watts(double dbm);
double db_to_linear(double db);

double path_loss(const LinkGeometry& geom);

/// Rayleigh block fading: unit-mean exponential power gains scaled by the path
/// loss of each link. Deterministic for a given seed.
std::vector<FadingState> sample_states(std::uint64_t seed, std::size_t count,
                                       const SystemParams& params);

/// Path-loss-only channel (no small-scale fading), index 0.
FadingState static_state(const SystemParams& params);

double snr(double p, double h2, double sigma2);

// log2(1 + P_n |h_n|^2 / sigma^2): N-user rate while the F-user is silent.
double interference_free_rate(const FadingState& st, const SystemParams& params);

// log2(1 + P_n |h_n|^2 / (p_f |h_f|^2 + sigma^2)): N-user rate under
// F-user interference at power p_f.
double interfered_rate(double p_f, const FadingState& st,
                       const SystemParams& params);

// Time-shared N-user rate:
//   alpha * interfered_rate(p_f) + (1 - alpha) * interference_free_rate.
double n_user_bit_rate(double alpha, double p_f, const FadingState& st,
                       const SystemParams& params);

// Per-unit-time F-user rates at power p (alpha = 1).
double semcom_rate(double p, const FadingState& st, const SystemParams& params);
double bitcom_rate(double p, const FadingState& st, const SystemParams& params);

// alpha * (SemCom or equivalent BitCom rate) at snr(p, |h_f|^2, sigma^2).
// SIC removes the N-user signal first, so there is no interference term.
double f_user_semantic_rate(const PolicyDecision& dec, const FadingState& st,
                            const SystemParams& params);

}  // namespace semnoma
