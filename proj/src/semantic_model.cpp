#include "semnoma/semantic_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "semnoma/errors.hpp"

namespace semnoma {

void LogisticParams::validate() const {
  if (k >= 1 && a1 > 0.0 && a2 > a1 && a2 <= 1.0 && c1 > 0.0 &&
      std::isfinite(c2))
    return;
  std::ostringstream why;
  why << "logistic params (K=" << k << "): ";
  if (k < 1) why << "k must be >= 1; ";
  if (!(a1 > 0.0)) why << "a1 must be > 0 (got " << a1 << "); ";
  if (!(a2 > a1)) why << "a2 must exceed a1 (got " << a2 << "); ";
  if (!(a2 <= 1.0)) why << "a2 must be <= 1 (got " << a2 << "); ";
  if (!(c1 > 0.0)) why << "c1 must be > 0 (got " << c1 << "); ";
  if (!std::isfinite(c2)) why << "c2 must be finite; ";
  throw ParameterError(why.str());
}

void SemComProfile::validate() const {
  if (!(i_suts > 0.0)) throw ParameterError("semcom: i_suts must be > 0");
  if (!(l_words > 0.0)) throw ParameterError("semcom: l_words must be > 0");
  if (k < 1) throw ParameterError("semcom: k must be >= 1");
  if (!(eps_bar > 0.0 && eps_bar <= 1.0))
    throw ParameterError("semcom: eps_bar must lie in (0, 1]");
  logistic.validate();
  if (logistic.k != k)
    throw ParameterError("semcom: logistic table entry is for K=" +
                         std::to_string(logistic.k) + ", profile uses K=" +
                         std::to_string(k));
}

void BitComProfile::validate() const {
  if (!(mu > 0.0)) throw ParameterError("bitcom: mu must be > 0");
  if (!(eps_c > 0.0 && eps_c <= 1.0))
    throw ParameterError("bitcom: eps_c must lie in (0, 1]");
}

double similarity(const LogisticParams& params, double gamma) {
  params.validate();
  if (!(gamma >= 0.0)) throw ParameterError("similarity: gamma must be >= 0");
  const double z = params.c1 * gamma + params.c2;
  return params.a1 + (params.a2 - params.a1) / (1.0 + std::exp(-z));
}

double effective_semantic_rate(const SemComProfile& profile, double alpha,
                               double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("effective_semantic_rate: alpha outside [0, 1]");
  const double eps = similarity(profile.logistic, gamma);
  if (eps < profile.eps_bar || alpha == 0.0) return 0.0;
  return alpha * profile.rate_scale() * eps;
}

double equivalent_semantic_rate(const BitComProfile& bit,
                                const SemComProfile& profile, double alpha,
                                double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("equivalent_semantic_rate: alpha outside [0, 1]");
  if (!(gamma >= 0.0))
    throw ParameterError("equivalent_semantic_rate: gamma must be >= 0");
  return alpha * std::log2(1.0 + gamma) * profile.i_suts /
         (bit.mu * profile.l_words) * bit.eps_c;
}

double semcom_bitcom_gap(const BitComProfile& bit, const SemComProfile& profile,
                         double gamma) {
  const double s_bit = std::log2(1.0 + gamma) * bit.eps_c / bit.mu;
  const double s_sem = similarity(profile.logistic, gamma) / profile.k;
  return s_bit - s_sem;
}

LogisticParams calibrate_midpoint(const LogisticParams& params,
                                  double gamma_anchor, double eps_anchor) {
  params.validate();
  if (!(eps_anchor > params.a1 && eps_anchor < params.a2)) {
    std::ostringstream msg;
    msg << "calibrate_midpoint: anchor similarity " << eps_anchor
        << " is outside the open range (" << params.a1 << ", " << params.a2
        << ")";
    throw CalibrationError(msg.str());
  }
  LogisticParams out = params;
  const double ratio = (params.a2 - params.a1) / (eps_anchor - params.a1);
  out.c2 = -std::log(ratio - 1.0) - params.c1 * gamma_anchor;
  return out;
}

double threshold_snr(const SemComProfile& profile) {
  const LogisticParams& lp = profile.logistic;
  if (similarity(lp, 0.0) >= profile.eps_bar) return 0.0;
  if (profile.eps_bar >= lp.a2) return std::numeric_limits<double>::infinity();
  const double ratio = (lp.a2 - lp.a1) / (profile.eps_bar - lp.a1);
  double gamma = (-std::log(ratio - 1.0) - lp.c2) / lp.c1;
  gamma = std::max(gamma, 0.0);
  // The closed form can land an ulp short of the floor.
  while (similarity(lp, gamma) < profile.eps_bar)
    gamma = std::nextafter(gamma, std::numeric_limits<double>::infinity());
  return gamma;
}

LogisticTable LogisticTable::defaults() {
  LogisticTable table;
  // Anchor: eps_4(0 dB) = 0.5.
  table.set(calibrate_midpoint({4, 0.1, 0.95, 0.3, 0.0}, 1.0, 0.5));
  table.set({5, 0.1, 0.98, 0.25, -0.25});
  return table;
}

void LogisticTable::set(const LogisticParams& params) {
  params.validate();
  entries_[params.k] = params;
}

const LogisticParams& LogisticTable::at(int k) const {
  auto it = entries_.find(k);
  if (it == entries_.end())
    throw ParameterError("no logistic parameters for K=" + std::to_string(k));
  return it->second;
}

std::vector<LogisticParams> LogisticTable::entries() const {
  std::vector<LogisticParams> out;
  out.reserve(entries_.size());
  for (const auto& [k, p] : entries_) out.push_back(p);
  return out;
}

SemComProfile make_semcom_profile(const LogisticTable& table, int k,
                                  double eps_bar, double i_suts,
                                  double l_words) {
  SemComProfile profile;
  profile.i_suts = i_suts;
  profile.l_words = l_words;
  profile.k = k;
  profile.eps_bar = eps_bar;
  profile.logistic = table.at(k);
  profile.validate();
  return profile;
}

}  // namespace semnoma
