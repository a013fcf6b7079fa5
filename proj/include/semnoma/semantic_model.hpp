#pragma once

#include <map>
#include <vector>

namespace semnoma {

/// Generalized-logistic surrogate of the DeepSC sentence similarity for a
/// fixed number of semantic symbols per word:
///
///   eps(gamma) = a1 + (a2 - a1) / (1 + exp(-(c1 * gamma + c2)))
///
/// with gamma the linear received SNR.
struct LogisticParams {
  int k = 0;         // semantic symbols per word
  double a1 = 0.0;   // lower asymptote
  double a2 = 0.0;   // upper asymptote
  double c1 = 0.0;   // growth rate
  double c2 = 0.0;   // midpoint offset

  // Throws ParameterError unless 0 < a1 < a2 <= 1, c1 > 0 and k >= 1.
  void validate() const;
};

/// SemCom source/transceiver description (I suts per sentence of L words,
/// K symbols per word, similarity floor eps_bar).
struct SemComProfile {
  double i_suts = 1.0;
  double l_words = 1.0;
  int k = 5;
  double eps_bar = 0.9;
  LogisticParams logistic;

  void validate() const;

  // I / (K L): converts a similarity into suts/s/Hz.
  double rate_scale() const { return i_suts / (k * l_words); }

  // Largest rate SemCom can ever deliver, I a2 / (K L).
  double rate_ceiling() const { return rate_scale() * logistic.a2; }
};

/// BitCom description used for the equivalent semantic rate.
struct BitComProfile {
  double mu = 40.0;    // bits per word
  double eps_c = 1.0;  // similarity achieved by error-free bit transport

  void validate() const;
};

double similarity(const LogisticParams& params, double gamma);

// (alpha I / (K L)) eps(gamma) 1(eps(gamma) >= eps_bar).
double effective_semantic_rate(const SemComProfile& profile, double alpha,
                               double gamma);

// alpha log2(1 + gamma) I / (mu L) eps_c.
double equivalent_semantic_rate(const BitComProfile& bit,
                                const SemComProfile& profile, double alpha,
                                double gamma);

// log2(1 + gamma) eps_c / mu - eps(gamma) / K. Positive means BitCom wins at
// this SNR. The similarity floor is ignored.
double semcom_bitcom_gap(const BitComProfile& bit, const SemComProfile& profile,
                         double gamma);

// Returns params with c2 refit so that similarity(gamma_anchor) equals
// eps_anchor. Throws CalibrationError unless a1 < eps_anchor < a2.
LogisticParams calibrate_midpoint(const LogisticParams& params,
                                  double gamma_anchor, double eps_anchor);

/// Smallest SNR at which the similarity floor is met. Zero when the floor
/// holds everywhere, +infinity when it is never met. The returned value is
/// nudged up so that effective_semantic_rate is nonzero at it.
double threshold_snr(const SemComProfile& profile);

/// Per-K logistic parameter table.
class LogisticTable {
 public:
  LogisticTable() = default;

  // K=4 is calibrated so that eps(0 dB) = 0.5; K=5 uses fixed placeholders.
  static LogisticTable defaults();

  void set(const LogisticParams& params);
  bool contains(int k) const { return entries_.count(k) != 0; }
  // Throws ParameterError when K has no entry.
  const LogisticParams& at(int k) const;
  std::vector<LogisticParams> entries() const;

 private:
  std::map<int, LogisticParams> entries_;
};

/// Profile with the given K taken from the table.
SemComProfile make_semcom_profile(const LogisticTable& table, int k,
                                  double eps_bar, double i_suts = 1.0,
                                  double l_words = 1.0);

}  // namespace semnoma
