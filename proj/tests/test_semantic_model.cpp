#include <cmath>
#include <random>

#include "doctest.h"
#include "semnoma/errors.hpp"
#include "semnoma/semantic_model.hpp"

using namespace semnoma;

namespace {

// Reference logistic evaluated in long double.
long double logistic_ref(const LogisticParams& p, long double g) {
  return p.a1 + (static_cast<long double>(p.a2) - p.a1) /
                    (1.0L + std::exp(-(static_cast<long double>(p.c1) * g + p.c2)));
}

SemComProfile k4_profile(double eps_bar) {
  return make_semcom_profile(LogisticTable::defaults(), 4, eps_bar);
}

}  // namespace

TEST_CASE("similarity at the 0 dB anchor for K=4 is one half") {
  const LogisticParams p = LogisticTable::defaults().at(4);
  CHECK(similarity(p, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("similarity at zero SNR is the closed form") {
  for (int k : {4, 5}) {
    const LogisticParams p = LogisticTable::defaults().at(k);
    const double expected = p.a1 + (p.a2 - p.a1) / (1.0 + std::exp(-p.c2));
    CHECK(similarity(p, 0.0) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("similarity saturates at the upper asymptote") {
  const LogisticParams p = LogisticTable::defaults().at(4);
  const double v = similarity(p, 1e6);
  CHECK(std::abs(v - p.a2) <= 1e-6);
  CHECK(std::abs(static_cast<long double>(v) - logistic_ref(p, 1e6L)) <= 1e-15L);
}

TEST_CASE("similarity rejects invalid parameters and negative SNR") {
  LogisticParams p = LogisticTable::defaults().at(5);
  CHECK_THROWS_AS(similarity(p, -1.0), ParameterError);
  p.a1 = 0.99;
  CHECK_THROWS_AS(similarity(p, 1.0), ParameterError);
  p = LogisticTable::defaults().at(5);
  p.c1 = 0.0;
  CHECK_THROWS_AS(similarity(p, 1.0), ParameterError);
  p = LogisticTable::defaults().at(5);
  p.a2 = 1.5;
  CHECK_THROWS_AS(similarity(p, 1.0), ParameterError);
}

TEST_CASE("similarity is strictly increasing and inside its asymptotes") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    LogisticParams p;
    p.k = 1 + static_cast<int>(u(rng) * 8);
    p.a1 = 0.01 + 0.5 * u(rng);
    p.a2 = p.a1 + (1.0 - p.a1) * (0.05 + 0.95 * u(rng));
    // Keep the logistic argument below ~25 so doubles do not saturate.
    p.c1 = 0.01 + 0.99 * u(rng);
    p.c2 = -5.0 + 10.0 * u(rng);
    const double g1 = 15.0 * u(rng);
    const double g2 = g1 + 0.01 + 5.0 * u(rng);
    const double s1 = similarity(p, g1), s2 = similarity(p, g2);
    CHECK(s2 > s1);
    CHECK(s1 > p.a1);
    CHECK(s2 < p.a2);
  }
}

TEST_CASE("effective semantic rate") {
  const SemComProfile k5 = make_semcom_profile(LogisticTable::defaults(), 5, 0.9);
  CHECK(effective_semantic_rate(k5, 0.0, 50.0) == 0.0);
  const double gc = threshold_snr(k5);
  CHECK(effective_semantic_rate(k5, 1.0, 0.5 * gc) == 0.0);
  CHECK(effective_semantic_rate(k4_profile(0.4), 1.0, 1.0) ==
        doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("effective semantic rate is zero exactly below the floor") {
  const SemComProfile k5 = make_semcom_profile(LogisticTable::defaults(), 5, 0.9);
  for (double g = 0.0; g < 30.0; g += 0.037) {
    const double s = effective_semantic_rate(k5, 1.0, g);
    if (similarity(k5.logistic, g) < k5.eps_bar)
      CHECK(s == 0.0);
    else
      CHECK(s == doctest::Approx(similarity(k5.logistic, g) / 5.0).epsilon(1e-15));
  }
}

TEST_CASE("equivalent semantic rate") {
  const SemComProfile prof = k4_profile(0.4);
  const BitComProfile bit{40.0, 1.0};
  CHECK(equivalent_semantic_rate(bit, prof, 1.0, 0.0) == 0.0);
  CHECK(equivalent_semantic_rate(bit, prof, 1.0, 1.0) == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(equivalent_semantic_rate(bit, prof, 0.5, 3.0) == doctest::Approx(0.025).epsilon(1e-15));
}

TEST_CASE("equivalent semantic rate is linear in alpha and eps_c") {
  const SemComProfile prof = k4_profile(0.4);
  for (double g : {0.3, 2.0, 77.0}) {
    const double full = equivalent_semantic_rate({40.0, 1.0}, prof, 1.0, g);
    CHECK(equivalent_semantic_rate({40.0, 1.0}, prof, 0.3, g) ==
          doctest::Approx(0.3 * full).epsilon(1e-14));
    CHECK(equivalent_semantic_rate({40.0, 0.6}, prof, 1.0, g) ==
          doctest::Approx(0.6 * full).epsilon(1e-14));
  }
}

TEST_CASE("semcom-bitcom gap") {
  const SemComProfile prof = k4_profile(0.4);
  const BitComProfile bit{40.0, 1.0};
  CHECK(semcom_bitcom_gap(bit, prof, 1.0) == doctest::Approx(1.0 / 40 - 1.0 / 8).epsilon(1e-12));
  CHECK(semcom_bitcom_gap(bit, prof, 1e9) > 0.0);
  CHECK(semcom_bitcom_gap(bit, prof, 0.0) < 0.0);
}

TEST_CASE("semcom-bitcom gap changes sign on a bracketed root") {
  for (int k : {4, 5}) {
    const SemComProfile prof = make_semcom_profile(LogisticTable::defaults(), k, 0.5);
    const BitComProfile bit{40.0, 1.0};
    double lo = 1e-6, hi = 1e12;
    REQUIRE(semcom_bitcom_gap(bit, prof, lo) < 0.0);
    REQUIRE(semcom_bitcom_gap(bit, prof, hi) > 0.0);
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      (semcom_bitcom_gap(bit, prof, mid) < 0.0 ? lo : hi) = mid;
    }
    CHECK(hi / lo < 1.0 + 1e-9);
  }
}

TEST_CASE("calibrate_midpoint") {
  const LogisticParams base{4, 0.1, 0.95, 0.3, 0.0};
  const LogisticParams fit = calibrate_midpoint(base, 1.0, 0.5);
  // Inversion by hand: c2 = -ln(0.85 / 0.4 - 1) - 0.3.
  CHECK(fit.c2 == doctest::Approx(-std::log(1.125) - 0.3).epsilon(1e-14));
  CHECK(fit.c2 == doctest::Approx(-0.417783).epsilon(1e-6));
  CHECK(std::abs(similarity(fit, 1.0) - 0.5) <= 1e-12);
  CHECK(fit.a1 == base.a1);
  CHECK(fit.a2 == base.a2);
  CHECK(fit.c1 == base.c1);

  const LogisticParams mid = calibrate_midpoint(base, 0.0, 0.5 * (base.a1 + base.a2));
  CHECK(std::abs(mid.c2) <= 1e-14);
  CHECK_THROWS_AS(calibrate_midpoint(base, 1.0, base.a2), CalibrationError);
  CHECK_THROWS_AS(calibrate_midpoint(base, 1.0, base.a1), CalibrationError);
}

TEST_CASE("threshold SNR matches the logistic inversion and is tight") {
  const SemComProfile k5 = make_semcom_profile(LogisticTable::defaults(), 5, 0.9);
  const LogisticParams& p = k5.logistic;
  const double inv = (-std::log((p.a2 - p.a1) / (0.9 - p.a1) - 1.0) - p.c2) / p.c1;
  const double gc = threshold_snr(k5);
  CHECK(gc == doctest::Approx(inv).epsilon(1e-12));
  CHECK(gc == doctest::Approx((std::log(10.0) + 0.25) / 0.25).epsilon(1e-12));
  CHECK(effective_semantic_rate(k5, 1.0, gc) > 0.0);
  CHECK(effective_semantic_rate(k5, 1.0, std::nextafter(gc, 0.0) * (1 - 1e-12)) == 0.0);

  const SemComProfile never = make_semcom_profile(LogisticTable::defaults(), 5, 0.99);
  CHECK(std::isinf(threshold_snr(never)));
  const SemComProfile always = make_semcom_profile(LogisticTable::defaults(), 5, 0.05);
  CHECK(threshold_snr(always) == 0.0);
}

TEST_CASE("profile ceiling and logistic table lookups") {
  const SemComProfile k5 = make_semcom_profile(LogisticTable::defaults(), 5, 0.9, 2.0, 4.0);
  CHECK(k5.rate_ceiling() == doctest::Approx(2.0 * 0.98 / (5 * 4.0)));
  CHECK_THROWS_AS(LogisticTable::defaults().at(7), ParameterError);
  CHECK_THROWS_AS(make_semcom_profile(LogisticTable::defaults(), 7, 0.9), ParameterError);
  CHECK_THROWS_AS(make_semcom_profile(LogisticTable::defaults(), 5, 0.0), ParameterError);
  CHECK_THROWS_AS(make_semcom_profile(LogisticTable::defaults(), 5, 0.9, -1.0), ParameterError);
  CHECK_THROWS_AS((BitComProfile{0.0, 1.0}.validate()), ParameterError);
  CHECK_THROWS_AS((BitComProfile{40.0, 1.5}.validate()), ParameterError);
}
