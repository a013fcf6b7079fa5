#include <cmath>

#include "doctest.h"
#include "semnoma/errors.hpp"
#include "semnoma/link_model.hpp"

using namespace semnoma;

namespace {

// State whose F-user SNR equals p (W) and N-user interference-free SNR is 1e4.
FadingState unit_state() { return {0, 1e-7, 1e-11}; }

}  // namespace

TEST_CASE("path loss") {
  CHECK(path_loss({1.0, -30.0, 4.0}) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(path_loss({10.0, -30.0, 4.0}) == doctest::Approx(1e-7).epsilon(1e-14));
  const long double ref = 1e-3L / (30.0L * 30.0L * 30.0L * 30.0L);
  CHECK(std::abs(path_loss({30.0, -30.0, 4.0}) - static_cast<double>(ref)) <= 1e-22);
  CHECK(path_loss({30.0, -30.0, 4.0}) == doctest::Approx(1.2346e-9).epsilon(1e-4));
  CHECK_THROWS_AS((LinkGeometry{0.0, -30.0, 4.0}.validate()), ParameterError);
}

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watts(-80.0) == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3));
}

TEST_CASE("default system parameters") {
  const SystemParams p = SystemParams::defaults();
  CHECK(p.p_n == 1.0);
  CHECK(p.sigma2 == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(p.sem.k == 5);
  CHECK(p.sem.eps_bar == 0.9);
  CHECK(p.bit.mu == 40.0);
  const FadingState st = static_state(p);
  CHECK(snr(p.p_n, st.hn2, p.sigma2) == doctest::Approx(1e4).epsilon(1e-12));
  CHECK(snr(1.0, st.hf2, p.sigma2) == doctest::Approx(123.4567901).epsilon(1e-9));
}

TEST_CASE("sample_states") {
  const SystemParams p = SystemParams::defaults();
  const auto a = sample_states(42, 100, p);
  const auto b = sample_states(42, 100, p);
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].index == i);
    CHECK(a[i].hn2 == b[i].hn2);
    CHECK(a[i].hf2 == b[i].hf2);
    CHECK(a[i].hn2 > 0.0);
  }
  const auto one = sample_states(7, 1, p);
  REQUIRE(one.size() == 1);
  CHECK(one[0].index == 0);
  CHECK_THROWS_AS(sample_states(1, 0, p), ArgumentError);
  CHECK(sample_states(43, 1, p)[0].hn2 != a[0].hn2);
}

TEST_CASE("sample means converge to the path loss") {
  const SystemParams p = SystemParams::defaults();
  int pass = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = sample_states(seed, 100000, p);
    double mn = 0.0, mf = 0.0;
    for (const auto& st : s) {
      mn += st.hn2;
      mf += st.hf2;
    }
    mn /= s.size();
    mf /= s.size();
    pass += std::abs(mn / path_loss(p.n_geom) - 1.0) <= 0.02 &&
            std::abs(mf / path_loss(p.f_geom) - 1.0) <= 0.02;
  }
  CHECK(pass >= 19);
}

TEST_CASE("snr") {
  CHECK(snr(0.0, 1e-7, 1e-11) == 0.0);
  CHECK(snr(0.1, 1.2346e-9, 1e-11) == doctest::Approx(12.346).epsilon(1e-12));
  CHECK(snr(1.0, 1e-7, 1e-11) == doctest::Approx(1e4).epsilon(1e-12));
  CHECK_THROWS_AS(snr(1.0, 1e-7, 0.0), ArgumentError);
  for (double c : {0.5, 3.0, 17.0})
    CHECK(snr(c * 0.2, 3e-9, 1e-11) == doctest::Approx(c * snr(0.2, 3e-9, 1e-11)).epsilon(1e-14));
}

TEST_CASE("N-user bit rate") {
  const SystemParams p = SystemParams::defaults();
  const FadingState st = unit_state();
  const double free_rate = std::log2(10001.0);
  CHECK(n_user_bit_rate(0.3, 0.0, st, p) == doctest::Approx(free_rate).epsilon(1e-14));
  CHECK(n_user_bit_rate(1.0, 0.0, st, p) == doctest::Approx(free_rate).epsilon(1e-14));
  CHECK(n_user_bit_rate(0.0, 5.0, st, p) == doctest::Approx(free_rate).epsilon(1e-14));
  CHECK(free_rate == doctest::Approx(13.288).epsilon(1e-4));
  // alpha log2(1 + 1e4 / (p + 1)) + (1 - alpha) log2(1 + 1e4)
  CHECK(n_user_bit_rate(0.25, 3.0, st, p) ==
        doctest::Approx(0.25 * std::log2(1.0 + 1e4 / 4.0) + 0.75 * free_rate).epsilon(1e-14));
  CHECK_THROWS_AS(n_user_bit_rate(1.5, 1.0, st, p), ArgumentError);
  CHECK_THROWS_AS(n_user_bit_rate(0.5, -1.0, st, p), ArgumentError);
}

TEST_CASE("N-user bit rate is non-increasing in power and time share") {
  const SystemParams p = SystemParams::defaults();
  const auto states = sample_states(5, 20, p);
  for (const auto& st : states) {
    double prev = n_user_bit_rate(1.0, 0.0, st, p);
    for (double pf = 0.01; pf <= 20.0; pf *= 1.3) {
      const double r = n_user_bit_rate(1.0, pf, st, p);
      CHECK(r <= prev);
      prev = r;
    }
    prev = n_user_bit_rate(0.0, 2.0, st, p);
    for (double a = 0.05; a <= 1.0; a += 0.05) {
      const double r = n_user_bit_rate(a, 2.0, st, p);
      CHECK(r <= prev);
      prev = r;
    }
  }
}

TEST_CASE("F-user semantic rate") {
  SystemParams p = SystemParams::defaults();
  const FadingState st = unit_state();
  CHECK(f_user_semantic_rate({Method::semcom, 1.0, 0.0}, st, p) == 0.0);
  CHECK(f_user_semantic_rate({Method::bitcom, 1.0, 0.0}, st, p) == 0.0);
  CHECK(f_user_semantic_rate({Method::semcom, 0.0, 50.0}, st, p) == 0.0);
  CHECK(f_user_semantic_rate({Method::bitcom, 1.0, 1.0}, st, p) ==
        doctest::Approx(0.025).epsilon(1e-14));
  CHECK(f_user_semantic_rate({Method::bitcom, 1.0, 1.0}, st, p) ==
        equivalent_semantic_rate(p.bit, p.sem, 1.0, 1.0));
  for (double pw : {0.5, 10.0, 11.0, 40.0, 1000.0})
    for (double a : {0.2, 1.0})
      CHECK(f_user_semantic_rate({Method::semcom, a, pw}, st, p) ==
            effective_semantic_rate(p.sem, a, snr(pw, st.hf2, p.sigma2)));
}

TEST_CASE("F-user rates are monotone in power and SemCom is capped") {
  const SystemParams p = SystemParams::defaults();
  const auto states = sample_states(9, 20, p);
  for (const auto& st : states) {
    double prev_b = 0.0, prev_s = 0.0;
    for (double pw = 0.01; pw <= 100.0; pw *= 1.25) {
      const double b = f_user_semantic_rate({Method::bitcom, 0.7, pw}, st, p);
      const double s = f_user_semantic_rate({Method::semcom, 0.7, pw}, st, p);
      CHECK(b > prev_b);
      CHECK(s >= prev_s);
      CHECK(s <= 0.7 * p.sem.rate_ceiling());
      prev_b = b;
      prev_s = s;
    }
  }
}

TEST_CASE("mode policy names round-trip") {
  for (ModePolicy m : {ModePolicy::opportunistic, ModePolicy::semcom_only, ModePolicy::bitcom_only})
    CHECK(parse_mode_policy(to_string(m)) == m);
  CHECK_THROWS_AS(parse_mode_policy("both"), ArgumentError);
  CHECK(allows(ModePolicy::semcom_only, Method::semcom));
  CHECK_FALSE(allows(ModePolicy::semcom_only, Method::bitcom));
  CHECK(allows(ModePolicy::opportunistic, Method::bitcom));
}
