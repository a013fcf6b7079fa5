#include <cmath>

#include "doctest.h"
#include "semnoma/errors.hpp"
#include "semnoma/rate_region.hpp"

using namespace semnoma;

namespace {

// Plain double loop over the same grid with the documented tie-break.
RegionPoint brute_force(double r_bar, const RegionSpec& spec, const FadingState& st,
                        const SystemParams& p) {
  const Method m = spec.objective == RegionObjective::semcom ? Method::semcom : Method::bitcom;
  RegionPoint best{0.0, r_bar, 0.0, 0.0};
  for (int i = 0; i < spec.p_grid; ++i) {
    const double pf = spec.p_f_max * (static_cast<double>(i) / (spec.p_grid - 1));
    for (int j = 0; j < spec.alpha_grid; ++j) {
      const double a = static_cast<double>(j) / (spec.alpha_grid - 1);
      if (n_user_bit_rate(a, pf, st, p) < r_bar) continue;
      const double s = f_user_semantic_rate({m, a, pf}, st, p);
      if (s > best.s) best = {s, r_bar, pf, a};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("boundary point agrees with exhaustive enumeration") {
  const SystemParams p = SystemParams::defaults();
  const FadingState st = static_state(p);
  const double top = interference_free_rate(st, p);
  for (RegionObjective obj : {RegionObjective::semcom, RegionObjective::bitcom_equivalent})
    for (double pmax : {0.1, 10.0}) {
      RegionSpec spec;
      spec.p_f_max = pmax;
      spec.p_grid = 61;
      spec.alpha_grid = 41;
      spec.objective = obj;
      for (double frac : {0.0, 0.1, 0.33, 0.5, 0.77, 0.95, 1.0}) {
        const RegionPoint got = boundary_point(frac * top, spec, st, p);
        const RegionPoint want = brute_force(frac * top, spec, st, p);
        CHECK(got.s == want.s);
        CHECK(got.p_f == want.p_f);
        CHECK(got.alpha_f == want.alpha_f);
      }
    }
}

TEST_CASE("boundary endpoints") {
  const SystemParams p = SystemParams::defaults();
  const FadingState st = static_state(p);
  const double top = interference_free_rate(st, p);
  RegionSpec spec;
  const RegionPoint last = boundary_point(top, spec, st, p);
  CHECK(last.s == 0.0);
  CHECK(last.p_f == 0.0);
  CHECK(last.alpha_f == 0.0);

  // Unconstrained: full time at full power (similarity is increasing and the
  // floor is met at 0.1 W on this link).
  const RegionPoint first = boundary_point(0.0, spec, st, p);
  CHECK(first.alpha_f == 1.0);
  CHECK(first.p_f == spec.p_f_max);
  const double gamma = 0.1 * st.hf2 / p.sigma2;
  const LogisticParams& lg = p.sem.logistic;
  const double sim = lg.a1 + (lg.a2 - lg.a1) / (1.0 + std::exp(-(lg.c1 * gamma + lg.c2)));
  REQUIRE(sim >= p.sem.eps_bar);
  CHECK(first.s == doctest::Approx(sim / 5.0).epsilon(1e-14));

  CHECK_THROWS_AS(boundary_point(top + 1e-9, spec, st, p), InfeasibleError);
}

TEST_CASE("semcom boundary dominates bitcom at low power budget") {
  const SystemParams p = SystemParams::defaults();
  const FadingState st = static_state(p);
  const double top = interference_free_rate(st, p);
  RegionSpec sem, bit;
  bit.objective = RegionObjective::bitcom_equivalent;
  const double r = 0.5 * top;
  CHECK(boundary_point(r, sem, st, p).s >= boundary_point(r, bit, st, p).s);
}

TEST_CASE("sweep shape and monotonicity") {
  const SystemParams p = SystemParams::defaults();
  const FadingState st = static_state(p);
  RegionSpec small, large;
  small.r_sweep = large.r_sweep = 21;
  large.p_f_max = 10.0;
  const auto a = sweep_boundary(small, st, p);
  const auto b = sweep_boundary(large, st, p);
  REQUIRE(a.size() == 21);
  CHECK(a.front().r_bar == 0.0);
  CHECK(a.back().r_bar == interference_free_rate(st, p));
  CHECK(a.back().s == 0.0);
  CHECK(b.front().s >= a.front().s);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) CHECK(a[i].s <= a[i - 1].s);
    CHECK(a[i].s <= a.front().s);
    CHECK(a[i].s <= p.sem.rate_ceiling());
    CHECK(n_user_bit_rate(a[i].alpha_f, a[i].p_f, st, p) >= a[i].r_bar);
    CHECK(n_user_bit_rate(b[i].alpha_f, b[i].p_f, st, p) >= b[i].r_bar);
  }
}

TEST_CASE("grid refinement never lowers the boundary") {
  const SystemParams p = SystemParams::defaults();
  const FadingState st = static_state(p);
  for (RegionObjective obj : {RegionObjective::semcom, RegionObjective::bitcom_equivalent}) {
    RegionSpec coarse, fine;
    coarse.objective = fine.objective = obj;
    coarse.r_sweep = fine.r_sweep = 11;
    fine.p_grid = fine.alpha_grid = 801;
    const auto a = sweep_boundary(coarse, st, p);
    const auto b = sweep_boundary(fine, st, p);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i].s >= a[i].s);
  }
}

TEST_CASE("region spec validation") {
  RegionSpec spec;
  spec.p_grid = 1;
  CHECK_THROWS_AS(spec.validate(), ParameterError);
  CHECK(to_string(RegionObjective::bitcom_equivalent) == "bitcom_equivalent");
}
