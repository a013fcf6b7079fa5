#include "semnoma/time_share_lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "semnoma/errors.hpp"

namespace semnoma {

namespace {

struct Knapsack {
  std::vector<double> alpha;
  double power_used = 0.0;
};

// Fractional knapsack on the loss row with gains reduced by price * power.
Knapsack knapsack_at_price(const TimeShareLp& lp, double price,
                           std::vector<std::size_t>& order) {
  const std::size_t n = lp.gain.size();
  Knapsack out;
  out.alpha.assign(n, 0.0);
  std::vector<double> reduced(n);
  order.clear();
  for (std::size_t v = 0; v < n; ++v) {
    reduced[v] = lp.gain[v] - price * lp.power[v];
    if (reduced[v] <= 0.0) continue;
    if (lp.loss[v] <= 0.0)
      out.alpha[v] = 1.0;
    else
      order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reduced[a] * lp.loss[b] > reduced[b] * lp.loss[a];
  });
  double budget = lp.loss_budget;
  for (std::size_t v : order) {
    if (budget <= 0.0) break;
    if (lp.loss[v] <= budget) {
      out.alpha[v] = 1.0;
      budget -= lp.loss[v];
    } else {
      out.alpha[v] = budget / lp.loss[v];
      budget = 0.0;
    }
  }
  for (std::size_t v = 0; v < n; ++v) out.power_used += lp.power[v] * out.alpha[v];
  return out;
}

bool fractional(double a) { return a > 0.0 && a < 1.0; }

// Moves along directions that keep both row activities fixed and never lower
// the objective, until no more than two entries are strictly inside (0, 1).
void reduce_support(const TimeShareLp& lp, std::vector<double>& alpha) {
  for (double& a : alpha) {
    if (a < 1e-13) a = 0.0;
    if (a > 1.0 - 1e-13) a = 1.0;
  }
  for (;;) {
    std::array<std::size_t, 3> idx{};
    int found = 0;
    for (std::size_t v = 0; v < alpha.size() && found < 3; ++v)
      if (fractional(alpha[v])) idx[found++] = v;
    if (found < 3) return;

    const std::array<double, 3> d{lp.loss[idx[0]], lp.loss[idx[1]], lp.loss[idx[2]]};
    const std::array<double, 3> q{lp.power[idx[0]], lp.power[idx[1]], lp.power[idx[2]]};
    // Null space of the 2x3 block via the cross product of its rows; fall back
    // to a two-column direction when the rows are parallel.
    std::array<double, 3> z{d[1] * q[2] - d[2] * q[1], d[2] * q[0] - d[0] * q[2],
                            d[0] * q[1] - d[1] * q[0]};
    const double scale = std::max({std::abs(z[0]), std::abs(z[1]), std::abs(z[2])});
    const double row_scale = std::max({d[0], d[1], d[2], q[0], q[1], q[2]});
    if (scale <= 1e-14 * row_scale * row_scale) {
      const auto& r = (std::max({d[0], d[1], d[2]}) > 0.0) ? d : q;
      if (r[0] != 0.0 || r[1] != 0.0)
        z = {r[1], -r[0], 0.0};
      else
        z = {1.0, 0.0, 0.0};
    }
    double slope = 0.0;
    for (int i = 0; i < 3; ++i) slope += lp.gain[idx[i]] * z[i];
    if (slope < 0.0)
      for (double& zi : z) zi = -zi;

    double step = std::numeric_limits<double>::infinity();
    int hit = -1;
    for (int i = 0; i < 3; ++i) {
      if (z[i] == 0.0) continue;
      const double a = alpha[idx[i]];
      const double t = z[i] > 0.0 ? (1.0 - a) / z[i] : -a / z[i];
      if (t < step) {
        step = t;
        hit = i;
      }
    }
    for (int i = 0; i < 3; ++i) {
      double& a = alpha[idx[i]];
      a = std::clamp(a + step * z[i], 0.0, 1.0);
      if (a < 1e-13) a = 0.0;
      if (a > 1.0 - 1e-13) a = 1.0;
    }
    alpha[idx[hit]] = z[hit] > 0.0 ? 1.0 : 0.0;
  }
}

}  // namespace

TimeShareLpResult solve_time_share_lp(const TimeShareLp& lp) {
  const std::size_t n = lp.gain.size();
  if (lp.loss.size() != n || lp.power.size() != n)
    throw ArgumentError("time-share LP: coefficient vectors differ in length");
  for (std::size_t v = 0; v < n; ++v)
    if (!(lp.gain[v] >= 0.0 && lp.loss[v] >= 0.0 && lp.power[v] >= 0.0))
      throw ArgumentError("time-share LP: coefficients must be >= 0");

  TimeShareLpResult out;
  if (lp.loss_budget < 0.0 || lp.power_budget < 0.0) {
    out.alpha.assign(n, 0.0);
    return out;
  }
  out.feasible = true;

  std::vector<std::size_t> order;
  Knapsack free_power = knapsack_at_price(lp, 0.0, order);
  if (free_power.power_used <= lp.power_budget) {
    out.alpha = std::move(free_power.alpha);
  } else {
    // Price at which every state that draws power has non-positive reduced
    // gain: the power row is then slack.
    double hi = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (lp.power[v] > 0.0) hi = std::max(hi, lp.gain[v] / lp.power[v]);
    hi = hi * (1.0 + 1e-12) + 1e-300;
    double lo = 0.0;
    Knapsack at_lo = std::move(free_power);
    Knapsack at_hi = knapsack_at_price(lp, hi, order);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      Knapsack k = knapsack_at_price(lp, mid, order);
      if (k.power_used > lp.power_budget) {
        lo = mid;
        at_lo = std::move(k);
      } else {
        hi = mid;
        at_hi = std::move(k);
      }
    }
    // Blend the two bracketing solutions so the power row is tight.
    const double span = at_lo.power_used - at_hi.power_used;
    const double theta = span > 0.0 ? (lp.power_budget - at_hi.power_used) / span : 0.0;
    out.alpha.resize(n);
    for (std::size_t v = 0; v < n; ++v)
      out.alpha[v] = theta * at_lo.alpha[v] + (1.0 - theta) * at_hi.alpha[v];
    out.power_price = 0.5 * (lo + hi);
  }

  reduce_support(lp, out.alpha);
  for (std::size_t v = 0; v < n; ++v) out.objective += lp.gain[v] * out.alpha[v];
  return out;
}

}  // namespace semnoma
