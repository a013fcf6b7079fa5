#pragma once

#include <vector>

namespace semnoma {

/// max sum_v gain[v] a[v]
///   s.t. sum_v loss[v] a[v]  <= loss_budget
///        sum_v power[v] a[v] <= power_budget
///        0 <= a[v] <= 1
///
/// All coefficients are non-negative. This is the time-sharing LP left after
/// the method and power of every state are fixed at the optimal multipliers.
struct TimeShareLp {
  std::vector<double> gain;
  std::vector<double> loss;
  std::vector<double> power;
  double loss_budget = 0.0;
  double power_budget = 0.0;
};

struct TimeShareLpResult {
  std::vector<double> alpha;
  double objective = 0.0;
  double power_price = 0.0;  // multiplier of the power row at the optimum
  bool feasible = false;
};

/// Solves the LP by searching the power-row price (the inner problem with one
/// row is a fractional knapsack), mixing the two inner solutions that bracket
/// the price, then pivoting along null-space directions of the two rows until
/// at most two entries are fractional. Infeasible only when a budget is
/// negative.
TimeShareLpResult solve_time_share_lp(const TimeShareLp& lp);

}  // namespace semnoma
