#include "semnoma/rate_region.hpp"

#include <cmath>
#include <sstream>

#include "semnoma/errors.hpp"

namespace semnoma {

namespace {

double objective_value(RegionObjective objective, double alpha, double p,
                       const FadingState& st, const SystemParams& params) {
  const PolicyDecision dec{objective == RegionObjective::semcom ? Method::semcom
                                                                : Method::bitcom,
                           alpha, p};
  return f_user_semantic_rate(dec, st, params);
}

// Grid abscissae are computed the same way everywhere so that a refined grid
// reproduces the coarse one exactly.
double grid_value(int i, int n, double hi) {
  if (i == n - 1) return hi;
  return hi * (static_cast<double>(i) / static_cast<double>(n - 1));
}

}  // namespace

std::string_view to_string(RegionObjective objective) {
  return objective == RegionObjective::semcom ? "semcom" : "bitcom_equivalent";
}

void RegionSpec::validate() const {
  if (!(p_f_max >= 0.0)) throw ParameterError("region: p_f_max must be >= 0");
  if (p_grid < 2 || alpha_grid < 2)
    throw ParameterError("region: grid sizes must be >= 2");
  if (r_sweep < 2) throw ParameterError("region: r_sweep must be >= 2");
}

RegionPoint boundary_point(double r_bar, const RegionSpec& spec,
                           const FadingState& st, const SystemParams& params) {
  spec.validate();
  const double ceiling = interference_free_rate(st, params);
  if (!(r_bar >= 0.0)) throw ArgumentError("boundary_point: r_bar must be >= 0");
  if (r_bar > ceiling) {
    std::ostringstream msg;
    msg << "boundary_point: infeasible target " << r_bar
        << " exceeds interference-free rate " << ceiling;
    throw InfeasibleError(msg.str());
  }

  const auto feasible = [&](int j, double p) {
    const double alpha = grid_value(j, spec.alpha_grid, 1.0);
    return n_user_bit_rate(alpha, p, st, params) >= r_bar;
  };

  RegionPoint best{0.0, r_bar, 0.0, 0.0};
  for (int i = 0; i < spec.p_grid; ++i) {
    const double p = grid_value(i, spec.p_grid, spec.p_f_max);
    // The objective grows with alpha, so only the largest feasible alpha on
    // this power row matters. Locate it from the closed form, then settle it
    // against the exact constraint evaluation.
    const double loss = ceiling - interfered_rate(p, st, params);
    int j = spec.alpha_grid - 1;
    if (loss > 0.0) {
      const double alpha_max = (ceiling - r_bar) / loss;
      if (alpha_max < 1.0)
        j = static_cast<int>(std::floor(alpha_max * (spec.alpha_grid - 1)));
    }
    while (j > 0 && !feasible(j, p)) --j;
    while (j + 1 < spec.alpha_grid && feasible(j + 1, p)) ++j;
    if (!feasible(j, p)) continue;
    const double alpha = grid_value(j, spec.alpha_grid, 1.0);
    const double value = objective_value(spec.objective, alpha, p, st, params);
    if (value > best.s) best = {value, r_bar, p, alpha};
  }
  return best;
}

std::vector<RegionPoint> sweep_boundary(const RegionSpec& spec,
                                        const FadingState& st,
                                        const SystemParams& params) {
  spec.validate();
  const double ceiling = interference_free_rate(st, params);
  std::vector<RegionPoint> out;
  out.reserve(spec.r_sweep);
  for (int k = 0; k < spec.r_sweep; ++k)
    out.push_back(boundary_point(grid_value(k, spec.r_sweep, ceiling), spec, st,
                                 params));
  return out;
}

}  // namespace semnoma
