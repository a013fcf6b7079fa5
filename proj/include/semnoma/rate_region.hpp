#pragma once

#include <string_view>
#include <vector>

#include "semnoma/link_model.hpp"

namespace semnoma {

enum class RegionObjective { semcom, bitcom_equivalent };

std::string_view to_string(RegionObjective objective);

/// One sample of the semantic-versus-bit rate region boundary.
struct RegionPoint {
  double s = 0.0;      // F-user (equivalent) semantic rate, suts/s/Hz
  double r_bar = 0.0;  // N-user target, bits/s/Hz
  double p_f = 0.0;    // F-user power achieving s, W
  double alpha_f = 0.0;
};

/// Exhaustive-search discretization of the boundary problem.
struct RegionSpec {
  double p_f_max = 0.1;  // F-user power budget, W
  int p_grid = 401;      // points on [0, p_f_max]
  int alpha_grid = 401;  // points on [0, 1]
  int r_sweep = 41;      // targets on [0, interference-free rate]
  RegionObjective objective = RegionObjective::semcom;

  void validate() const;
};

/// Maximizes the F-user objective over the (p_f, alpha_f) grid subject to the
/// N-user keeping at least r_bar. Ties go to the smallest p_f, then the
/// smallest alpha_f; a zero optimum is reported at p_f = alpha_f = 0.
/// Throws InfeasibleError when r_bar exceeds the interference-free rate.
RegionPoint boundary_point(double r_bar, const RegionSpec& spec,
                           const FadingState& st, const SystemParams& params);

/// boundary_point for r_sweep targets spaced uniformly from 0 to the
/// interference-free rate (inclusive).
std::vector<RegionPoint> sweep_boundary(const RegionSpec& spec,
                                        const FadingState& st,
                                        const SystemParams& params);

}  // namespace semnoma
