#pragma once

#include <string>
#include <vector>

#include "fir/types.hpp"

namespace fir {

/// Minimal static (sd, od) scatter with dashed cutoff lines and axis
/// labels; flagged points drawn in red.
void write_outlier_map_svg(const std::string& path, const Vector& sd, const Vector& od,
                           double cutoff_sd, double cutoff_od,
                           const std::vector<bool>& flags);

}  // namespace fir
