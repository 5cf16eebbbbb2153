#pragma once

#include <vector>

#include "fir/types.hpp"

namespace fir {

struct DepthResult {
  Vector outlyingness;     // length n, >= 0, may be +inf
  Vector depth;            // length n, 1 / (1 + outlyingness)
  Index directions_used = 0;
};

/// Worst standardized deviation of each point over the sampled unit
/// directions: max_u |u^T z_i - med(u^T Z)| / mad(u^T Z). A direction
/// with zero mad contributes 0 when the numerator is <= 1e-12 and +inf
/// otherwise.
Vector projection_outlyingness(const Matrix& z, const Matrix& directions);

/// Projection depth 1 / (1 + outlyingness): larger means more central.
DepthResult projection_depth(const Matrix& z, const Matrix& directions);

/// Indices of the m largest depths, ties broken toward the smaller
/// original index, returned in ascending index order.
std::vector<Index> select_deepest(const Vector& depths, Index m);

}  // namespace fir
