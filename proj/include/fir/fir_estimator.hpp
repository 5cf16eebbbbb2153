#pragma once

#include <utility>
#include <vector>

#include "fir/rng.hpp"
#include "fir/types.hpp"

namespace fir {

struct FirConfig {
  double alpha = 0.75;      // fraction of the data treated as inliers
  Index batch_m = 0;        // points added per iteration; p < batch_m < alpha*n
  Index n_directions = 500; // depth directions tau
  RngStream seed;           // seeds the direction sample
  double box_expand = 0.5;  // selection-box half-range expansion factor
};

struct FirResult {
  Vector mu;                    // robust center, length p
  Matrix sigma;                 // robust covariance, p x p
  std::vector<Index> h_indices; // selected set H, strictly increasing
  Index n_selected = 0;         // |H| = batch_m * floor(h / batch_m)
};

/// Axis-aligned gate over the leading min(2, r) component axes.
struct SelectionBox {
  std::vector<std::pair<double, double>> intervals;  // per-axis [lo, hi]
};

/// Squared component scores over squared singular values, summed over
/// all retained axes: d_i = sum_j (score_ij / s_j)^2.
Vector scaled_distance(const Matrix& scores, const Vector& singular_values);

/// Bounding box of the given scores on the leading min(2, r) axes, each
/// side pushed out by expand * (max - min).
SelectionBox selection_box(const Matrix& last_batch_scores, double expand);

/// Closed-interval membership on the box axes; coordinates beyond the
/// box axis count are ignored.
bool box_contains(const SelectionBox& box, const Vector& score_row);

/// Robust location/covariance: depth-seeded iterative inlier selection
/// driven by incremental PCA, then mean and covariance (denominator
/// |H| - 1) over the selected rows.
FirResult fir_estimate(const Matrix& z, const FirConfig& config);

/// Same estimator with a caller-supplied direction set (unit rows).
/// Exposed so equivariance can be exercised with rotated directions.
FirResult fir_estimate_with_directions(const Matrix& z, const FirConfig& config,
                                       const Matrix& directions);

/// Mean and covariance (denominator |rows| - 1) of a row subset,
/// accumulated in ascending index order.
std::pair<Vector, Matrix> subset_mean_cov(const Matrix& z, const std::vector<Index>& rows);

}  // namespace fir
