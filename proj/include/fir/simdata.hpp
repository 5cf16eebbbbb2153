#pragma once

#include <vector>

#include "fir/rng.hpp"
#include "fir/types.hpp"

namespace fir {

enum class OutlierKind { clean, cluster, radial, point, lowrank };

struct SimSpec {
  Index n = 0;
  Index p = 0;
  double eps = 0.0;                  // outlier fraction, floor(eps*n) rows
  OutlierKind kind = OutlierKind::clean;
  double r = 2.0;                    // outlier distance (point, cluster)
  Index rank = 2;                    // low-rank factor count (lowrank)
  double lowrank_scale = 20.0;       // offset scale (lowrank)
  RngStream seed;
};

struct LabeledData {
  Matrix x;
  std::vector<bool> labels;  // true = outlier row
  Vector true_mu;
  Matrix true_sigma;
};

/// Compound-symmetry mixing matrix: ones on the diagonal, 0.75 off it.
Matrix make_G(Index p);

/// Correlated Gaussian inliers x = G y with y ~ N(0, I); outlier rows
/// are placed at rng-chosen positions. Cluster and radial outliers draw
/// a shifted/inflated y and pass through the same G; point outliers are
/// a tight cluster injected directly in observation space at distance
/// r*sqrt(p) along a unit vector orthogonal to (1,...,1). Truth is
/// mu = 0, sigma = G G^T.
LabeledData generate(const SimSpec& spec);

/// X = U V with i.i.d. standard normal factors (U: n x rank, V: rank x p);
/// floor(eps*n) random rows get + scale * |y| added elementwise.
LabeledData generate_lowrank(Index n, Index p, Index rank, double eps, double scale,
                             RngStream seed);

}  // namespace fir
