#pragma once

#include <utility>
#include <vector>

#include "fir/fir_estimator.hpp"
#include "fir/types.hpp"

namespace fir {

enum class EstimateMethod { classical, fdb, fir };

struct PcaOptions {
  bool allow_wide = false;     // project p >= n data to rank r0 first
  bool raw_od_cutoff = false;  // cutoff on raw od instead of od^(2/3)
  Index max_components = 0;    // cap the retained rank r1 (0 = all nonzero)
  // Optional explicit depth directions (unit rows, r0 columns) for the
  // fdb/fir estimators; exposed so equivariance can be exercised with a
  // rotated direction set. Default: sampled from config.seed.
  const Matrix* directions = nullptr;
};

struct PreprocessResult {
  Matrix z;    // n x r0, uncentered data projected onto the leading subspace
  Matrix v;    // p x r0, orthonormal columns
  Vector mu0;  // classical column mean of x
  Index r0 = 0;
};

/// Lossless rank reduction: thin SVD of the centered, 1/sqrt(n)-scaled
/// data; keeps singular values > 1e-8 * s1 and projects the raw rows.
PreprocessResult preprocess_project(const Matrix& x);

/// Depth-only baseline: H = the floor(alpha*n) deepest points, mean and
/// covariance (denominator h - 1) over H.
FirResult fdb_estimate(const Matrix& z, double alpha, const Matrix& directions);

struct RobustPcaModel {
  Matrix loadings;   // p x r1, orthonormal columns (V * P truncated)
  Matrix scores;     // n x r1
  Vector variances;  // r1 leading eigenvalues of the robust covariance
  Vector center;     // robust PCA mean mu1, length p
  Index r0 = 0;
  Index r1 = 0;
  Vector sd;  // score distances
  Vector od;  // orthogonal distances
  double cutoff_sd = 0.0;
  double cutoff_od = 0.0;
  std::vector<bool> outlier_flags;
  std::vector<Index> h_indices;  // selected set of the underlying estimator
};

/// Full pipeline: rank reduction, robust (or classical) location and
/// covariance, eigendecomposition, scores, combined loadings, distances,
/// cutoffs, and flags.
RobustPcaModel fit(const Matrix& x, EstimateMethod method, const FirConfig& config,
                   const PcaOptions& opts = {});

/// sd_i = sqrt(sum_j t_ij^2 / l_j); all variances must be positive.
Vector score_distance(const Matrix& scores, const Vector& variances);

/// od_i = || x_i - mu1 - W t_i ||_2.
Vector orthogonal_distance(const Matrix& x, const RobustPcaModel& model);

/// cutoff_sd = sqrt(chi2_quantile(r1, 0.975)); cutoff_od from the
/// od^(2/3) normal approximation (m + s z_.975)^(3/2), or the raw-od
/// form m + s z_.975 when raw_od is set. All-zero od gives cutoff 0.
std::pair<double, double> outlier_cutoffs(const Vector& sd, const Vector& od, Index r1,
                                          bool raw_od = false);

/// flag_i = sd_i > cutoff_sd or od_i > cutoff_od, from the stored fields.
std::vector<bool> classify(const RobustPcaModel& model);

}  // namespace fir
