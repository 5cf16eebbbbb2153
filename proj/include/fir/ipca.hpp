#pragma once

#include "fir/types.hpp"

namespace fir {

/// Mean-aware incremental thin SVD of the data seen so far. Singular
/// values are stored on the 1/sqrt(n_seen) scale, i.e. as the singular
/// values of (X - 1 mean^T) / sqrt(n_seen), so they read as standard
/// deviations along the component axes. Models are immutable values;
/// updates return a new model.
struct IpcaModel {
  Vector mean;             // length p
  Vector singular_values;  // length r, non-increasing, all > 0
  Matrix components;       // r x p, orthonormal rows
  Index n_seen = 0;

  Index rank() const { return singular_values.size(); }
  Index dim() const { return mean.size(); }
};

/// Fit a model on an initial batch (m >= 1 rows). Rank is truncated at
/// singular values > 1e-8 * s1 relative and > 1e-12 absolute.
IpcaModel ipca_init(const Matrix& batch);

/// Absorb a new batch via the mean-corrected augmented SVD update. The
/// result matches a from-scratch fit of all absorbed rows: pooled mean
/// exactly, singular values and subspace to ~1e-8.
IpcaModel ipca_update(const IpcaModel& model, const Matrix& batch);

/// Project points into the component space: (points - 1 mean^T) C^T.
Matrix ipca_project(const IpcaModel& model, const Matrix& points);

}  // namespace fir
