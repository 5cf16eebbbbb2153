#pragma once

#include "fir/types.hpp"

namespace fir {

struct ErrorReport {
  double e_mu = 0.0;
  double e_sigma = 0.0;
  double e_kl = 0.0;
  double runtime_seconds = 0.0;
};

/// Euclidean distance between estimated and true location.
double location_error(const Vector& mu_est, const Vector& mu_true);

/// Gaussian KL divergence trace(S Σ^-1) - log det(S Σ^-1) - p with S the
/// estimate and Σ the truth; log-determinants via Cholesky/eigenvalues.
double kl_divergence(const Matrix& sigma_est, const Matrix& sigma_true, Index p);

/// (1 / p^2) * Frobenius norm of the difference (the scale the tables
/// report; the norm is not squared).
double cov_error(const Matrix& sigma_est, const Matrix& sigma_true, Index p);

}  // namespace fir
