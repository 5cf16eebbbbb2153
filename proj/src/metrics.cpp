#include "fir/metrics.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "fir/numerics.hpp"

namespace fir {

double location_error(const Vector& mu_est, const Vector& mu_true) {
  if (mu_est.size() != mu_true.size()) {
    throw std::invalid_argument("location_error: length mismatch");
  }
  return (mu_est - mu_true).norm();
}

double kl_divergence(const Matrix& sigma_est, const Matrix& sigma_true, Index p) {
  if (sigma_est.rows() != p || sigma_est.cols() != p || sigma_true.rows() != p ||
      sigma_true.cols() != p) {
    throw std::invalid_argument("kl_divergence: matrices must be p x p");
  }
  const EigResult true_eig = sym_eig(sigma_true);
  const double lmax = true_eig.values(0);
  const double lmin = true_eig.values(p - 1);
  if (!(lmin > 0.0) || lmax / lmin >= 1e12) {
    throw std::invalid_argument("kl_divergence: true covariance is singular");
  }
  const EigResult est_eig = sym_eig(sigma_est);
  if (!(est_eig.values(p - 1) > 0.0)) {
    throw NumericError("kl_divergence: estimate is not positive definite");
  }

  const Eigen::LLT<Matrix> llt(sigma_true);
  const double trace_term = llt.solve(sigma_est).trace();
  const double logdet_est = est_eig.values.array().log().sum();
  const double logdet_true = true_eig.values.array().log().sum();
  return trace_term - (logdet_est - logdet_true) - static_cast<double>(p);
}

double cov_error(const Matrix& sigma_est, const Matrix& sigma_true, Index p) {
  if (sigma_est.rows() != p || sigma_est.cols() != p || sigma_true.rows() != p ||
      sigma_true.cols() != p) {
    throw std::invalid_argument("cov_error: matrices must be p x p");
  }
  return (sigma_est - sigma_true).norm() / static_cast<double>(p * p);
}

}  // namespace fir
