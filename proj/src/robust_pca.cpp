#include "fir/robust_pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fir/depth.hpp"
#include "fir/numerics.hpp"

namespace fir {

PreprocessResult preprocess_project(const Matrix& x) {
  const Index n = x.rows();
  if (n < 2) throw std::invalid_argument("preprocess_project: need n >= 2");
  require_finite(x, "preprocess_project");

  PreprocessResult out;
  out.mu0 = x.colwise().mean();
  const Matrix centered =
      (x.rowwise() - out.mu0.transpose()) / std::sqrt(static_cast<double>(n));
  const SvdResult svd = svd_thin(centered);
  const Vector& s = svd.s;
  Index r0 = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    while (r0 < s.size() && s(r0) > 1e-8 * s(0)) ++r0;
  }
  if (r0 == 0) {
    throw std::invalid_argument("preprocess_project: degenerate data, all rows identical");
  }
  out.r0 = r0;
  out.v = svd.v.leftCols(r0);
  out.z = x * out.v;
  return out;
}

FirResult fdb_estimate(const Matrix& z, double alpha, const Matrix& directions) {
  if (!(alpha >= 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("fdb_estimate: alpha must lie in [0.5, 1)");
  }
  const Index n = z.rows();
  const Index h = static_cast<Index>(std::floor(alpha * static_cast<double>(n)));
  if (h < 2) throw std::invalid_argument("fdb_estimate: subset too small");

  const DepthResult depth = projection_depth(z, directions);
  FirResult result;
  result.h_indices = select_deepest(depth.depth, h);
  result.n_selected = h;
  auto [mu, sigma] = subset_mean_cov(z, result.h_indices);
  result.mu = std::move(mu);
  result.sigma = std::move(sigma);
  return result;
}

Vector score_distance(const Matrix& scores, const Vector& variances) {
  if (scores.cols() != variances.size()) {
    throw std::invalid_argument("score_distance: score/variance size mismatch");
  }
  if (variances.size() == 0 || variances.minCoeff() <= 0.0) {
    throw std::invalid_argument("score_distance: variances must be positive");
  }
  return (scores * variances.cwiseSqrt().cwiseInverse().asDiagonal()).rowwise().norm();
}

Vector orthogonal_distance(const Matrix& x, const RobustPcaModel& model) {
  const Matrix residual = (x.rowwise() - model.center.transpose()) -
                          model.scores * model.loadings.transpose();
  return residual.rowwise().norm();
}

std::pair<double, double> outlier_cutoffs(const Vector& sd, const Vector& od, Index r1,
                                          bool raw_od) {
  if (sd.size() != od.size() || sd.size() < 2) {
    throw std::invalid_argument("outlier_cutoffs: need matched sd/od with n >= 2");
  }
  if (r1 < 1) throw std::invalid_argument("outlier_cutoffs: r1 must be >= 1");
  const double cutoff_sd = std::sqrt(chi2_quantile(static_cast<int>(r1), 0.975));
  if (od.maxCoeff() <= 0.0) {
    return {cutoff_sd, 0.0};  // exact-reconstruction case
  }
  const double z975 = gaussian_quantile(0.975);
  const Index n = od.size();
  Vector t = raw_od ? od : od.array().pow(2.0 / 3.0).matrix();
  const double mean = t.mean();
  const double sd_t =
      std::sqrt((t.array() - mean).square().sum() / static_cast<double>(n - 1));
  const double level = mean + sd_t * z975;
  const double cutoff_od = raw_od ? level : std::pow(level, 1.5);
  return {cutoff_sd, cutoff_od};
}

std::vector<bool> classify(const RobustPcaModel& model) {
  const Index n = model.sd.size();
  std::vector<bool> flags(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    flags[static_cast<std::size_t>(i)] =
        model.sd(i) > model.cutoff_sd || model.od(i) > model.cutoff_od;
  }
  return flags;
}

RobustPcaModel fit(const Matrix& x, EstimateMethod method, const FirConfig& config,
                   const PcaOptions& opts) {
  const Index n = x.rows();
  const Index p = x.cols();
  if (n < 2) throw std::invalid_argument("fit: need n >= 2");
  if (p >= n && !opts.allow_wide) {
    throw std::invalid_argument(
        "fit: p exceeds n unsupported; enable wide handling to project first");
  }

  const PreprocessResult pre = preprocess_project(x);

  FirResult est;
  switch (method) {
    case EstimateMethod::classical: {
      est.h_indices.resize(static_cast<std::size_t>(n));
      std::iota(est.h_indices.begin(), est.h_indices.end(), Index{0});
      est.n_selected = n;
      auto [mu, sigma] = subset_mean_cov(pre.z, est.h_indices);
      est.mu = std::move(mu);
      est.sigma = std::move(sigma);
      break;
    }
    case EstimateMethod::fdb: {
      const Matrix dirs = opts.directions
                              ? *opts.directions
                              : sample_unit_directions(pre.r0, config.n_directions, config.seed);
      est = fdb_estimate(pre.z, config.alpha, dirs);
      break;
    }
    case EstimateMethod::fir:
      est = opts.directions ? fir_estimate_with_directions(pre.z, config, *opts.directions)
                            : fir_estimate(pre.z, config);
      break;
  }

  const EigResult eig = sym_eig(est.sigma);
  const Vector& lambda = eig.values;
  Index r1 = 0;
  if (lambda.size() > 0 && lambda(0) > 0.0) {
    while (r1 < lambda.size() && lambda(r1) > 1e-8 * lambda(0)) ++r1;
  }
  if (r1 == 0) {
    throw NumericError("fit: robust covariance has no positive spectrum");
  }
  if (opts.max_components > 0) r1 = std::min(r1, opts.max_components);

  RobustPcaModel model;
  model.r0 = pre.r0;
  model.r1 = r1;
  model.variances = lambda.head(r1);
  model.scores = (pre.z.rowwise() - est.mu.transpose()) * eig.vectors.leftCols(r1);
  model.loadings = pre.v * eig.vectors.leftCols(r1);
  model.h_indices = est.h_indices;

  // Sign convention: the largest-magnitude entry of each loading column
  // is positive. Scores flip with their column so W t_i is unchanged.
  for (Index j = 0; j < r1; ++j) {
    Index at = 0;
    model.loadings.col(j).cwiseAbs().maxCoeff(&at);
    if (model.loadings(at, j) < 0.0) {
      model.loadings.col(j) = -model.loadings.col(j);
      model.scores.col(j) = -model.scores.col(j);
    }
  }

  // mu1 = mu0 + V (mu - V^T mu0): back-project only the robust shift so
  // the map reduces to mu0 when the estimator keeps everything.
  model.center = pre.mu0 + pre.v * (est.mu - pre.v.transpose() * pre.mu0);

  model.sd = score_distance(model.scores, model.variances);
  model.od = orthogonal_distance(x, model);
  // Full-rank fits reconstruct exactly; residuals at rounding scale are
  // reported as zero so the od cutoff degenerates cleanly instead of
  // flagging float noise.
  const double od_scale =
      (x.rowwise() - model.center.transpose()).norm() / std::sqrt(static_cast<double>(n));
  if (model.od.maxCoeff() <= 1e-10 * std::max(1.0, od_scale)) model.od.setZero();
  std::tie(model.cutoff_sd, model.cutoff_od) =
      outlier_cutoffs(model.sd, model.od, r1, opts.raw_od_cutoff);
  model.outlier_flags = classify(model);
  return model;
}

}  // namespace fir
