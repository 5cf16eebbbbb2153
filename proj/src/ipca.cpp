#include "fir/ipca.hpp"

#include <cmath>
#include <stdexcept>

#include "fir/numerics.hpp"

namespace fir {

namespace {

constexpr double kRelTol = 1e-8;
constexpr double kAbsTol = 1e-12;

// Keep singular values above both thresholds; they are sorted
// non-increasing so the cut is a prefix.
Index truncated_rank(const Vector& s) {
  if (s.size() == 0) return 0;
  const double cut = std::max(kRelTol * s(0), kAbsTol);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

IpcaModel from_svd(const SvdResult& svd, Vector mean, Index n_seen, double scale) {
  Vector s = svd.s / scale;
  const Index r = truncated_rank(s);
  IpcaModel model;
  model.mean = std::move(mean);
  model.singular_values = s.head(r);
  model.components = svd.v.leftCols(r).transpose();
  model.n_seen = n_seen;
  return model;
}

}  // namespace

IpcaModel ipca_init(const Matrix& batch) {
  const Index m = batch.rows();
  if (m < 1) throw std::invalid_argument("ipca_init: batch must have at least one row");
  require_finite(batch, "ipca_init");
  Vector mean = batch.colwise().mean();
  const Matrix centered = batch.rowwise() - mean.transpose();
  const SvdResult svd = svd_thin(centered);
  // centered was not pre-divided by sqrt(m); fold it into the scale.
  return from_svd(svd, std::move(mean), m, std::sqrt(static_cast<double>(m)));
}

IpcaModel ipca_update(const IpcaModel& model, const Matrix& batch) {
  const Index p = model.dim();
  const Index m = batch.rows();
  if (m < 1) throw std::invalid_argument("ipca_update: batch must have at least one row");
  if (batch.cols() != p) throw std::invalid_argument("ipca_update: dimension mismatch");
  require_finite(batch, "ipca_update");

  const Index n = model.n_seen;
  const Index r = model.rank();
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  Vector batch_mean = batch.colwise().mean();

  // Rows: previous spectrum restored to raw scale, the batch centered at
  // its own mean, and the mean-correction row. Column scatter of this
  // stack equals the scatter of all absorbed rows about the pooled mean.
  Matrix augmented(r + m + 1, p);
  augmented.topRows(r) =
      (std::sqrt(nd) * model.singular_values).asDiagonal() * model.components;
  augmented.middleRows(r, m) = batch.rowwise() - batch_mean.transpose();
  augmented.bottomRows(1) =
      std::sqrt(nd * md / (nd + md)) * (model.mean - batch_mean).transpose();

  const SvdResult svd = svd_thin(augmented);
  Vector pooled = (nd * model.mean + md * batch_mean) / (nd + md);
  return from_svd(svd, std::move(pooled), n + m, std::sqrt(nd + md));
}

Matrix ipca_project(const IpcaModel& model, const Matrix& points) {
  if (points.cols() != model.dim()) {
    throw std::invalid_argument("ipca_project: dimension mismatch");
  }
  return (points.rowwise() - model.mean.transpose()) * model.components.transpose();
}

}  // namespace fir
