#include "fir/simdata.hpp"

#include <cmath>
#include <stdexcept>

namespace fir {

namespace {

// Deterministic unit vector orthogonal to (1, ..., 1): Gram-Schmidt of
// e1 against the ones vector. Needs p >= 2.
Vector orthogonal_unit(Index p) {
  Vector a = Vector::Constant(p, -1.0 / static_cast<double>(p));
  a(0) += 1.0;
  return a / a.norm();
}

std::vector<bool> pick_outlier_rows(Index n, Index count, RngEngine& eng) {
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<bool> labels(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < count; ++i) {
    const auto j = static_cast<Index>(eng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(i + j)]);
    labels[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = true;
  }
  return labels;
}

Vector gaussian_vector(Index p, RngEngine& eng) {
  Vector v(p);
  for (Index j = 0; j < p; ++j) v(j) = eng.gaussian();
  return v;
}

}  // namespace

Matrix make_G(Index p) {
  if (p < 1) throw std::invalid_argument("make_G: p must be >= 1");
  Matrix g = Matrix::Constant(p, p, 0.75);
  g.diagonal().setConstant(1.0);
  return g;
}

LabeledData generate(const SimSpec& spec) {
  if (spec.kind == OutlierKind::lowrank) {
    return generate_lowrank(spec.n, spec.p, spec.rank, spec.eps, spec.lowrank_scale,
                            spec.seed);
  }
  if (spec.n < 1 || spec.p < 1) throw std::invalid_argument("generate: need n, p >= 1");
  if (!(spec.eps >= 0.0 && spec.eps < 1.0)) {
    throw std::invalid_argument("generate: eps must lie in [0, 1)");
  }
  if (spec.kind == OutlierKind::clean && spec.eps != 0.0) {
    throw std::invalid_argument("generate: clean data requires eps = 0");
  }
  if (spec.kind == OutlierKind::point && spec.p < 2) {
    throw std::invalid_argument("generate: point outliers need p >= 2");
  }

  const Index n = spec.n;
  const Index p = spec.p;
  const auto n_out = static_cast<Index>(std::floor(spec.eps * static_cast<double>(n)));
  RngEngine eng(spec.seed);
  std::vector<bool> labels = n_out > 0 ? pick_outlier_rows(n, n_out, eng)
                                       : std::vector<bool>(static_cast<std::size_t>(n), false);

  Vector point_center;
  if (spec.kind == OutlierKind::point) {
    point_center = spec.r * std::sqrt(static_cast<double>(p)) * orthogonal_unit(p);
  }
  const double cluster_shift =
      spec.r * std::pow(static_cast<double>(p), -0.25);  // along the ones vector
  const double radial_scale = std::sqrt(5.0);

  const Matrix g = make_G(p);
  Matrix x(n, p);
  for (Index i = 0; i < n; ++i) {
    Vector row = gaussian_vector(p, eng);
    if (labels[static_cast<std::size_t>(i)]) {
      switch (spec.kind) {
        case OutlierKind::point:
          // Point contamination is a tight cluster placed directly in
          // observation space at distance r*sqrt(p); mixing it through G
          // would drop it inside the inlier bulk and no estimator (nor
          // the reference results) treats it as outlying there.
          x.row(i) = (point_center + 0.01 * row).transpose();
          continue;
        case OutlierKind::cluster:
          row.array() += cluster_shift;
          break;
        case OutlierKind::radial:
          row *= radial_scale;
          break;
        default:
          break;
      }
    }
    x.row(i) = row.transpose() * g;  // G symmetric, so x_i = G y_i rowwise
  }

  LabeledData data;
  data.x = std::move(x);
  data.labels = std::move(labels);
  data.true_mu = Vector::Zero(p);
  data.true_sigma = g * g;
  return data;
}

LabeledData generate_lowrank(Index n, Index p, Index rank, double eps, double scale,
                             RngStream seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("generate_lowrank: need n, p >= 1");
  if (rank < 1 || rank >= p) {
    throw std::invalid_argument("generate_lowrank: need 1 <= rank < p");
  }
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("generate_lowrank: eps must lie in [0, 1)");
  }

  RngEngine eng(seed);
  Matrix u(n, rank);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < rank; ++j) u(i, j) = eng.gaussian();
  Matrix v(rank, p);
  for (Index i = 0; i < rank; ++i)
    for (Index j = 0; j < p; ++j) v(i, j) = eng.gaussian();

  const auto n_out = static_cast<Index>(std::floor(eps * static_cast<double>(n)));
  std::vector<bool> labels = n_out > 0 ? pick_outlier_rows(n, n_out, eng)
                                       : std::vector<bool>(static_cast<std::size_t>(n), false);

  LabeledData data;
  data.x = u * v;
  for (Index i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)]) {
      data.x.row(i) += scale * gaussian_vector(p, eng).cwiseAbs().transpose();
    }
  }
  data.labels = std::move(labels);
  data.true_mu = Vector::Zero(p);
  data.true_sigma = v.transpose() * v;  // population covariance of u V given V
  return data;
}

}  // namespace fir
