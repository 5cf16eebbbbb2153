#include "fir/fir_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fir/depth.hpp"
#include "fir/ipca.hpp"
#include "fir/numerics.hpp"

namespace fir {

namespace {

Matrix gather_rows(const Matrix& z, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), z.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Index>(i)) = z.row(rows[i]);
  }
  return out;
}

void validate_config(const Matrix& z, const FirConfig& config) {
  const Index n = z.rows();
  const Index p = z.cols();
  if (n < p + 2) {
    throw std::invalid_argument("fir_estimate: need n >= p + 2 observations");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("fir_estimate: alpha must lie in (0, 1)");
  }
  if (config.batch_m <= p) {
    throw std::invalid_argument("fir_estimate: batch size must exceed the dimension p");
  }
  if (static_cast<double>(config.batch_m) >= config.alpha * static_cast<double>(n)) {
    throw std::invalid_argument("fir_estimate: batch size must be below alpha * n");
  }
  if (!(config.box_expand >= 0.0)) {
    throw std::invalid_argument("fir_estimate: box expansion must be >= 0");
  }
}

}  // namespace

Vector scaled_distance(const Matrix& scores, const Vector& singular_values) {
  const Index r = singular_values.size();
  if (r == 0) {
    throw NumericError("scaled_distance: rank collapse, no retained components");
  }
  if (scores.cols() != r) {
    throw std::invalid_argument("scaled_distance: score/spectrum size mismatch");
  }
  return (scores * singular_values.cwiseInverse().asDiagonal()).rowwise().squaredNorm();
}

SelectionBox selection_box(const Matrix& last_batch_scores, double expand) {
  if (last_batch_scores.rows() < 1 || last_batch_scores.cols() < 1) {
    throw std::invalid_argument("selection_box: scores must be non-empty");
  }
  const Index axes = std::min<Index>(2, last_batch_scores.cols());
  SelectionBox box;
  box.intervals.reserve(static_cast<std::size_t>(axes));
  for (Index j = 0; j < axes; ++j) {
    const double lo = last_batch_scores.col(j).minCoeff();
    const double hi = last_batch_scores.col(j).maxCoeff();
    const double delta = expand * (hi - lo);
    box.intervals.emplace_back(lo - delta, hi + delta);
  }
  return box;
}

bool box_contains(const SelectionBox& box, const Vector& score_row) {
  if (score_row.size() < static_cast<Index>(box.intervals.size())) {
    throw std::invalid_argument("box_contains: score row shorter than box");
  }
  for (std::size_t j = 0; j < box.intervals.size(); ++j) {
    const double v = score_row(static_cast<Index>(j));
    if (v < box.intervals[j].first || v > box.intervals[j].second) return false;
  }
  return true;
}

std::pair<Vector, Matrix> subset_mean_cov(const Matrix& z, const std::vector<Index>& rows) {
  const Index p = z.cols();
  const Index h = static_cast<Index>(rows.size());
  if (h < 2) throw std::invalid_argument("subset_mean_cov: need at least two rows");
  Vector mu = Vector::Zero(p);
  for (Index i : rows) mu += z.row(i).transpose();
  mu /= static_cast<double>(h);
  Matrix sigma = Matrix::Zero(p, p);
  for (Index i : rows) {
    const Vector c = z.row(i).transpose() - mu;
    sigma.noalias() += c * c.transpose();
  }
  sigma /= static_cast<double>(h - 1);
  return {std::move(mu), std::move(sigma)};
}

FirResult fir_estimate_with_directions(const Matrix& z, const FirConfig& config,
                                       const Matrix& directions) {
  require_finite(z, "fir_estimate");
  validate_config(z, config);
  const Index n = z.rows();
  const Index m = config.batch_m;
  const Index h = static_cast<Index>(std::floor(config.alpha * static_cast<double>(n)));
  const Index iterations = h / m - 1;  // |H| ends at m * floor(h / m)

  const DepthResult depth = projection_depth(z, directions);
  std::vector<Index> batch = select_deepest(depth.depth, m);
  std::vector<Index> selected = batch;
  std::vector<bool> in_h(static_cast<std::size_t>(n), false);
  for (Index i : batch) in_h[static_cast<std::size_t>(i)] = true;

  IpcaModel model = ipca_init(gather_rows(z, batch));
  for (Index k = 1; k <= iterations; ++k) {
    if (k > 1) model = ipca_update(model, gather_rows(z, batch));
    if (model.rank() == 0) {
      throw NumericError("fir_estimate: rank collapse, all selected points coincide");
    }
    const SelectionBox box =
        selection_box(ipca_project(model, gather_rows(z, batch)), config.box_expand);

    std::vector<Index> unselected;
    unselected.reserve(static_cast<std::size_t>(n) - selected.size());
    for (Index i = 0; i < n; ++i) {
      if (!in_h[static_cast<std::size_t>(i)]) unselected.push_back(i);
    }
    const Matrix scores = ipca_project(model, gather_rows(z, unselected));
    const Vector dist = scaled_distance(scores, model.singular_values);

    // Candidates ordered by distance, ties toward the smaller index.
    std::vector<Index> order(unselected.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (dist(a) != dist(b)) return dist(a) < dist(b);
      return unselected[static_cast<std::size_t>(a)] < unselected[static_cast<std::size_t>(b)];
    });

    std::vector<Index> chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    for (Index c : order) {
      if (static_cast<Index>(chosen.size()) == m) break;
      if (box_contains(box, scores.row(c).transpose())) {
        chosen.push_back(unselected[static_cast<std::size_t>(c)]);
      }
    }
    if (static_cast<Index>(chosen.size()) < m) {
      // Box shortfall: top up with the globally smallest distances.
      for (Index c : order) {
        if (static_cast<Index>(chosen.size()) == m) break;
        if (!box_contains(box, scores.row(c).transpose())) {
          chosen.push_back(unselected[static_cast<std::size_t>(c)]);
        }
      }
    }
    std::sort(chosen.begin(), chosen.end());
    for (Index i : chosen) in_h[static_cast<std::size_t>(i)] = true;
    selected.insert(selected.end(), chosen.begin(), chosen.end());
    batch = std::move(chosen);
  }

  std::sort(selected.begin(), selected.end());
  auto [mu, sigma] = subset_mean_cov(z, selected);
  FirResult result;
  result.mu = std::move(mu);
  result.sigma = std::move(sigma);
  result.n_selected = static_cast<Index>(selected.size());
  result.h_indices = std::move(selected);
  return result;
}

FirResult fir_estimate(const Matrix& z, const FirConfig& config) {
  if (config.n_directions < 1) {
    throw std::invalid_argument("fir_estimate: need at least one depth direction");
  }
  const Matrix directions = sample_unit_directions(z.cols(), config.n_directions, config.seed);
  return fir_estimate_with_directions(z, config, directions);
}

}  // namespace fir
