#include "fir/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fir/numerics.hpp"

namespace fir {

Vector projection_outlyingness(const Matrix& z, const Matrix& directions) {
  const Index n = z.rows();
  const Index tau = directions.rows();
  if (n < 2) throw std::invalid_argument("projection_outlyingness: need n >= 2");
  if (tau < 1) throw std::invalid_argument("projection_outlyingness: need at least one direction");
  if (directions.cols() != z.cols()) {
    throw std::invalid_argument("projection_outlyingness: direction dimension mismatch");
  }
  require_finite(z, "projection_outlyingness");

  const double inf = std::numeric_limits<double>::infinity();
  const Matrix proj = z * directions.transpose();  // n x tau
  Vector out = Vector::Zero(n);
  Vector buf(n);
  for (Index j = 0; j < tau; ++j) {
    buf = proj.col(j);
    const double med = median(buf);
    buf = (proj.col(j).array() - med).abs();
    const double m = median(buf);
    if (m > 0.0) {
      for (Index i = 0; i < n; ++i) out(i) = std::max(out(i), buf(i) / m);
    } else {
      // Point mass along this direction: anything off the median is
      // infinitely outlying.
      for (Index i = 0; i < n; ++i) {
        if (buf(i) > 1e-12) out(i) = inf;
      }
    }
  }
  return out;
}

DepthResult projection_depth(const Matrix& z, const Matrix& directions) {
  DepthResult result;
  result.outlyingness = projection_outlyingness(z, directions);
  result.depth = (1.0 + result.outlyingness.array()).inverse();
  result.directions_used = directions.rows();
  return result;
}

std::vector<Index> select_deepest(const Vector& depths, Index m) {
  const Index n = depths.size();
  if (m < 1 || m > n) {
    throw std::invalid_argument("select_deepest: m must lie in [1, n]");
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + m, order.end(),
                    [&](Index a, Index b) {
                      if (depths(a) != depths(b)) return depths(a) > depths(b);
                      return a < b;
                    });
  order.resize(static_cast<std::size_t>(m));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace fir
