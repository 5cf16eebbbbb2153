#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace fir {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when a numeric routine cannot produce a usable result
/// (SVD non-convergence, rank collapse, non-positive-definite input).
/// Argument and shape violations use std::invalid_argument instead.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": entries must be finite");
  }
}

}  // namespace fir
