#pragma once

#include <vector>

#include "fir/rng.hpp"
#include "fir/types.hpp"

namespace fir {

/// Univariate median: middle order statistic for odd length, arithmetic
/// mean of the two middle order statistics for even length.
double median(Vector values);
double median(const std::vector<double>& values);

/// Median absolute deviation about the median, no consistency factor.
double mad(const Vector& values);
double mad(const std::vector<double>& values);

/// count x p matrix whose rows are unit vectors drawn uniformly on the
/// p-sphere (normalized i.i.d. standard normals).
Matrix sample_unit_directions(Index p, Index count, RngStream stream);

struct SvdResult {
  Matrix u;  // thin left singular vectors, orthonormal columns
  Vector s;  // singular values, non-increasing
  Matrix v;  // thin right singular vectors, orthonormal columns
};

/// Thin SVD: u * diag(s) * v^T reconstructs the input.
SvdResult svd_thin(const Matrix& m);

struct EigResult {
  Matrix vectors;  // orthonormal eigenvectors, columns
  Vector values;   // eigenvalues, non-increasing
};

/// Symmetric eigendecomposition with eigenvalues sorted descending.
/// Input must be symmetric within 1e-10 relative tolerance.
EigResult sym_eig(const Matrix& s);

/// Inverse CDF of the chi-squared distribution with `dof` degrees of
/// freedom, solved by bisection on the regularized lower incomplete
/// gamma function to 1e-10 absolute tolerance.
double chi2_quantile(int dof, double prob);

/// Standard normal inverse CDF, absolute error below 1e-9.
double gaussian_quantile(double prob);

}  // namespace fir
