#include "fir/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fir {

namespace {

double median_inplace(double* v, Index n) {
  if (n <= 0) throw std::invalid_argument("median: empty input");
  const Index mid = n / 2;
  std::nth_element(v, v + mid, v + n);
  const double hi = v[mid];
  if (n % 2 == 1) return hi;
  const double lo = *std::max_element(v, v + mid);
  return 0.5 * (lo + hi);
}

// Regularized lower incomplete gamma P(a, x): series expansion for
// x < a + 1, Lentz continued fraction for the complement otherwise.
double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }

}  // namespace

double median(Vector values) { return median_inplace(values.data(), values.size()); }

double median(const std::vector<double>& values) {
  std::vector<double> copy(values);
  return median_inplace(copy.data(), static_cast<Index>(copy.size()));
}

double mad(const Vector& values) {
  const double med = median(values);
  Vector dev = (values.array() - med).abs();
  return median_inplace(dev.data(), dev.size());
}

double mad(const std::vector<double>& values) {
  Vector v = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
  return mad(v);
}

Matrix sample_unit_directions(Index p, Index count, RngStream stream) {
  if (p < 1) throw std::invalid_argument("sample_unit_directions: p must be >= 1");
  if (count < 1) throw std::invalid_argument("sample_unit_directions: count must be >= 1");
  RngEngine eng(stream);
  Matrix dirs(count, p);
  for (Index i = 0; i < count; ++i) {
    double norm2 = 0.0;
    do {
      for (Index j = 0; j < p; ++j) dirs(i, j) = eng.gaussian();
      norm2 = dirs.row(i).squaredNorm();
    } while (norm2 == 0.0);
    dirs.row(i) /= std::sqrt(norm2);
  }
  return dirs;
}

SvdResult svd_thin(const Matrix& m) {
  require_finite(m, "svd_thin");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericError("svd_thin: decomposition did not converge");
  }
  return SvdResult{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

EigResult sym_eig(const Matrix& s) {
  if (s.rows() != s.cols()) {
    throw std::invalid_argument("sym_eig: matrix must be square");
  }
  require_finite(s, "sym_eig");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("sym_eig: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.transpose()));
  if (solver.info() != Eigen::Success) {
    throw NumericError("sym_eig: eigendecomposition did not converge");
  }
  const Index p = s.rows();
  EigResult out;
  out.vectors.resize(p, p);
  out.values.resize(p);
  for (Index i = 0; i < p; ++i) {
    out.values(i) = solver.eigenvalues()(p - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(p - 1 - i);
  }
  return out;
}

double chi2_quantile(int dof, double prob) {
  if (dof < 1) throw std::invalid_argument("chi2_quantile: dof must be >= 1");
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::invalid_argument("chi2_quantile: prob must lie in (0, 1)");
  }
  const double a = 0.5 * dof;
  double lo = 0.0;
  double hi = 1.0;
  while (gamma_p(a, 0.5 * hi) < prob) {
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("chi2_quantile: bracket overflow");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_p(a, 0.5 * mid) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double gaussian_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::invalid_argument("gaussian_quantile: prob must lie in (0, 1)");
  }
  // Acklam's rational approximation, then a Halley refinement against
  // the erfc-based CDF.
  static const double A[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double B[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double C[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double D[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (prob < p_low) {
    const double q = std::sqrt(-2.0 * std::log(prob));
    x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  } else if (prob <= 1.0 - p_low) {
    const double q = prob - 0.5;
    const double r = q * q;
    x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
        (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - prob));
    x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double e = gaussian_cdf(x) - prob;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace fir
