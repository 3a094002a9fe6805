#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace energia {

/// Least-squares slope of log(y) against log(x); NaN with fewer than two
/// distinct x.
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("size mismatch");
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n < 2) return std::nan("");
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  if ((A.col(1).array() - A(0, 1)).abs().maxCoeff() == 0.0) return std::nan("");
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
  return coef(1);
}

}  // namespace energia
