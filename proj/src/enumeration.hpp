#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "energia/lattice.hpp"

namespace energia::detail {

/// Weighted sup-norm max |x_i|/c_i, or weighted l1-norm sum c_i |x_i|.
struct NormSpec {
  enum class Kind { kSup, kL1 };
  Kind kind;
  std::vector<Rational> c;

  Rational exact(const RowVector<BigInt>& x) const;
  double approx(const std::vector<double>& x) const;
  /// Coordinate scaling under which norm <= R implies euclidean length <= R * l2_factor().
  std::vector<double> scale() const;
  double l2_factor() const;
};

/// Calls visit(x) for every x in the row lattice of `basis` (k x n, rows
/// independent) with spec.exact(x) <= radius, including x = 0.
void enumerate(const Matrix<BigInt>& basis, const NormSpec& spec, const Rational& radius,
               std::uint64_t budget, const std::function<void(const RowVector<BigInt>&)>& visit);

/// Successive minima of the row lattice of `basis` with witnesses
/// (denominator 1).
MinimaProfile minima(const Matrix<BigInt>& basis, const NormSpec& spec, std::uint64_t budget);

}  // namespace energia::detail
