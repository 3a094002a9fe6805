#pragma once

#include <random>
#include <vector>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"

namespace gen {

using energia::BigInt;
using energia::Matrix;
using energia::Rational;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Matrix<BigInt> matrix(std::mt19937_64& rng, int rows, int cols, std::int64_t bound) {
  Matrix<BigInt> M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = uniform(rng, -bound, bound);
  return M;
}

/// Nonsingular n x n generator matrix with entries in [-bound, bound].
inline Matrix<BigInt> basis(std::mt19937_64& rng, int n, std::int64_t bound = 6) {
  for (;;) {
    Matrix<BigInt> B = matrix(rng, n, n, bound);
    if (energia::linalg::determinant(B) != 0) return B;
  }
}

/// Half-widths p/q with p in [1, 12], q in [1, 6].
inline std::vector<Rational> box(std::mt19937_64& rng, int n) {
  std::vector<Rational> c;
  for (int i = 0; i < n; ++i) c.emplace_back(uniform(rng, 1, 12), uniform(rng, 1, 6));
  return c;
}

/// Full-row-rank d0 x d matrix with entries in [-bound, bound].
inline Matrix<BigInt> full_row_rank(std::mt19937_64& rng, int d0, int d, std::int64_t bound) {
  for (;;) {
    Matrix<BigInt> M = matrix(rng, d0, d, bound);
    if (energia::linalg::rank(M) == d0) return M;
  }
}

}  // namespace gen
