#pragma once

// Exact linear algebra over the integers and rationals on dense Eigen
// matrices. Everything is templated on the scalar so the same code serves
// fixed-width checks (std::int64_t) and arbitrary precision (BigInt).

#include <stdexcept>
#include <utility>

#include "energia/types.hpp"

namespace energia::linalg {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < 0 ? Scalar(-x) : x;
}

template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

template <typename Dst, typename Src>
Matrix<Dst> convert(const Matrix<Src>& m) {
  Matrix<Dst> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<Dst, std::int64_t> &&
                    !std::is_same_v<Src, std::int64_t>) {
        out(i, j) = to_int64(m(i, j));
      } else {
        out(i, j) = Dst(m(i, j));
      }
    }
  }
  return out;
}

// row_i -= q * row_k
template <typename Scalar>
void row_axpy(Matrix<Scalar>& A, Eigen::Index i, Eigen::Index k,
              const Scalar& q) {
  if (q == 0) return;
  for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) -= q * A(k, j);
}

template <typename Scalar>
void swap_rows(Matrix<Scalar>& A, Eigen::Index i, Eigen::Index k) {
  if (i == k) return;
  for (Eigen::Index j = 0; j < A.cols(); ++j) std::swap(A(i, j), A(k, j));
}

/// Row-style Hermite normal form of the lattice spanned by the rows of A:
/// upper echelon, positive pivots, entries above each pivot in [0, pivot).
/// Zero rows are dropped, so rows() is the rank.
template <typename Scalar>
Matrix<Scalar> hermite_normal_form(Matrix<Scalar> A) {
  const Eigen::Index rows = A.rows(), cols = A.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    bool found = false;
    for (;;) {
      Eigen::Index p = -1;
      for (Eigen::Index i = r; i < rows; ++i) {
        if (A(i, c) != 0 && (p < 0 || abs_value(A(i, c)) < abs_value(A(p, c)))) {
          p = i;
        }
      }
      if (p < 0) break;
      found = true;
      swap_rows(A, r, p);
      bool cleared = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (A(i, c) == 0) continue;
        row_axpy(A, i, r, Scalar(A(i, c) / A(r, c)));
        if (A(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!found) continue;
    if (A(r, c) < 0) {
      for (Eigen::Index j = 0; j < cols; ++j) A(r, j) = -A(r, j);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      row_axpy(A, i, r, floor_div(A(i, c), A(r, c)));
    }
    ++r;
  }
  Matrix<Scalar> out = A.topRows(r);
  return out;
}

template <typename Scalar>
Eigen::Index rank(const Matrix<Scalar>& A) {
  return hermite_normal_form(A).rows();
}

/// Fraction-free (Bareiss) determinant.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> A) {
  const Eigen::Index n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return Scalar(0);
      swap_rows(A, k, p);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      }
    }
    prev = A(k, k);
  }
  return Scalar(sign * A(n - 1, n - 1));
}

/// Basis (rows) of the integer kernel {x in Z^d : M x = 0} of an r x d matrix,
/// read off a unimodular row reduction of [M^T | I].
template <typename Scalar>
Matrix<Scalar> integer_kernel(const Matrix<Scalar>& M) {
  const Eigen::Index r = M.rows(), d = M.cols();
  Matrix<Scalar> aug(d, r + d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) aug(i, j) = M(j, i);
    for (Eigen::Index j = 0; j < d; ++j) aug(i, r + j) = Scalar(i == j ? 1 : 0);
  }
  const Matrix<Scalar> h = hermite_normal_form(aug);
  std::vector<Eigen::Index> kernel_rows;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (Eigen::Index j = 0; j < r && zero; ++j) zero = h(i, j) == 0;
    if (zero) kernel_rows.push_back(i);
  }
  Matrix<Scalar> K(static_cast<Eigen::Index>(kernel_rows.size()), d);
  for (std::size_t k = 0; k < kernel_rows.size(); ++k) {
    K.row(static_cast<Eigen::Index>(k)) = h.row(kernel_rows[k]).tail(d);
  }
  return K;
}

/// Gauss-Jordan inverse over an exact field; throws on a singular input.
template <typename Field>
Matrix<Field> inverse(Matrix<Field> A) {
  const Eigen::Index n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<Field> inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = Field(i == j ? 1 : 0);
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) throw DomainError("singular matrix");
    swap_rows(A, c, p);
    swap_rows(inv, c, p);
    const Field pivot = A(c, c);
    for (Eigen::Index j = 0; j < n; ++j) {
      A(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || A(i, c) == 0) continue;
      const Field q = A(i, c);
      row_axpy(A, i, c, q);
      row_axpy(inv, i, c, q);
    }
  }
  return inv;
}

/// Solves x * B = v for a row vector x, B square and nonsingular.
template <typename Field>
RowVector<Field> solve_left(const Matrix<Field>& B, const RowVector<Field>& v) {
  const Matrix<Field> inv = inverse(B);
  RowVector<Field> x(B.rows());
  for (Eigen::Index j = 0; j < B.rows(); ++j) {
    Field acc = 0;
    for (Eigen::Index k = 0; k < B.rows(); ++k) acc += v(k) * inv(k, j);
    x(j) = acc;
  }
  return x;
}

template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  Matrix<Scalar> C(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      Scalar acc = 0;
      for (Eigen::Index k = 0; k < A.cols(); ++k) acc += A(i, k) * B(k, j);
      C(i, j) = acc;
    }
  }
  return C;
}

template <typename Scalar>
Matrix<Scalar> transpose(const Matrix<Scalar>& A) {
  Matrix<Scalar> T(A.cols(), A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  }
  return T;
}

}  // namespace energia::linalg
