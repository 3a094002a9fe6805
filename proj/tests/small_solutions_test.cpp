#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"
#include "generators.hpp"

using namespace energia;

namespace {

Matrix<BigInt> row_matrix(std::initializer_list<int> v) {
  Matrix<BigInt> M(1, static_cast<Eigen::Index>(v.size()));
  Eigen::Index j = 0;
  for (int x : v) M(0, j++) = x;
  return M;
}

// Every maximal minor, by column subsets.
std::vector<BigInt> maximal_minors(const Matrix<BigInt>& M) {
  const int r = static_cast<int>(M.rows()), d = static_cast<int>(M.cols());
  std::vector<BigInt> out;
  std::vector<int> pick(r);
  std::function<void(int, int)> rec = [&](int k, int start) {
    if (k == r) {
      Matrix<BigInt> S(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) S(i, j) = M(i, pick[j]);
      out.push_back(linalg::determinant(S));
      return;
    }
    for (int c = start; c < d; ++c) {
      pick[k] = c;
      rec(k + 1, c + 1);
    }
  };
  rec(0, 0);
  return out;
}

BigInt row_max(const Matrix<BigInt>& V, Eigen::Index i) {
  BigInt best = 0;
  for (Eigen::Index j = 0; j < V.cols(); ++j) best = std::max(best, BigInt(abs(V(i, j))));
  return best;
}

void check_solutions(const Matrix<BigInt>& M, const SmallSolutions& s) {
  const Eigen::Index k = M.cols() - M.rows();
  ASSERT_EQ(s.vectors.rows(), k);
  ASSERT_EQ(linalg::rank(s.vectors), k);
  const Matrix<BigInt> prod = linalg::multiply(M, linalg::transpose(s.vectors));
  for (Eigen::Index i = 0; i < prod.rows(); ++i)
    for (Eigen::Index j = 0; j < prod.cols(); ++j) ASSERT_EQ(prod(i, j), 0);
  BigInt p = 1;
  for (Eigen::Index i = 0; i < k; ++i) p *= row_max(s.vectors, i);
  ASSERT_EQ(p, s.product);
  // Cauchy-Binet: det(M M^T) is the sum of squared maximal minors.
  const auto minors = maximal_minors(M);
  BigInt gram = 0, g = 0;
  for (const auto& x : minors) {
    gram += x * x;
    g = gcd(g, BigInt(abs(x)));
  }
  ASSERT_EQ(s.gram_determinant, gram);
  ASSERT_EQ(s.gcd_minors, g);
  // product <= sqrt(gram) / D, squared to stay in the integers.
  ASSERT_EQ(s.meets_bound, s.product * s.product * g * g <= gram);
  ASSERT_TRUE(s.meets_bound);
}

}  // namespace

TEST(SmallSolutions, Examples) {
  const SmallSolutions a = bv_small_solutions(row_matrix({1, 1, 1}));
  EXPECT_EQ(a.product, 1);
  EXPECT_TRUE(a.meets_bound);
  EXPECT_TRUE(a.meets_stated_bound);
  const SmallSolutions b = bv_small_solutions(row_matrix({1, 0, 0}));
  EXPECT_EQ(b.product, 1);
  const SmallSolutions c = bv_small_solutions(row_matrix({2, 4}));
  EXPECT_EQ(c.gcd_minors, 2);
  EXPECT_EQ(c.product, 2);
  EXPECT_EQ(abs(c.vectors(0, 0)), 2);
  EXPECT_EQ(abs(c.vectors(0, 1)), 1);
  EXPECT_TRUE(c.meets_stated_bound);
}

// Kernel of (1, 50, 50): any two independent solutions include one with
// x_2 + x_3 != 0, forcing |x_1| >= 50, while the root form of the bound is
// sqrt(sqrt(5001)) < 9.
TEST(SmallSolutions, RootExponentFormFailsOnThinKernel) {
  const SmallSolutions s = bv_small_solutions(row_matrix({1, 50, 50}));
  EXPECT_EQ(s.product, 50);
  EXPECT_TRUE(s.meets_bound);
  EXPECT_FALSE(s.meets_stated_bound);
}

TEST(SmallSolutions, RandomMatrices) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const int d0 = static_cast<int>(gen::uniform(rng, 1, 3));
    const int d = static_cast<int>(gen::uniform(rng, d0 + 1, 6));
    const Matrix<BigInt> M = gen::full_row_rank(rng, d0, d, 50);
    check_solutions(M, bv_small_solutions(M));
  }
}

TEST(SmallSolutions, RejectsBadShapes) {
  Matrix<BigInt> dep(2, 3);
  dep << 1, 2, 3, 2, 4, 6;
  EXPECT_THROW(bv_small_solutions(dep), DomainError);
  Matrix<BigInt> square(2, 2);
  square << 1, 0, 0, 1;
  EXPECT_THROW(bv_small_solutions(square), DomainError);
}

TEST(SmallSolutions, GcdOfMinors) {
  Matrix<BigInt> M(2, 3);
  M << 2, 0, 4, 0, 2, 6;
  EXPECT_EQ(gcd_maximal_minors(M), 4);
}
