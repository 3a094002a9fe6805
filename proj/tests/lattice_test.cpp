#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace energia;

namespace {

Matrix<BigInt> rows(std::initializer_list<std::initializer_list<int>> data) {
  Matrix<BigInt> M(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : data) {
    Eigen::Index j = 0;
    for (int v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

bool same(const Matrix<BigInt>& A, const Matrix<BigInt>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != B(i, j)) return false;
  return true;
}

IntLattice mod5() { return congruence_lattice({1, 1}, 5); }

std::vector<BigInt> row(const Matrix<BigInt>& A, Eigen::Index i) {
  std::vector<BigInt> v;
  for (Eigen::Index j = 0; j < A.cols(); ++j) v.push_back(A(i, j));
  return v;
}

Rational scan_volume(const std::vector<Rational>& c, const Rational& radius) {
  Rational v = 1;
  for (const auto& ci : c) v *= 2 * ci * radius + 3;
  return v;
}

std::int64_t ceil_int(const Rational& r) {
  const BigInt q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  return to_int64(q) + 1;
}

}  // namespace

TEST(CongruenceLattice, Examples) {
  const IntLattice L = mod5();
  EXPECT_EQ(L.covolume(), 5);
  EXPECT_TRUE(same(L.basis(), rows({{1, 1}, {0, 5}})));
  EXPECT_EQ(congruence_lattice({1, 0, 0}, 7).covolume(), 49);
  EXPECT_EQ(congruence_lattice({1}, 7).covolume(), 1);
}

TEST(CongruenceLattice, CovolumeFormulaAndMembership) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const int d = static_cast<int>(gen::uniform(rng, 1, 4));
    const std::int64_t m = gen::uniform(rng, 2, 60);
    std::vector<std::int64_t> a(d);
    std::int64_t g = m;
    for (auto& x : a) {
      x = gen::uniform(rng, 0, m - 1);
      g = std::gcd(g, x);
    }
    const IntLattice L = congruence_lattice(a, m);
    BigInt expected = g;
    for (int i = 1; i < d; ++i) expected *= m;
    ASSERT_EQ(L.covolume(), expected);
    const std::int64_t ell = gen::uniform(rng, -100, 100);
    RowVector<BigInt> v(d);
    for (int j = 0; j < d; ++j) v(j) = a[j] * ell + m * gen::uniform(rng, -3, 3);
    ASSERT_TRUE(L.contains(v));
  }
}

TEST(IntLattice, HnfIsBasisIndependent) {
  const IntLattice a(rows({{1, 1}, {3, -2}}));
  const IntLattice b(rows({{0, 5}, {1, 1}, {6, 6}}));
  EXPECT_TRUE(a == b);
  EXPECT_THROW(IntLattice(rows({{1, 2}, {2, 4}})), DomainError);
}

TEST(Bodies, VolumesAndPolarity) {
  const WeightedBox box({Rational(1, 2), Rational(3)});
  EXPECT_EQ(box.volume(), Rational(6));
  const DualBody dual = DualBody::polar_of(box);
  EXPECT_EQ(DualBody({Rational(1), Rational(1)}).volume(), Rational(2));
  EXPECT_EQ(dual.volume(), Rational(4, 3));
  std::mt19937_64 rng(32);
  for (int t = 0; t < 2000; ++t) {
    const std::vector<Rational> z{Rational(gen::uniform(rng, -50, 50), 100), Rational(gen::uniform(rng, -300, 300), 100)};
    std::vector<Rational> y{Rational(gen::uniform(rng, -200, 200), 100), Rational(gen::uniform(rng, -40, 40), 100)};
    if (!box.contains(z) || !dual.contains(y)) continue;
    ASSERT_LE(z[0] * y[0] + z[1] * y[1], Rational(1));
  }
  // The vertex y = e_i / c_i of the dual body is tight against the box corner.
  EXPECT_TRUE(dual.contains({Rational(2), Rational(0)}));
  EXPECT_FALSE(dual.contains({Rational(2), Rational(1, 100)}));
}

TEST(Minima, Examples) {
  const MinimaProfile z2 = successive_minima(IntLattice::integer_lattice(2), WeightedBox::unit(2));
  EXPECT_EQ(z2.lambda, (std::vector<Rational>{1, 1}));
  EXPECT_TRUE(same(z2.witnesses, rows({{1, 0}, {0, 1}})));

  const MinimaProfile m5 = successive_minima(mod5(), WeightedBox::unit(2));
  EXPECT_EQ(m5.lambda, (std::vector<Rational>{1, 3}));
  EXPECT_TRUE(same(m5.witnesses, rows({{1, 1}, {3, -2}})));
  EXPECT_EQ(oracle::minima(mod5().basis(), {1, 1}, 5), m5.lambda);

  const MinimaProfile wide = successive_minima(IntLattice::integer_lattice(2), WeightedBox({2, 1}));
  EXPECT_EQ(wide.lambda, (std::vector<Rational>{Rational(1, 2), 1}));
}

TEST(Minima, MatchesBruteForceAndWitnessesAreValid) {
  std::mt19937_64 rng(33);
  int compared = 0;
  for (int t = 0; t < 120; ++t) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 3));
    const IntLattice L(gen::basis(rng, n, 4));
    const std::vector<Rational> c = gen::box(rng, n);
    const MinimaProfile mp = successive_minima(L, WeightedBox(c));
    ASSERT_EQ(mp.lambda.size(), static_cast<std::size_t>(n));
    Matrix<BigInt> W = mp.witnesses;
    ASSERT_EQ(linalg::rank(W), n);
    for (int i = 0; i < n; ++i) {
      if (i) ASSERT_LE(mp.lambda[i - 1], mp.lambda[i]);
      ASSERT_TRUE(L.contains(W.row(i)));
      ASSERT_EQ(oracle::box_norm(row(W, i), c), mp.lambda[i]);
    }
    const std::int64_t radius = ceil_int(mp.lambda.back());
    if (scan_volume(c, radius) > 60000) continue;
    ASSERT_EQ(oracle::minima(L.basis(), c, radius), mp.lambda);
    ++compared;
  }
  EXPECT_GT(compared, 30);
}

TEST(Minima, RejectsLargeDimension) {
  EXPECT_THROW(successive_minima(IntLattice::integer_lattice(9), WeightedBox::unit(9)), DomainError);
  EXPECT_THROW(successive_minima(IntLattice::integer_lattice(2), WeightedBox::unit(3)), DomainError);
}

TEST(Minkowski, Examples) {
  EXPECT_EQ(minkowski_check(IntLattice::integer_lattice(2), WeightedBox::unit(2)).ratio, Rational(4));
  const MinkowskiRecord m5 = minkowski_check(mod5(), WeightedBox::unit(2));
  EXPECT_EQ(m5.ratio, Rational(12, 5));
  EXPECT_TRUE(m5.holds);
  EXPECT_EQ(m5.lower, Rational(2));
  EXPECT_EQ(m5.upper, Rational(4));
  const IntLattice scaled(rows({{3, 0}, {0, 3}}));
  EXPECT_EQ(minkowski_check(scaled, WeightedBox({3, 3})).ratio, Rational(4));
}

TEST(Minkowski, HoldsOnRandomLattices) {
  std::mt19937_64 rng(34);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 15; ++t) {
      const MinkowskiRecord r = minkowski_check(IntLattice(gen::basis(rng, n)), WeightedBox(gen::box(rng, n)));
      ASSERT_TRUE(r.holds);
      ASSERT_LE(r.lower, r.ratio);
      ASSERT_LE(r.ratio, r.upper);
    }
  }
}

TEST(Dual, Examples) {
  const ScaledLattice z3 = dual_lattice(IntLattice::integer_lattice(3));
  EXPECT_EQ(z3.denominator, 1);
  EXPECT_TRUE(z3.numerator == IntLattice::integer_lattice(3));
  const ScaledLattice five = dual_lattice(IntLattice(rows({{5, 0}, {0, 5}})));
  EXPECT_EQ(five.denominator, 5);
  EXPECT_TRUE(five.numerator == IntLattice::integer_lattice(2));
  const ScaledLattice m5 = dual_lattice(mod5());
  EXPECT_EQ(m5.denominator, 5);
  EXPECT_TRUE(same(m5.numerator.basis(), rows({{1, 4}, {0, 5}})));
}

TEST(Dual, InvolutionAndIntegrality) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 60; ++t) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 4));
    const IntLattice L(gen::basis(rng, n));
    const ScaledLattice D = dual_lattice(L);
    const ScaledLattice back = dual_lattice(D);
    ASSERT_EQ(back.denominator, 1);
    ASSERT_TRUE(back.numerator == L);
    const Matrix<BigInt> G = linalg::multiply(L.basis(), linalg::transpose(D.numerator.basis()));
    for (Eigen::Index i = 0; i < G.rows(); ++i)
      for (Eigen::Index j = 0; j < G.cols(); ++j) ASSERT_EQ(G(i, j) % D.denominator, 0);
    // covol(L) covol(L*) = 1
    BigInt dn = 1;
    for (int i = 0; i < n; ++i) dn *= D.denominator;
    ASSERT_EQ(Rational(L.covolume()) * Rational(D.numerator.covolume(), dn), Rational(1));
  }
}

TEST(Transference, Examples) {
  for (int n = 1; n <= 4; ++n) {
    const TransferenceRecord r = transference_check(IntLattice::integer_lattice(n), WeightedBox::unit(n));
    EXPECT_TRUE(r.holds);
    for (const auto& p : r.products) {
      EXPECT_GE(p, Rational(1));
      EXPECT_LE(p, Rational(n));
    }
  }
  const TransferenceRecord m5 = transference_check(mod5(), WeightedBox::unit(2));
  EXPECT_EQ(m5.products, (std::vector<Rational>{1, Rational(6, 5)}));
  EXPECT_TRUE(m5.holds);
  const TransferenceRecord twice = transference_check(IntLattice(rows({{2, 2}, {0, 10}})), WeightedBox({2, 2}));
  EXPECT_EQ(twice.products, m5.products);
}

TEST(Transference, LowerBoundOnRandomLattices) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 45; ++t) {
    const int n = 2 + t % 3;
    const TransferenceRecord r = transference_check(IntLattice(gen::basis(rng, n)), WeightedBox(gen::box(rng, n)));
    ASSERT_TRUE(r.holds);
    ASSERT_EQ(r.products.size(), static_cast<std::size_t>(n));
    ASSERT_EQ(r.max_product, *std::max_element(r.products.begin(), r.products.end()));
  }
}

TEST(Mahler, Examples) {
  const MahlerBasis z3 = mahler_basis(IntLattice::integer_lattice(3), WeightedBox::unit(3));
  EXPECT_TRUE(same(z3.basis, rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
  EXPECT_EQ(z3.coefficient_constant, Rational(1));
  const MahlerBasis m5 = mahler_basis(mod5(), WeightedBox::unit(2));
  EXPECT_TRUE(same(m5.basis, rows({{1, 1}, {3, -2}})));
  EXPECT_LE(oracle::box_norm(row(m5.basis, 0), {1, 1}), Rational(1));
  EXPECT_LE(oracle::box_norm(row(m5.basis, 1), {1, 1}), Rational(4));
}

TEST(Mahler, BasisPropertiesOnRandomLattices) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 40; ++t) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 4));
    const IntLattice L(gen::basis(rng, n));
    const WeightedBox D(gen::box(rng, n));
    const MahlerBasis mb = mahler_basis(L, D);
    ASSERT_TRUE(IntLattice(mb.basis) == L);
    for (int j = 0; j < n; ++j) ASSERT_LE(mb.norm_ratio[j], mb.norm_factor);
    for (const auto& b : lattice_points(L, D, Rational(1))) {
      const auto beta = basis_coefficients(mb.basis, b);
      for (int j = 0; j < n; ++j) {
        Rational a = beta[j] < 0 ? Rational(-beta[j]) : beta[j];
        ASSERT_LE(a * mb.lambda[j], mb.coefficient_constant);
      }
    }
  }
}

TEST(PointCount, Examples) {
  EXPECT_EQ(count_lattice_points(IntLattice::integer_lattice(2), WeightedBox({2, 2})).count, 25);
  EXPECT_EQ(count_lattice_points(mod5(), WeightedBox({5, 5})).count, 25);
  EXPECT_EQ(count_lattice_points(mod5(), WeightedBox({Rational(9, 10), Rational(9, 10)})).count, 1);
}

TEST(PointCount, MatchesBruteForce) {
  std::mt19937_64 rng(38);
  for (int t = 0; t < 80; ++t) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 3));
    const IntLattice L(gen::basis(rng, n, 3));
    const std::vector<Rational> c = gen::box(rng, n);
    const PointCount pc = count_lattice_points(L, WeightedBox(c));
    ASSERT_EQ(pc.count, oracle::points_in_box(L.basis(), c));
    ASSERT_LE(pc.count, pc.henk_bound);
    ASSERT_EQ(pc.ratio, Rational(pc.count) / pc.minima_product);
    const auto pts = lattice_points(L, WeightedBox(c), Rational(1));
    ASSERT_EQ(BigInt(pts.size()), pc.count);
  }
}

TEST(Lll, PreservesLattice) {
  std::mt19937_64 rng(39);
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(gen::uniform(rng, 2, 5));
    const Matrix<BigInt> B = gen::basis(rng, n, 20);
    std::vector<double> scale(n);
    for (auto& s : scale) s = static_cast<double>(gen::uniform(rng, 1, 10));
    ASSERT_TRUE(IntLattice(lll_reduce(B, scale)) == IntLattice(B));
  }
}

TEST(SublatticeMinima, RankTwoInThreeSpace) {
  const MinimaProfile mp = sublattice_minima(rows({{1, -1, 0}, {0, 1, -1}}), WeightedBox::unit(3));
  EXPECT_EQ(mp.lambda, (std::vector<Rational>{1, 1}));
}

TEST(DualMinima, ScaledLatticeAgainstCrossPolytope) {
  // Dual of Z^2 under the unit box: Z^2 against |y1| + |y2| <= 1.
  const ScaledLattice dual = dual_lattice(IntLattice::integer_lattice(2));
  const MinimaProfile mp = successive_minima(dual, DualBody::polar_of(WeightedBox::unit(2)));
  EXPECT_EQ(mp.lambda, (std::vector<Rational>{1, 1}));
}

TEST(Measure, IdentityAndUnimodular) {
  IntMatrix I(2, 2);
  I << 1, 0, 0, 1;
  const MeasureEstimate a = fractional_measure(I, {0.1, 0.1}, 100000, 7);
  EXPECT_NEAR(a.estimate, 0.01, a.half_width);
  EXPECT_DOUBLE_EQ(a.exact, 0.01);
  IntMatrix U(2, 2);
  U << 1, 0, 1, 1;
  const MeasureEstimate b = fractional_measure(U, {0.1, 0.1}, 100000, 7);
  EXPECT_NEAR(b.estimate, 0.01, b.half_width);
  IntMatrix S(2, 2);
  S << 2, 0, 0, 1;
  const MeasureEstimate c = fractional_measure(S, {0.1, 0.1}, 100000, 7);
  EXPECT_NEAR(c.estimate, 0.01, c.half_width);
  EXPECT_EQ(fractional_measure(I, {0.1, 0.1}, 1000, 3).hits, fractional_measure(I, {0.1, 0.1}, 1000, 3).hits);
  IntMatrix Z(2, 2);
  Z << 1, 2, 2, 4;
  EXPECT_THROW(fractional_measure(Z, {0.1, 0.1}, 10, 1), DomainError);
  EXPECT_THROW(fractional_measure(I, {0.7, 0.1}, 10, 1), DomainError);
}
