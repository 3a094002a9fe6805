#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "energia/bounds.hpp"

using namespace energia;

namespace {

long double lpow(long double x, long double e) { return std::pow(x, e); }

void expect_rel(double got, long double want, double tol = 1e-12) {
  EXPECT_LE(std::fabs(static_cast<long double>(got) - want), tol * std::fabs(want)) << got << " vs " << static_cast<double>(want);
}

}  // namespace

TEST(AlphaBeta, Values) {
  EXPECT_EQ(alpha_beta(2).alpha, Rational(1, 2));
  EXPECT_EQ(alpha_beta(2).beta, Rational(1, 2));
  EXPECT_EQ(alpha_beta(3).alpha, Rational(1, 5));
  EXPECT_EQ(alpha_beta(3).beta, Rational(2, 5));
  Rational prev = 1;
  for (int d = 2; d <= 40; ++d) {
    const BoundParams p = alpha_beta(d);
    ASSERT_LT(p.alpha, prev);
    ASSERT_GT(p.alpha, 0);
    prev = p.alpha;
  }
  EXPECT_THROW(alpha_beta(1), DomainError);
}

TEST(GlobalBound, Examples) {
  EXPECT_DOUBLE_EQ(global_energy_bound(2, 1 << 20, 1 << 10), std::pow(2.0, 25));
  // With m = H the first branch is 1, so the minimum is H^{-1/2}.
  EXPECT_DOUBLE_EQ(global_energy_bound(2, 1, 1), 1);
  for (double H : {4.0, 7.0, 100.0}) EXPECT_NEAR(global_energy_bound(2, H, H), std::pow(H, 2.5), 1e-9 * H * H * H);
  EXPECT_THROW(global_energy_bound(2, 10, 11), DomainError);
  EXPECT_THROW(global_energy_bound(2, 10, 0.5), DomainError);
}

TEST(GlobalBound, NondecreasingInH) {
  for (int d = 2; d <= 6; ++d) {
    for (double m : {1e3, 1e6, 1e9}) {
      double prev = 0;
      for (double H = 1; H <= m; H *= 1.3) {
        const double v = global_energy_bound(d, m, H);
        ASSERT_GE(v, prev * (1 - 1e-12)) << d << ' ' << m << ' ' << H;
        prev = v;
      }
    }
  }
}

TEST(ShortBound, Examples) {
  const ShortEnergyBound b = short_energy_bound(2, 729, 9);
  EXPECT_NEAR(b.value, 162, 1e-9);
  EXPECT_NEAR(b.crossover, 9, 1e-12);
  EXPECT_NEAR(short_energy_bound(3, 1e6, 1).value, 1 + std::pow(1e6, -1.0 / 3), 1e-15);
  // At the crossover both terms equal H^2.
  for (int d = 2; d <= 5; ++d) {
    const double m = 1e12;
    const double Hs = short_energy_bound(d, m, 1).crossover;
    EXPECT_NEAR(short_energy_bound(d, m, Hs).value, 2 * Hs * Hs, 1e-9 * Hs * Hs);
  }
}

TEST(CrossIntervalBound, Examples) {
  EXPECT_NEAR(cross_interval_bound(2, 64, 4, 4), 96, 1e-9);
  const double m = 1e5, H = 50;
  EXPECT_NEAR(cross_interval_bound(3, m, H, 1), H * H / std::pow(m, 1.0 / 6) + H + 1, 1e-9);
  for (double Z = 1; Z < 1e4; Z *= 2) {
    ASSERT_LE(cross_interval_bound(3, m, H, 2 * Z), 4 * cross_interval_bound(3, m, H, Z) * (1 + 1e-12));
  }
  EXPECT_THROW(cross_interval_bound(2, 64, 4, 0.5), DomainError);
}

TEST(Bounds, MatchLongDoubleEvaluation) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> deg(2, 8);
  std::uniform_real_distribution<double> lm(1, 15), u(0, 1), lz(0, 4);
  for (int t = 0; t < 10; ++t) {
    const int d = deg(rng);
    const double m = std::pow(10.0, lm(rng));
    const double H = std::pow(m, u(rng));
    const double Z = std::pow(10.0, lz(rng));
    const long double a = 2.0L / (d * d + d - 2), b = 2.0L / (d + 2), k = 2.0L / (d * (d + 1));
    const long double M = m, L = H, W = Z;
    expect_rel(global_energy_bound(d, m, H), lpow(L, 3) * std::min(lpow(M / L, -a), lpow(L, -b)));
    expect_rel(short_energy_bound(d, m, H).value, lpow(L, 4) / lpow(M, 2 * k) + L * L);
    expect_rel(short_energy_bound(d, m, H).crossover, lpow(M, k));
    expect_rel(cross_interval_bound(d, m, H, Z), L * L * W * W / lpow(M, k) + W * (L + W));
  }
}
