#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "energia/eqcount.hpp"
#include "energia/lattice.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace energia;

namespace {

std::vector<std::int64_t> small_poly(std::mt19937_64& rng, int d, std::int64_t bound) {
  std::vector<std::int64_t> c(d + 1);
  for (auto& x : c) x = gen::uniform(rng, -bound, bound);
  while (c.back() == 0) c.back() = gen::uniform(rng, -bound, bound);
  return c;
}

int tri(int d) { return d * (d + 1) / 2; }

// Largest H with H^s (100d)^d q^s <= p^s m, where c_d = p/q.
std::int64_t regime_cap(int d, std::int64_t m) {
  std::int64_t H = 0;
  while (in_short_regime(d, m, H + 1)) ++H;
  return H;
}

}  // namespace

TEST(IntPoly, RootsAndQuotient) {
  // (x - 2)(x + 3)(x - 7) = x^3 - 6x^2 - 13x + 42
  const IntPoly f = to_int_poly({42, -13, -6, 1});
  EXPECT_EQ(integer_roots(f, -100, 100), (std::vector<std::int64_t>{-3, 2, 7}));
  EXPECT_EQ(integer_roots(f, 0, 5), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(integer_roots(to_int_poly({0, 0, 1}), -5, 5), (std::vector<std::int64_t>{0}));
  EXPECT_THROW(integer_roots(IntPoly{}, 0, 1), DomainError);
  EXPECT_EQ(degree(to_int_poly({1, 0, 0})), 0);
  // (x^3 - y^3)/(x - y) = x^2 + xy + y^2
  const auto g = difference_quotient(to_int_poly({0, 0, 0, 1}));
  EXPECT_EQ(g[2][0], 1);
  EXPECT_EQ(g[1][1], 1);
  EXPECT_EQ(g[0][2], 1);
  EXPECT_EQ(g[0][0], 0);
}

TEST(IntPoly, QuotientIdentityOnRandomPoints) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 100; ++t) {
    const auto c = small_poly(rng, static_cast<int>(gen::uniform(rng, 2, 5)), 20);
    const IntPoly f = to_int_poly(c);
    const auto g = difference_quotient(f);
    const BigInt x = gen::uniform(rng, -50, 50), y = gen::uniform(rng, -50, 50);
    BigInt gv = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
      for (std::size_t l = 0; l < g[k].size(); ++l) gv += g[k][l] * pow(x, static_cast<unsigned>(k)) * pow(y, static_cast<unsigned>(l));
    ASSERT_EQ(eval(f, x) - eval(f, y), (x - y) * gv);
  }
}

TEST(CountEq, Examples) {
  EXPECT_EQ(count_eq(to_int_poly({0, 0, 1}), 8, 10), 1);
  EXPECT_EQ(count_eq(to_int_poly({0, 0, 0, 1}), 7, 10), 1);
  EXPECT_EQ(count_eq(to_int_poly({0, 0, 1}), 3, 10), 1);
  EXPECT_EQ(solve_difference_eq(to_int_poly({0, 0, 1}), 8, 10), (std::vector<SolutionPair>{{3, 1}}));
  EXPECT_THROW(count_eq(to_int_poly({0, 0, 1}), 0, 10), DomainError);
  EXPECT_THROW(count_eq(to_int_poly({0, 1}), 1, 10), DomainError);
}

TEST(CountEq, MatchesDoubleLoop) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 300; ++t) {
    const int d = static_cast<int>(gen::uniform(rng, 2, 4));
    const auto c = small_poly(rng, d, 9);
    const std::int64_t H = gen::uniform(rng, 1, 200);
    BigInt w;
    if (t % 2 == 0) {
      w = gen::uniform(rng, -10000, 10000);
      if (w == 0) w = 1;
    } else {
      w = oracle::fint_eval(c, gen::uniform(rng, 1, H)) - oracle::fint_eval(c, gen::uniform(rng, 1, H));
      if (w == 0) w = -1;
    }
    ASSERT_EQ(count_eq(to_int_poly(c), w, H), oracle::count_eq(c, w, H)) << t;
  }
}

TEST(CountEq, MaximumOverWGrowsSlowly) {
  // For f = X^2, r(w) counts factorizations w = (n-m)(n+m); it stays tiny.
  std::int64_t worst = 0;
  for (std::int64_t w = 1; w <= 2000; ++w) worst = std::max(worst, count_eq(to_int_poly({0, 0, 1}), w, 200));
  EXPECT_LE(worst, 16);
}

TEST(Symmetric, Examples) {
  EXPECT_EQ(oracle::symmetric({0, 0, 1}, 2), 6);
  EXPECT_EQ(count_symmetric_eq(to_int_poly({0, 0, 1}), 2).count, 6);
  EXPECT_EQ(count_symmetric_eq(to_int_poly({0, 0, 1}), 1).count, 1);
  EXPECT_EQ(count_symmetric_eq(to_int_poly({0, 0, 0, 1}), 3).count, 15);
}

TEST(Symmetric, MatchesQuadrupleLoopAndDecomposes) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 60; ++t) {
    const auto c = small_poly(rng, static_cast<int>(gen::uniform(rng, 2, 4)), 5);
    const std::int64_t H = gen::uniform(rng, 1, 14);
    const SymmetricCount s = count_symmetric_eq(to_int_poly(c), H);
    ASSERT_EQ(s.count, oracle::symmetric(c, H));
    ASSERT_EQ(s.count, s.zero_term + s.nonzero_term);
    ASSERT_GE(s.zero_term, H * H);
  }
}

TEST(CdConstant, VolumeConditionAndMonotonicity) {
  Rational prev = 0;
  for (int d = 2; d <= 6; ++d) {
    const Rational c = choose_cd(d);
    ASSERT_LE(boost::multiprecision::denominator(c), 1'000'000);
    const BigInt p = boost::multiprecision::numerator(c), q = boost::multiprecision::denominator(c);
    // c^s (100d)^d <= 1
    ASSERT_LE(pow(p, tri(d)) * pow(BigInt(100 * d), d), pow(q, tri(d)));
    const double root = std::pow(100.0 * d, -static_cast<double>(d) / tri(d));
    ASSERT_NEAR(to_double(c), root, root * 1e-9);
    ASSERT_GT(c, prev);
    prev = c;
  }
  EXPECT_EQ(choose_cd(2), Rational(16214, 554511));
  EXPECT_THROW(choose_cd(1), DomainError);
}

TEST(CdConstant, GuaranteesShortLatticeVector) {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 100; ++t) {
    const int d = t % 2 ? 2 : 3;
    const std::int64_t m = d == 2 ? gen::uniform(rng, 40'000, 10'000'000) : gen::uniform(rng, 27'000'000, 2'000'000'000);
    const std::int64_t H = regime_cap(d, m);
    ASSERT_GE(H, 1);
    std::vector<std::int64_t> a(d);
    for (auto& x : a) x = gen::uniform(rng, 0, m - 1);
    a.back() = 1;
    std::vector<Rational> widths;
    BigInt Hj = 1;
    for (int j = 1; j <= d; ++j) {
      Hj *= H;
      widths.emplace_back(BigInt(m), BigInt(100 * d) * Hj);
    }
    const MinimaProfile mp = successive_minima(congruence_lattice(a, m), WeightedBox(widths));
    ASSERT_LE(mp.lambda[0], Rational(1)) << m << ' ' << H;
  }
}

TEST(Congruence, Examples) {
  const CongruenceCount a = count_congruence(PolyMod(101, {0, 0, 1}), 3, 4, true);
  EXPECT_EQ(a.brute, 1);
  ASSERT_TRUE(a.pipeline);
  EXPECT_EQ(a.pipeline->count, 1);
  EXPECT_EQ(a.pipeline->method, "pipeline");
  EXPECT_FALSE(a.in_regime);

  const CongruenceCount declined = count_congruence(PolyMod(101, {0, 0, 1}), 3, 4);
  EXPECT_FALSE(declined.pipeline);
  EXPECT_FALSE(declined.declined.empty());
  EXPECT_EQ(declined.brute, 1);

  const PolyMod cube(10007, {0, 0, 0, 1});
  const CongruenceCount b = count_congruence(cube, cube(3) - cube(2), 6, true);
  ASSERT_TRUE(b.pipeline);
  EXPECT_EQ(b.pipeline->count, b.brute);
  EXPECT_EQ(b.brute, oracle::congruence({0, 0, 0, 1}, 10007, 19, 6));

  EXPECT_THROW(count_congruence(PolyMod(101, {0, 0, 1}), 101, 4), DomainError);
  EXPECT_THROW(count_congruence(PolyMod(100, {0, 0, 2}), 3, 4), DomainError);
}

TEST(Congruence, EmptyFiber) {
  // X^2 mod 1009 over [1, 2] only produces differences 0 and +-3.
  const CongruenceCount c = count_congruence(PolyMod(1009, {0, 0, 1}), 5, 2, true);
  EXPECT_EQ(c.brute, 0);
  ASSERT_TRUE(c.pipeline);
  EXPECT_EQ(c.pipeline->count, 0);
}

TEST(Congruence, PipelineEqualsBruteInsideRegime) {
  std::mt19937_64 rng(55);
  int nonempty = 0;
  for (int t = 0; t < 60; ++t) {
    const int d = t % 2 ? 2 : 3;
    const std::int64_t m = d == 2 ? gen::uniform(rng, 1'000'000, 1'000'000'000'000) : gen::uniform(rng, 27'000'000, 1'000'000'000'000'000);
    const std::int64_t cap = regime_cap(d, m);
    const std::int64_t H = gen::uniform(rng, 1, cap);
    std::vector<std::int64_t> c(d + 1);
    for (auto& x : c) x = gen::uniform(rng, 0, m - 1);
    c.back() = 1;
    const PolyMod f(m, c);
    std::int64_t lam = f(gen::uniform(rng, 1, H)) - f(gen::uniform(rng, 1, H));
    if (t % 3 == 0 || mod(lam, m) == 0) lam = gen::uniform(rng, 1, m - 1);
    const CongruenceCount cc = count_congruence(f, lam, H);
    ASSERT_TRUE(cc.in_regime);
    ASSERT_TRUE(cc.pipeline);
    ASSERT_EQ(cc.pipeline->count, cc.brute);
    ASSERT_TRUE(cc.pipeline->certificate);
    ASSERT_LE(cc.pipeline->certificate->b_norm, Rational(1));
    if (H <= 60) ASSERT_EQ(cc.brute, oracle::congruence(c, m, lam, H));
    nonempty += cc.brute > 0;
  }
  EXPECT_GT(nonempty, 10);
}

TEST(Congruence, ForcedPipelineCoversEveryBranch) {
  std::mt19937_64 rng(56);
  std::set<std::string> branches;
  for (int t = 0; t < 150; ++t) {
    const int d = static_cast<int>(gen::uniform(rng, 2, 4));
    const auto primes = primes_up_to(400);
    const std::int64_t m = primes[gen::uniform(rng, 30, static_cast<std::int64_t>(primes.size()) - 1)];
    const std::int64_t H = gen::uniform(rng, 2, 7);
    std::vector<std::int64_t> c(d + 1);
    for (auto& x : c) x = gen::uniform(rng, 0, m - 1);
    c.back() = gen::uniform(rng, 1, m - 1);
    const PolyMod f(m, c);
    std::int64_t lam = f(gen::uniform(rng, 1, H)) - f(gen::uniform(rng, 1, H));
    if (mod(lam, m) == 0) lam = 1;
    const CongruenceCount cc = count_congruence(f, lam, H, true);
    ASSERT_EQ(cc.pipeline->count, cc.brute);
    ASSERT_EQ(cc.brute, oracle::congruence(c, m, lam, H));
    for (const auto& l : cc.pipeline->certificate->lifts) branches.insert(l.final_equation);
  }
  EXPECT_TRUE(branches.count("fiber"));
  EXPECT_TRUE(branches.count("polynomial") || branches.count("linear-shift"));
}
