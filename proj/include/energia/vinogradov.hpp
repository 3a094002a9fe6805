#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "energia/core_ring.hpp"

namespace energia {

/// Default cap on the number of s-tuples a single count may enumerate.
inline constexpr std::uint64_t kDefaultTupleBudget = 100'000'000;

/// (sum x_i, sum x_i^2, ..., sum x_i^d) as exact integers.
struct PowerSumVector {
  std::vector<BigInt> components;
  bool operator==(const PowerSumVector&) const = default;
};

PowerSumVector power_sums(int d, std::span<const std::int64_t> xs);

/// Number of 2s-tuples from X with x_1^j+...+x_s^j = x_{s+1}^j+...+x_{2s}^j
/// for j = 1..d. Meet-in-the-middle over s-fold power-sum vectors, so the
/// cost is (#X)^s; throws BudgetExceeded above `budget`.
BigInt count_J(int d, int s, const std::vector<std::int64_t>& X,
               std::uint64_t budget = kDefaultTupleBudget);

/// Inhomogeneous count: solutions in [1,H]^{2s} of
/// x_1^j+...+x_s^j - x_{s+1}^j-...-x_{2s}^j = lambda_j, j = 1..d.
BigInt count_I(int d, int s, std::int64_t H, const std::vector<BigInt>& lambda,
               std::uint64_t budget = kDefaultTupleBudget);

/// s-fold congruence count f(x_1)+...+f(x_s) = f(x_{s+1})+...+f(x_{2s}) mod m
/// over I^{2s}.
BigInt count_Ts(const PolyMod& f, const Interval& I, int s,
                std::uint64_t budget = kDefaultTupleBudget);

struct JBoundRecord {
  int d;
  int s;  // d(d+1)/2
  std::int64_t set_size;
  BigInt J;
  Rational ratio;  // J / (#X)^s
};

/// J_{d,s}(X) against the mean value bound (#X)^s at the critical s.
JBoundRecord check_J_bound(int d, const std::vector<std::int64_t>& X,
                           std::uint64_t budget = kDefaultTupleBudget);

struct JBoundSweep {
  std::vector<JBoundRecord> points;  // X = [1..H] for each swept H
  std::vector<std::int64_t> H;
  double slope;  // least-squares slope of log(J / H^s) against log H
};

JBoundSweep sweep_J_bound(int d, const std::vector<std::int64_t>& Hs,
                          std::uint64_t budget = kDefaultTupleBudget);

}  // namespace energia
