#include "energia/vinogradov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "energia/stats.hpp"

namespace energia {
namespace {

using u128 = unsigned __int128;

void check_budget(std::size_t base, int s, std::uint64_t budget,
                  const char* what) {
  if (BigInt(base) == 0) return;
  if (boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(s)) >
      BigInt(budget)) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(base) +
                         "^" + std::to_string(s) + " tuples exceed budget " +
                         std::to_string(budget));
  }
}

// Mixed-radix encoding of power-sum vectors whose component j lies in
// [lo_j, lo_j + width_j).
struct KeyLayout {
  std::vector<BigInt> lo;
  std::vector<BigInt> radix;
  BigInt span = 1;
};

KeyLayout make_layout(const std::vector<BigInt>& lo,
                      const std::vector<BigInt>& hi) {
  KeyLayout layout;
  layout.lo = lo;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    layout.radix.push_back(layout.span);
    layout.span *= hi[j] - lo[j] + 1;
  }
  return layout;
}

template <typename Key>
Key key_from(const BigInt& v) {
  if constexpr (std::is_same_v<Key, BigInt>) {
    return v;
  } else {
    return static_cast<Key>(v.convert_to<unsigned long long>()) |
           (static_cast<Key>((v >> 64).convert_to<unsigned long long>()) << 64);
  }
}

template <typename Int>
Int int_from(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    return v.convert_to<Int>();
  }
}

template <typename Key, typename Int>
Key key_component(const Int& shifted) {
  if constexpr (std::is_same_v<Key, BigInt>) {
    return BigInt(shifted);
  } else {
    return static_cast<Key>(static_cast<std::uint64_t>(shifted));
  }
}

// Sorted keys of (power-sum vector of t) + shift over all s-tuples t from X,
// enumerated lexicographically.
template <typename Int, typename Key>
std::vector<Key> tuple_keys(int d, int s, const std::vector<std::int64_t>& X,
                            const std::vector<BigInt>& shift,
                            const KeyLayout& layout) {
  const std::size_t n = X.size();
  std::vector<std::vector<Int>> powers(n, std::vector<Int>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) powers[i][j] = int_from<Int>(big_pow(X[i], j + 1));
  }
  std::vector<Int> offset(d);
  std::vector<Key> radix(d);
  for (int j = 0; j < d; ++j) {
    offset[j] = int_from<Int>(shift[j] - layout.lo[j]);
    radix[j] = key_from<Key>(layout.radix[j]);
  }

  std::vector<Key> keys;
  keys.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(n), s)));
  std::vector<std::vector<Int>> partial(s + 1, offset);
  std::function<void(int)> descend = [&](int depth) {
    if (depth == s) {
      Key key = 0;
      for (int j = 0; j < d; ++j) {
        key += key_component<Key, Int>(partial[s][j]) * radix[j];
      }
      keys.push_back(key);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) {
        partial[depth + 1][j] = partial[depth][j] + powers[i][j];
      }
      descend(depth + 1);
    }
  };
  descend(0);
  std::sort(keys.begin(), keys.end());
  return keys;
}

template <typename Key>
BigInt correlate_sorted(const std::vector<Key>& a, const std::vector<Key>& b) {
  u128 total = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && a[i2] == a[i]) ++i2;
      while (j2 < b.size() && b[j2] == b[j]) ++j2;
      total += static_cast<u128>(i2 - i) * static_cast<u128>(j2 - j);
      i = i2;
      j = j2;
    }
  }
  BigInt out = static_cast<unsigned long long>(total >> 64);
  out <<= 64;
  out += static_cast<unsigned long long>(total);
  return out;
}

// Number of pairs (u, v) of s-tuples from X with P(u) = P(v) + lambda.
BigInt count_power_sum_matches(int d, int s, const std::vector<std::int64_t>& X,
                               const std::vector<BigInt>& lambda) {
  std::vector<BigInt> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    BigInt mn = big_pow(X.front(), j + 1), mx = mn;
    for (std::int64_t x : X) {
      const BigInt p = big_pow(x, j + 1);
      mn = std::min(mn, p);
      mx = std::max(mx, p);
    }
    lo[j] = s * mn + std::min(BigInt(0), lambda[j]);
    hi[j] = s * mx + std::max(BigInt(0), lambda[j]);
  }
  const KeyLayout layout = make_layout(lo, hi);
  const std::vector<BigInt> zero(d, BigInt(0));

  // Components widen to arbitrary precision only when a power sum or the
  // encoded key would overflow fixed width.
  const BigInt int64_max = std::numeric_limits<std::int64_t>::max();
  bool fits64 = true;
  for (int j = 0; j < d; ++j) {
    fits64 = fits64 && boost::multiprecision::abs(lo[j]) < int64_max / 4 &&
             boost::multiprecision::abs(hi[j]) < int64_max / 4;
  }
  const bool fits128 = layout.span < (BigInt(1) << 127);
  if (fits64 && fits128) {
    const auto a = tuple_keys<std::int64_t, u128>(d, s, X, zero, layout);
    if (lambda == zero) return correlate_sorted(a, a);
    const auto b = tuple_keys<std::int64_t, u128>(d, s, X, lambda, layout);
    return correlate_sorted(a, b);
  }
  const auto a = tuple_keys<BigInt, BigInt>(d, s, X, zero, layout);
  const auto b = tuple_keys<BigInt, BigInt>(d, s, X, lambda, layout);
  return correlate_sorted(a, b);
}

}  // namespace

PowerSumVector power_sums(int d, std::span<const std::int64_t> xs) {
  PowerSumVector v{std::vector<BigInt>(d, BigInt(0))};
  for (std::int64_t x : xs) {
    for (int j = 0; j < d; ++j) v.components[j] += big_pow(x, j + 1);
  }
  return v;
}

BigInt count_J(int d, int s, const std::vector<std::int64_t>& X,
               std::uint64_t budget) {
  if (d < 1 || s < 1) throw DomainError("count_J requires d >= 1 and s >= 1");
  if (X.empty()) throw DomainError("count_J requires a nonempty set");
  std::vector<std::int64_t> set = X;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  check_budget(set.size(), s, budget, "count_J");
  return count_power_sum_matches(d, s, set, std::vector<BigInt>(d, BigInt(0)));
}

BigInt count_I(int d, int s, std::int64_t H, const std::vector<BigInt>& lambda,
               std::uint64_t budget) {
  if (d < 1 || s < 1 || H < 1) throw DomainError("count_I requires d, s, H >= 1");
  if (static_cast<int>(lambda.size()) != d) {
    throw DomainError("lambda must have length d");
  }
  for (int j = 0; j < d; ++j) {
    if (boost::multiprecision::abs(lambda[j]) > s * big_pow(H, j + 1)) {
      throw DomainError("|lambda_j| exceeds s H^j");
    }
  }
  check_budget(static_cast<std::size_t>(H), s, budget, "count_I");
  std::vector<std::int64_t> X(static_cast<std::size_t>(H));
  for (std::int64_t x = 1; x <= H; ++x) X[x - 1] = x;
  return count_power_sum_matches(d, s, X, lambda);
}

BigInt count_Ts(const PolyMod& f, const Interval& I, int s,
                std::uint64_t budget) {
  if (s < 1) throw DomainError("count_Ts requires s >= 1");
  if (I.H > f.modulus()) throw DomainError("interval length exceeds modulus");
  const std::int64_t m = f.modulus();

  // Histogram of f over I, then (s-1) cyclic convolutions when that is
  // cheaper than walking all H^s tuples.
  std::vector<std::int64_t> mult_by_value;
  std::vector<std::int64_t> image;
  {
    std::vector<std::int64_t> values;
    for (std::int64_t x = 1; x <= I.H; ++x) values.push_back(f(x));
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size();) {
      std::size_t j = i;
      while (j < values.size() && values[j] == values[i]) ++j;
      image.push_back(values[i]);
      mult_by_value.push_back(static_cast<std::int64_t>(j - i));
      i = j;
    }
  }
  const double conv_cost = static_cast<double>(s - 1) * static_cast<double>(m) *
                           static_cast<double>(image.size());
  const double tuple_cost = std::pow(static_cast<double>(I.H), s);
  if (std::min(conv_cost, tuple_cost) > static_cast<double>(budget)) {
    throw BudgetExceeded("count_Ts: cost exceeds budget");
  }

  u128 total = 0;
  if (conv_cost <= tuple_cost) {
    std::vector<u128> hist(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < image.size(); ++i) hist[image[i]] = mult_by_value[i];
    for (int step = 1; step < s; ++step) {
      std::vector<u128> next(static_cast<std::size_t>(m), 0);
      for (std::int64_t r = 0; r < m; ++r) {
        if (hist[r] == 0) continue;
        for (std::size_t i = 0; i < image.size(); ++i) {
          next[mod(r + image[i], m)] += hist[r] * static_cast<u128>(mult_by_value[i]);
        }
      }
      hist.swap(next);
    }
    for (u128 c : hist) total += c * c;
  } else {
    std::vector<std::int64_t> values;
    for (std::int64_t x = 1; x <= I.H; ++x) values.push_back(f(x));
    std::vector<std::int64_t> sums{0};
    for (int step = 0; step < s; ++step) {
      std::vector<std::int64_t> next;
      next.reserve(sums.size() * values.size());
      for (std::int64_t a : sums) {
        for (std::int64_t v : values) next.push_back(mod(a + v, m));
      }
      sums.swap(next);
    }
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 0; i < sums.size();) {
      std::size_t j = i;
      while (j < sums.size() && sums[j] == sums[i]) ++j;
      total += static_cast<u128>(j - i) * static_cast<u128>(j - i);
      i = j;
    }
  }
  BigInt out = static_cast<unsigned long long>(total >> 64);
  out <<= 64;
  out += static_cast<unsigned long long>(total);
  return out;
}

JBoundRecord check_J_bound(int d, const std::vector<std::int64_t>& X,
                           std::uint64_t budget) {
  const int s = d * (d + 1) / 2;
  JBoundRecord r;
  r.d = d;
  r.s = s;
  std::vector<std::int64_t> set = X;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  r.set_size = static_cast<std::int64_t>(set.size());
  r.J = count_J(d, s, set, budget);
  r.ratio = Rational(r.J, big_pow(r.set_size, s));
  return r;
}

JBoundSweep sweep_J_bound(int d, const std::vector<std::int64_t>& Hs,
                          std::uint64_t budget) {
  JBoundSweep sweep;
  std::vector<double> xs, ys;
  for (std::int64_t H : Hs) {
    std::vector<std::int64_t> X(static_cast<std::size_t>(H));
    for (std::int64_t x = 1; x <= H; ++x) X[x - 1] = x;
    sweep.points.push_back(check_J_bound(d, X, budget));
    sweep.H.push_back(H);
    xs.push_back(static_cast<double>(H));
    ys.push_back(to_double(sweep.points.back().ratio));
  }
  sweep.slope = loglog_slope(xs, ys);
  return sweep;
}

}  // namespace energia
