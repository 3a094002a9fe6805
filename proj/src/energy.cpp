#include "energia/energy.hpp"

#include <algorithm>

namespace energia {
namespace {

void require_fits(const PolyMod& f, const Interval& I) {
  if (I.H > f.modulus()) throw DomainError("interval length exceeds modulus");
}

std::vector<std::int64_t> values_on(const PolyMod& f, const Interval& I) {
  std::vector<std::int64_t> v;
  v.reserve(static_cast<std::size_t>(I.H));
  for (std::int64_t x = 1; x <= I.H; ++x) v.push_back(f(x));
  return v;
}

// Sorts in place and returns sum over runs of (run length)^2.
std::int64_t sum_squared_multiplicities(std::vector<std::int64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const auto run = static_cast<std::int64_t>(j - i);
    total += run * run;
    i = j;
  }
  return total;
}

template <typename Combine>
std::vector<std::int64_t> pair_values(const std::vector<std::int64_t>& A,
                                      const std::vector<std::int64_t>& B,
                                      Combine combine) {
  std::vector<std::int64_t> out;
  out.reserve(A.size() * B.size());
  for (std::int64_t a : A) {
    for (std::int64_t b : B) out.push_back(combine(a, b));
  }
  return out;
}

}  // namespace

std::int64_t RepFunction::operator()(std::int64_t value) const {
  const auto it = counts.find(mod(value, modulus));
  return it == counts.end() ? 0 : it->second;
}

std::int64_t RepFunction::total_mass() const {
  std::int64_t s = 0;
  for (const auto& [k, c] : counts) s += c;
  return s;
}

std::int64_t RepFunction::sum_of_squares() const {
  std::int64_t s = 0;
  for (const auto& [k, c] : counts) s += c * c;
  return s;
}

std::int64_t energy_cross(const std::vector<std::int64_t>& A,
                          const std::vector<std::int64_t>& B, std::int64_t m) {
  // Dense histogram when Z_m is no larger than the pair count, sorted keys
  // otherwise; either way the space is O(min(m, #A #B)).
  if (static_cast<std::uint64_t>(m) <= A.size() * B.size()) {
    std::vector<std::int64_t> hist(static_cast<std::size_t>(m), 0);
    for (std::int64_t a : A) {
      for (std::int64_t b : B) ++hist[mod(a + b, m)];
    }
    std::int64_t total = 0;
    for (std::int64_t c : hist) total += c * c;
    return total;
  }
  auto sums = pair_values(A, B, [m](std::int64_t a, std::int64_t b) {
    return mod(a + b, m);
  });
  return sum_squared_multiplicities(sums);
}

std::int64_t additive_energy(const std::vector<std::int64_t>& A,
                             std::int64_t m) {
  return energy_cross(A, A, m);
}

std::int64_t multiplicative_energy(const std::vector<std::int64_t>& A,
                                   std::int64_t m) {
  auto products = pair_values(A, A, [m](std::int64_t a, std::int64_t b) {
    return mulmod(a, b, m);
  });
  return sum_squared_multiplicities(products);
}

std::int64_t energy_T(const PolyMod& f, const Interval& I) {
  require_fits(f, I);
  const auto v = values_on(f, I);
  return energy_cross(v, v, f.modulus());
}

std::int64_t energy_plus(const PolyMod& f, const Interval& I) {
  return additive_energy(image_set(f, I), f.modulus());
}

std::int64_t energy_times(const PolyMod& f, const Interval& I) {
  return multiplicative_energy(image_set(f, I), f.modulus());
}

RepFunction rep_function(const PolyMod& f, const Interval& I, RepMode mode) {
  require_fits(f, I);
  const std::int64_t m = f.modulus();
  const auto v = values_on(f, I);
  RepFunction r{m, {}};
  for (std::int64_t a : v) {
    for (std::int64_t b : v) {
      ++r.counts[mode == RepMode::kPairSum ? mod(a + b, m) : mod(a - b, m)];
    }
  }
  return r;
}

std::int64_t sumset_size(const PolyMod& f, const Interval& I) {
  const auto A = image_set(f, I);
  const std::int64_t m = f.modulus();
  auto sums = pair_values(A, A, [m](std::int64_t a, std::int64_t b) {
    return mod(a + b, m);
  });
  std::sort(sums.begin(), sums.end());
  return std::unique(sums.begin(), sums.end()) - sums.begin();
}

EnergyReport energy_report(const PolyMod& f, const Interval& I) {
  EnergyReport r;
  r.T = energy_T(f, I);
  r.Eplus = energy_plus(f, I);
  r.Etimes = energy_times(f, I);
  r.K = Rational(big_pow(I.H, 3), BigInt(r.T));
  r.sumset_size = sumset_size(f, I);
  return r;
}

}  // namespace energia
