#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "energia/types.hpp"

namespace energia {

/// A polynomial a_0 + a_1 X + ... + a_d X^d over Z_m, coefficients stored in
/// ascending order and reduced into [0, m). The leading coefficient is nonzero
/// mod m, so degree() is exact.
class PolyMod {
 public:
  PolyMod(std::int64_t modulus, std::vector<std::int64_t> coeffs);

  std::int64_t modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t leading() const { return coeffs_.back(); }

  /// gcd(a_d, m) == 1, the hypothesis shared by the energy theorems.
  bool has_unit_leading() const;

  std::int64_t operator()(std::int64_t x) const;

 private:
  std::int64_t modulus_;
  std::vector<std::int64_t> coeffs_;
};

/// The discrete interval {1, ..., H}.
struct Interval {
  std::int64_t H;

  explicit Interval(std::int64_t length);
};

struct PrimePower {
  std::int64_t prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::int64_t value;
  std::vector<PrimePower> factors;  // primes strictly increasing

  std::int64_t divisor_count() const;
  std::vector<std::int64_t> divisors() const;  // positive, ascending
};

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m);
/// Inverse of a mod m, or nullopt when gcd(a, m) != 1.
std::optional<std::int64_t> invmod(std::int64_t a, std::int64_t m);

/// Representative of r mod m in (-m/2, m/2].
std::int64_t signed_residue(std::int64_t r, std::int64_t m);

std::int64_t eval_poly(const PolyMod& f, std::int64_t x);

/// Sorted, deduplicated {f(u) : u in I}. Throws DomainError when H > m.
std::vector<std::int64_t> image_set(const PolyMod& f, const Interval& I);

std::vector<std::int64_t> primes_up_to(std::int64_t n);
bool is_prime(std::int64_t n);

/// Trial division on a 2,3,5 wheel. Throws DomainError for value == 0.
Factorization factorize(std::int64_t value);

/// All (d1, d2) with d1 * d2 == w, both signs; 2 * tau(|w|) pairs ordered by d1.
std::vector<std::pair<std::int64_t, std::int64_t>> divisor_pairs(std::int64_t w);

/// Comma-separated ascending coefficients, e.g. "0,0,1" for X^2.
std::vector<std::int64_t> parse_coefficients(const std::string& text);
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// x^e as an exact integer; nullopt when it overflows 64 bits.
std::optional<std::int64_t> checked_pow(std::int64_t x, int e);
BigInt big_pow(std::int64_t x, int e);

}  // namespace energia
