#include "energia/core_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace energia {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 p = static_cast<__int128>(mod(a, m)) * mod(b, m);
  return static_cast<std::int64_t>(p % m);
}

std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<std::int64_t> invmod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, m);
}

std::int64_t signed_residue(std::int64_t r, std::int64_t m) {
  r = mod(r, m);
  return r > m / 2 ? r - m : r;
}

PolyMod::PolyMod(std::int64_t modulus, std::vector<std::int64_t> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (modulus_ < 2) throw DomainError("modulus must be at least 2");
  for (auto& c : coeffs_) c = mod(c, modulus_);
  if (coeffs_.size() < 2) throw DomainError("polynomial must have degree >= 1");
  if (coeffs_.back() == 0) {
    throw DomainError("leading coefficient vanishes modulo m");
  }
}

bool PolyMod::has_unit_leading() const {
  return std::gcd(leading(), modulus_) == 1;
}

std::int64_t PolyMod::operator()(std::int64_t x) const {
  const std::int64_t xr = mod(x, modulus_);
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = mod(mulmod(acc, xr, modulus_) + *it, modulus_);
  }
  return acc;
}

Interval::Interval(std::int64_t length) : H(length) {
  if (H < 1) throw DomainError("interval length H must be >= 1");
}

std::int64_t eval_poly(const PolyMod& f, std::int64_t x) { return f(x); }

std::vector<std::int64_t> image_set(const PolyMod& f, const Interval& I) {
  if (I.H > f.modulus()) throw DomainError("interval length exceeds modulus");
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(I.H));
  for (std::int64_t u = 1; u <= I.H; ++u) values.push_back(f(u));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

Factorization factorize(std::int64_t value) {
  if (value == 0) throw DomainError("cannot factor zero");
  Factorization out{value, {}};
  // |INT64_MIN| is not representable; callers stay well inside desk scale.
  std::uint64_t n = value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                              : static_cast<std::uint64_t>(value);
  auto take = [&](std::uint64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({static_cast<std::int64_t>(p), e});
  };
  take(2);
  take(3);
  take(5);
  static constexpr std::uint64_t kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t p = 7;
  for (int i = 0; p * p <= n; p += kWheel[i], i = (i + 1) % 8) take(p);
  if (n > 1) out.factors.push_back({static_cast<std::int64_t>(n), 1});
  return out;
}

std::int64_t Factorization::divisor_count() const {
  std::int64_t t = 1;
  for (const auto& pe : factors) t *= pe.exponent + 1;
  return t;
}

std::vector<std::int64_t> Factorization::divisors() const {
  std::vector<std::int64_t> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<std::pair<std::int64_t, std::int64_t>> divisor_pairs(
    std::int64_t w) {
  if (w == 0) throw DomainError("divisor_pairs requires w != 0");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t d : factorize(w).divisors()) {
    pairs.emplace_back(d, w / d);
    pairs.emplace_back(-d, -(w / d));
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw DomainError("empty entry in list '" + text + "'");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::logic_error&) {
      throw DomainError("bad integer '" + item + "'");
    }
    if (used != item.size()) throw DomainError("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<std::int64_t> parse_coefficients(const std::string& text) {
  return parse_int_list(text);
}

namespace {

// Decimal only; cpp_int's string constructor would read a leading 0 as octal.
BigInt parse_decimal_integer(std::string text) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("bad integer '" + text + "'");
  }
  text.erase(0, std::min(text.find_first_not_of('0'), text.size() - 1));
  BigInt value(text);
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt den = parse_decimal_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(parse_decimal_integer(text.substr(0, slash)), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_decimal_integer(text));
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  return Rational(
      parse_decimal_integer(text.substr(0, dot) + text.substr(dot + 1)), den);
}

std::optional<std::int64_t> checked_pow(std::int64_t x, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, x, &r)) return std::nullopt;
  }
  return r;
}

BigInt big_pow(std::int64_t x, int e) {
  return boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(e));
}

}  // namespace energia
