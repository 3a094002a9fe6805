#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "energia/core_ring.hpp"

namespace energia {

using Complex = std::complex<double>;

/// Smallest primitive root mod the odd prime p.
std::int64_t primitive_root(std::int64_t p);

/// The character chi_k(g^a) = e(k a / (p - 1)) mod an odd prime p, with
/// chi(0) = 0. Immutable once built.
class CharTable {
 public:
  CharTable(std::int64_t p, std::int64_t k);
  /// k = (p - 1)/2, the Legendre symbol.
  static CharTable legendre(std::int64_t p);

  std::int64_t p() const { return p_; }
  std::int64_t k() const { return k_; }
  std::int64_t generator() const { return g_; }
  /// Order of chi in the character group.
  std::int64_t order() const;

  /// a with g^a = x mod p; x must be a unit.
  std::int64_t dlog(std::int64_t x) const;
  /// k * dlog(x) mod (p - 1), or nullopt for x = 0 mod p.
  std::optional<std::int64_t> exponent(std::int64_t x) const;
  /// e(e / (p - 1)).
  const Complex& root(std::int64_t e) const { return roots_[static_cast<std::size_t>(e)]; }

  Complex operator()(std::int64_t x) const;

 private:
  std::int64_t p_;
  std::int64_t k_;
  std::int64_t g_;
  std::vector<std::int64_t> dlog_;
  std::vector<Complex> roots_;
};

Complex char_eval(const CharTable& chi, std::int64_t x);

/// sum_{x mod p} chi(f(x)), accumulated as counts per exponent class.
Complex complete_sum_poly(const CharTable& chi, const PolyMod& f);

/// True when f = c * h^{ord chi} mod p, where the Weil bound does not apply.
bool is_character_power(const CharTable& chi, const PolyMod& f);

struct BilinearInstance {
  std::vector<std::int64_t> S;
  std::vector<Complex> alpha;  // one per element of S
  std::int64_t H = 0;          // I = [1, H]
  std::vector<Complex> beta;   // beta[x - 1] for x in I
};

/// sum_{s in S} sum_{x in I} alpha_s beta_x chi(s + x), compensated summation
/// over a fixed partition of S so the result is reproducible.
Complex bilinear_W(const CharTable& chi, const BilinearInstance& inst);

struct BilinearBound {
  double value = 0;    // with the p^{o(1)} factor set to 1
  bool size_ok = false;   // S^2 H <= p^2
  bool short_ok = false;  // H < p^{1/2}
  bool range_ok = false;  // H >= p^{1/r}
  bool conditions_hold = false;
  std::string note;
};

BilinearBound bilinear_energy_bound(double S, double H, double p, double E, int r);

struct RegimeParams {
  Rational zeta;
  Rational xi;
  int d = 2;
  int r = 1;
  double delta = 0;
};

struct RegionConstraint {
  std::string name;
  Rational lhs;
  Rational rhs;
  Rational slack;  // lhs - rhs for ">" constraints, rhs - lhs for "<="
  bool satisfied;
  bool binding;    // attains the xi threshold, or is violated
};

struct RegionReport {
  bool admissible;
  Rational xi_threshold;  // inf of admissible xi for this zeta and d
  Rational xi_cap;        // min(1/2, 2 - 2 zeta)
  std::vector<RegionConstraint> constraints;
};

RegionReport prime_sum_region(const RegimeParams& params);

struct PrimeBilinearSums {
  double sum_over_q = 0;  // sum_q |sum_r chi(f(q) + r)|
  double sum_over_r = 0;  // sum_r |sum_q chi(f(q) + r)|
  std::int64_t primes_q = 0;
  std::int64_t primes_r = 0;
  double ratio_q = 0;     // sum_over_q / (Q R)
  double ratio_r = 0;
  double saving_q = 0;    // log(Q R / sum_over_q) / log p; infinite for a zero sum
  double saving_r = 0;
};

PrimeBilinearSums prime_bilinear_sum(const CharTable& chi, const PolyMod& f, std::int64_t Q,
                                     std::int64_t R);

}  // namespace energia
