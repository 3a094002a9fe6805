#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "energia/core_ring.hpp"

namespace energia {

/// Representation counts over Z_m; absent keys mean zero.
struct RepFunction {
  std::int64_t modulus;
  std::map<std::int64_t, std::int64_t> counts;

  std::int64_t operator()(std::int64_t value) const;
  std::int64_t total_mass() const;
  std::int64_t sum_of_squares() const;
  std::size_t support_size() const { return counts.size(); }
};

enum class RepMode { kPairSum, kPairDifference };

struct EnergyReport {
  std::int64_t T;
  std::int64_t Eplus;
  std::int64_t Etimes;
  Rational K;  // H^3 / T
  std::int64_t sumset_size;
};

// T_{f,m}(I) counts argument quadruples from I^4 (with multiplicity), while
// E+ and Ex count value quadruples from the deduplicated image set f(I)^4.

/// #{(x,y,z,w) in I^4 : f(x)+f(y) = f(z)+f(w) mod m}, as sum_l R(l)^2.
std::int64_t energy_T(const PolyMod& f, const Interval& I);
std::int64_t energy_plus(const PolyMod& f, const Interval& I);
std::int64_t energy_times(const PolyMod& f, const Interval& I);

/// E(A, B) = #{a1 + b1 = a2 + b2 mod m}.
std::int64_t energy_cross(const std::vector<std::int64_t>& A,
                          const std::vector<std::int64_t>& B, std::int64_t m);
/// Additive and multiplicative energy of a residue set with itself.
std::int64_t additive_energy(const std::vector<std::int64_t>& A,
                             std::int64_t m);
std::int64_t multiplicative_energy(const std::vector<std::int64_t>& A,
                                   std::int64_t m);

RepFunction rep_function(const PolyMod& f, const Interval& I, RepMode mode);

/// #(f(I) + f(I)) in Z_m.
std::int64_t sumset_size(const PolyMod& f, const Interval& I);

EnergyReport energy_report(const PolyMod& f, const Interval& I);

}  // namespace energia
