#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "energia/core_ring.hpp"

namespace energia {

/// Integer polynomial, coefficients in ascending order.
using IntPoly = std::vector<BigInt>;

IntPoly to_int_poly(const std::vector<std::int64_t>& coeffs);
BigInt eval(const IntPoly& f, const BigInt& x);
int degree(const IntPoly& f);  // -1 for the zero polynomial

/// Distinct integer roots of f inside [lo, hi]; f must not be the zero polynomial.
std::vector<std::int64_t> integer_roots(const IntPoly& f, std::int64_t lo, std::int64_t hi);

/// Coefficients g_{k,l} of g(x, y) = (f(x) - f(y)) / (x - y) = sum g_{k,l} x^k y^l.
std::vector<std::vector<BigInt>> difference_quotient(const IntPoly& f);

using SolutionPair = std::pair<std::int64_t, std::int64_t>;  // (n, m)

/// All (n, m) in [1,H]^2 with f(n) - f(m) = w, ascending. For w = 0 the
/// diagonal n = m is left out.
std::vector<SolutionPair> solve_difference_eq(const IntPoly& f, const BigInt& w, std::int64_t H);

/// Number of (n, m) in [1,H]^2 with f(n) - f(m) = w, by the divisor method.
std::int64_t count_eq(const IntPoly& f, const BigInt& w, std::int64_t H);

struct SymmetricCount {
  BigInt count;         // #{f(x)+f(y) = f(z)+f(w)} over [1,H]^4
  BigInt zero_term;     // r(0)^2
  BigInt nonzero_term;  // sum_{w != 0} r(w)^2
};

SymmetricCount count_symmetric_eq(const IntPoly& f, std::int64_t H);

/// Largest rational c with denominator <= 10^6 and c^{d(d+1)/2} (100d)^d <= 1.
Rational choose_cd(int d);

/// H <= c_d m^{2/(d(d+1))}, decided exactly.
bool in_short_regime(int d, std::int64_t m, std::int64_t H);

struct LiftCertificate {
  BigInt w;
  std::size_t fiber_size = 0;               // #M
  std::optional<SolutionPair> anchor;       // lexicographically least (n, m) in M
  int d0 = 0;                               // dim of the span of M*
  std::vector<BigInt> w_j0;                 // chosen small solution, when d0 > 0
  BigInt w_star = 0;
  std::optional<BigInt> w_star2;            // shift n = m + w** in the linear case
  std::string final_equation;               // "fiber", "linear-shift" or "polynomial"
  std::int64_t count = 0;
};

struct PipelineCertificate {
  std::vector<std::int64_t> normalized;  // coefficients of a_d^{-1} f mod m
  std::int64_t lambda_normalized;
  std::vector<BigInt> b;                 // short vector in the congruence lattice
  Rational b_norm;                       // its box norm; <= 1 in the short regime
  std::int64_t ell;                      // a_j ell = b_j mod m
  std::vector<LiftCertificate> lifts;
};

struct EqCountResult {
  std::int64_t count = 0;
  std::string method;  // "divisor", "brute" or "pipeline"
  std::optional<PipelineCertificate> certificate;
};

struct CongruenceCount {
  std::int64_t brute = 0;
  bool in_regime = false;
  std::optional<EqCountResult> pipeline;
  std::string declined;  // why the pipeline did not run
};

/// Solutions of f(n) - f(m) = lambda mod m over [1,H]^2, by brute force and,
/// inside the short regime (or when forced), by the lattice reduction
/// pipeline. A disagreement between the two throws std::logic_error.
CongruenceCount count_congruence(const PolyMod& f, std::int64_t lambda, std::int64_t H,
                                 bool force_pipeline = false);

std::int64_t brute_count_congruence(const PolyMod& f, std::int64_t lambda, std::int64_t H);

}  // namespace energia
