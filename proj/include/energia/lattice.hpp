#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "energia/types.hpp"

namespace energia {

/// Cap on enumeration nodes visited by a single lattice search.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 50'000'000;
inline constexpr int kMaxLatticeDimension = 8;

/// Full-rank lattice in Z^n; rows of `basis` are basis vectors, kept in
/// Hermite normal form so equal lattices compare equal.
class IntLattice {
 public:
  IntLattice() = default;
  /// Lattice generated by the rows of `generators`; throws DomainError unless
  /// they span a full-rank lattice.
  explicit IntLattice(const Matrix<BigInt>& generators);

  static IntLattice integer_lattice(int n);

  int dimension() const { return static_cast<int>(basis_.cols()); }
  const Matrix<BigInt>& basis() const { return basis_; }
  const BigInt& covolume() const { return covolume_; }
  bool contains(const RowVector<BigInt>& v) const;

  bool operator==(const IntLattice& other) const;

 private:
  Matrix<BigInt> basis_;
  BigInt covolume_ = 0;
};

/// The lattice (1/denominator) * numerator, with gcd(entries, denominator) = 1.
struct ScaledLattice {
  IntLattice numerator;
  BigInt denominator = 1;
  bool operator==(const ScaledLattice&) const = default;
};

/// {x : |x_i| <= c_i}.
class WeightedBox {
 public:
  explicit WeightedBox(std::vector<Rational> half_widths);
  static WeightedBox unit(int n);

  int dimension() const { return static_cast<int>(c_.size()); }
  const std::vector<Rational>& half_widths() const { return c_; }
  /// max_i |x_i| / c_i
  Rational norm(const RowVector<BigInt>& x) const;
  Rational volume() const;
  bool contains(const std::vector<Rational>& x) const;

 private:
  std::vector<Rational> c_;
};

/// {y : sum_i c_i |y_i| <= 1}, the polar body of the box with half-widths c.
class DualBody {
 public:
  explicit DualBody(std::vector<Rational> weights);
  static DualBody polar_of(const WeightedBox& box) { return DualBody(box.half_widths()); }

  int dimension() const { return static_cast<int>(c_.size()); }
  const std::vector<Rational>& weights() const { return c_; }
  Rational norm(const RowVector<BigInt>& y) const;
  Rational volume() const;
  bool contains(const std::vector<Rational>& y) const;

 private:
  std::vector<Rational> c_;
};

/// Successive minima with witnesses. Witness i is witnesses.row(i) / denominator.
struct MinimaProfile {
  std::vector<Rational> lambda;
  Matrix<BigInt> witnesses;
  BigInt denominator = 1;
};

IntLattice congruence_lattice(const std::vector<std::int64_t>& coeffs, std::int64_t m);

MinimaProfile successive_minima(const IntLattice& L, const WeightedBox& D,
                                std::uint64_t budget = kDefaultEnumerationBudget);
MinimaProfile successive_minima(const ScaledLattice& L, const DualBody& D,
                                std::uint64_t budget = kDefaultEnumerationBudget);

/// Minima of the rank-k lattice spanned by the rows of `basis` (k x n) under
/// the weighted sup-norm in the ambient R^n.
MinimaProfile sublattice_minima(const Matrix<BigInt>& basis, const WeightedBox& D,
                                std::uint64_t budget = kDefaultEnumerationBudget);

ScaledLattice dual_lattice(const IntLattice& L);
ScaledLattice dual_lattice(const ScaledLattice& L);

/// LLL reduction (delta = 0.99) of the rows of `basis` for the inner product
/// sum_i x_i y_i / c_i^2. Returns a basis of the same lattice.
Matrix<BigInt> lll_reduce(const Matrix<BigInt>& basis, const std::vector<double>& scale);

struct MahlerBasis {
  Matrix<BigInt> basis;              // rows; a basis of L
  std::vector<Rational> lambda;      // minima of (L, D)
  std::vector<Rational> norm_ratio;  // ||basis_j||_D / lambda_j
  Rational norm_factor;              // max(1, n/2), the guaranteed cap on norm_ratio
  Rational coefficient_constant;     // max |beta_j| * lambda_j over b in L cap D
  std::uint64_t points_checked = 0;
};

MahlerBasis mahler_basis(const IntLattice& L, const WeightedBox& D,
                         std::uint64_t budget = kDefaultEnumerationBudget);

/// Coordinates of b in the given basis (exact).
std::vector<Rational> basis_coefficients(const Matrix<BigInt>& basis,
                                         const RowVector<BigInt>& b);

/// Every lattice point with ||x||_D <= radius, zero included.
std::vector<RowVector<BigInt>> lattice_points(const IntLattice& L, const WeightedBox& D,
                                              const Rational& radius,
                                              std::uint64_t budget = kDefaultEnumerationBudget);

struct PointCount {
  BigInt count;                // #(L cap D), zero included
  Rational minima_product;     // prod max(1, 1/lambda_j)
  Rational ratio;              // count / minima_product
  BigInt henk_bound;           // 2^{n-1} prod floor(2/lambda_j + 1)
  BigInt constant;             // C_n = 2^{n-1} 3^n
};

PointCount count_lattice_points(const IntLattice& L, const WeightedBox& D,
                                std::uint64_t budget = kDefaultEnumerationBudget);

struct MinkowskiRecord {
  std::vector<Rational> lambda;
  Rational ratio;  // prod lambda * vol(D) / covol(L)
  Rational lower;  // 2^n / n!
  Rational upper;  // 2^n
  bool holds;
};

MinkowskiRecord minkowski_check(const IntLattice& L, const WeightedBox& D,
                                std::uint64_t budget = kDefaultEnumerationBudget);

struct TransferenceRecord {
  std::vector<Rational> lambda;
  std::vector<Rational> dual_lambda;
  std::vector<Rational> products;  // lambda_j * dual_lambda_{n-j+1}
  Rational max_product;
  bool holds;  // every product >= 1
};

TransferenceRecord transference_check(const IntLattice& L, const WeightedBox& D,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

struct SmallSolutions {
  Matrix<BigInt> vectors;  // (d - d0) x d, independent, M * v^T = 0
  BigInt gcd_minors;       // D
  BigInt gram_determinant;  // det(M M^T)
  BigInt product;          // prod_j max_i |w_{j,i}|
  bool meets_bound;         // product <= D^{-1} sqrt(det(M M^T))
  bool meets_stated_bound;  // product <= (D^{-1} sqrt(det(M M^T)))^{1/(d-d0)}
  bool from_minima;         // fell back to sup-norm minima witnesses
};

SmallSolutions bv_small_solutions(const Matrix<BigInt>& M,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

/// gcd of all maximal minors of a full-row-rank matrix.
BigInt gcd_maximal_minors(const Matrix<BigInt>& M);

struct MeasureEstimate {
  double estimate;
  double std_error;   // binomial sqrt(p(1-p)/N) at p = prod eps_j
  double half_width;  // 3 * std_error
  double exact;       // prod eps_j
  double constant;    // estimate / prod eps_j
  std::uint64_t samples;
  std::uint64_t hits;
};

inline constexpr std::uint64_t kDefaultMeasureSamples = 100'000;

/// Monte-Carlo estimate of the measure of t in [0,1]^d with
/// frac(sum_i m_{ij} t_i) <= eps_j for every j.
MeasureEstimate fractional_measure(const IntMatrix& M, const std::vector<double>& eps,
                                   std::uint64_t samples, std::uint64_t seed);

}  // namespace energia
