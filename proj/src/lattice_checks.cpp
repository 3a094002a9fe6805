#include <algorithm>
#include <stdexcept>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"
#include "enumeration.hpp"

namespace energia {
namespace {

using linalg::convert;

detail::NormSpec sup_spec(const WeightedBox& D) {
  return {detail::NormSpec::Kind::kSup, D.half_widths()};
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational pow2(int n) { return Rational(BigInt(1) << n); }

BigInt nearest(const BigInt& a, const BigInt& b) {
  // round(a / b) for b > 0, halves rounded down
  return linalg::floor_div<BigInt>(2 * a + b, 2 * b);
}

}  // namespace

std::vector<Rational> basis_coefficients(const Matrix<BigInt>& basis, const RowVector<BigInt>& b) {
  RowVector<Rational> v(b.cols());
  for (Eigen::Index i = 0; i < b.cols(); ++i) v(i) = Rational(b(i));
  const RowVector<Rational> x = linalg::solve_left(convert<Rational>(basis), v);
  return std::vector<Rational>(x.data(), x.data() + x.size());
}

std::vector<RowVector<BigInt>> lattice_points(const IntLattice& L, const WeightedBox& D,
                                              const Rational& radius, std::uint64_t budget) {
  if (L.dimension() != D.dimension()) throw DomainError("lattice and box dimensions differ");
  const auto spec = sup_spec(D);
  const Matrix<BigInt> B = lll_reduce(L.basis(), spec.scale());
  std::vector<RowVector<BigInt>> pts;
  detail::enumerate(B, spec, radius, budget, [&](const RowVector<BigInt>& x) { pts.push_back(x); });
  std::sort(pts.begin(), pts.end(), [](const RowVector<BigInt>& a, const RowVector<BigInt>& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return pts;
}

MahlerBasis mahler_basis(const IntLattice& L, const WeightedBox& D, std::uint64_t budget) {
  const Eigen::Index n = L.dimension();
  const MinimaProfile prof = successive_minima(L, D, budget);
  const Matrix<BigInt>& W = prof.witnesses;

  // Witness coordinates in the lattice basis: W = C * B.
  const Matrix<Rational> Cq =
      linalg::multiply(convert<Rational>(W), linalg::inverse(convert<Rational>(L.basis())));
  Matrix<BigInt> C(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (boost::multiprecision::denominator(Cq(i, j)) != 1) {
        throw std::logic_error("witness outside the lattice");
      }
      C(i, j) = boost::multiprecision::numerator(Cq(i, j));
    }
  }
  const BigInt detC = linalg::determinant(C);
  const BigInt index = detC < 0 ? BigInt(-detC) : detC;

  // In witness coordinates L is (1/detC) * rowspan(adj C). A lower-triangular
  // basis of it, size-reduced, gives the Mahler basis.
  const Matrix<Rational> Cinv = linalg::inverse(convert<Rational>(C));
  Matrix<BigInt> A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      A(i, n - 1 - j) = boost::multiprecision::numerator(Cinv(i, j) * Rational(index));
    }
  }
  const Matrix<BigInt> H = linalg::hermite_normal_form(A);
  Matrix<BigInt> T(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index j = 0; j < n; ++j) T(r, j) = H(n - 1 - r, n - 1 - j);
  }

  MahlerBasis out;
  out.basis.resize(n, n);
  out.lambda = prof.lambda;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (T(j, j) == index) {
      for (Eigen::Index t = 0; t < n; ++t) T(j, t) = t == j ? index : BigInt(0);
    } else {
      for (Eigen::Index i = j; i-- > 0;) {
        const BigInt q = nearest(T(j, i), T(i, i));
        if (q != 0) linalg::row_axpy(T, j, i, q);
      }
    }
    for (Eigen::Index t = 0; t < n; ++t) {
      BigInt acc = 0;
      for (Eigen::Index i = 0; i <= j; ++i) acc += T(j, i) * W(i, t);
      if (acc % index != 0) throw std::logic_error("Mahler basis vector is not integral");
      out.basis(j, t) = acc / index;
    }
  }
  if (IntLattice(out.basis) != L) throw std::logic_error("Mahler basis does not span the lattice");

  out.norm_factor = std::max(Rational(1), Rational(n, 2));
  for (Eigen::Index j = 0; j < n; ++j) {
    out.norm_ratio.push_back(D.norm(out.basis.row(j)) / prof.lambda[j]);
  }

  const Matrix<Rational> inv = linalg::inverse(convert<Rational>(out.basis));
  out.coefficient_constant = 0;
  detail::enumerate(lll_reduce(L.basis(), sup_spec(D).scale()), sup_spec(D), Rational(1), budget,
                    [&](const RowVector<BigInt>& b) {
                      ++out.points_checked;
                      for (Eigen::Index j = 0; j < n; ++j) {
                        Rational beta = 0;
                        for (Eigen::Index t = 0; t < n; ++t) beta += Rational(b(t)) * inv(t, j);
                        if (beta < 0) beta = -beta;
                        const Rational v = beta * prof.lambda[j];
                        if (v > out.coefficient_constant) out.coefficient_constant = v;
                      }
                    });
  return out;
}

PointCount count_lattice_points(const IntLattice& L, const WeightedBox& D, std::uint64_t budget) {
  if (L.dimension() != D.dimension()) throw DomainError("lattice and box dimensions differ");
  const int n = L.dimension();
  const auto spec = sup_spec(D);
  PointCount out;
  out.count = 0;
  detail::enumerate(lll_reduce(L.basis(), spec.scale()), spec, Rational(1), budget,
                    [&](const RowVector<BigInt>&) { ++out.count; });
  const MinimaProfile prof = successive_minima(L, D, budget);
  out.minima_product = 1;
  out.henk_bound = BigInt(1) << (n - 1);
  for (const auto& l : prof.lambda) {
    out.minima_product *= std::max(Rational(1), Rational(1 / l));
    const Rational t = Rational(2 / l + 1);
    out.henk_bound *= boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
  }
  out.constant = (BigInt(1) << (n - 1)) * boost::multiprecision::pow(BigInt(3), n);
  out.ratio = Rational(out.count) / out.minima_product;
  if (out.count > out.henk_bound || out.ratio > Rational(out.constant)) {
    throw std::logic_error("lattice point count exceeds the minima bound");
  }
  return out;
}

MinkowskiRecord minkowski_check(const IntLattice& L, const WeightedBox& D, std::uint64_t budget) {
  const int n = L.dimension();
  MinkowskiRecord r;
  r.lambda = successive_minima(L, D, budget).lambda;
  Rational prod = 1;
  for (const auto& l : r.lambda) prod *= l;
  r.ratio = prod * D.volume() / Rational(L.covolume());
  r.upper = pow2(n);
  r.lower = r.upper / factorial(n);
  r.holds = r.lower <= r.ratio && r.ratio <= r.upper;
  return r;
}

TransferenceRecord transference_check(const IntLattice& L, const WeightedBox& D,
                                      std::uint64_t budget) {
  const std::size_t n = static_cast<std::size_t>(L.dimension());
  TransferenceRecord r;
  r.lambda = successive_minima(L, D, budget).lambda;
  r.dual_lambda = successive_minima(dual_lattice(L), DualBody::polar_of(D), budget).lambda;
  r.holds = true;
  r.max_product = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational p = r.lambda[j] * r.dual_lambda[n - 1 - j];
    r.products.push_back(p);
    if (p < 1) r.holds = false;
    if (p > r.max_product) r.max_product = p;
  }
  return r;
}

}  // namespace energia
