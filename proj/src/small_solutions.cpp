#include <functional>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"

namespace energia {
namespace {

BigInt row_sup(const Matrix<BigInt>& V, Eigen::Index j) {
  BigInt m = 0;
  for (Eigen::Index i = 0; i < V.cols(); ++i) {
    const BigInt a = V(j, i) < 0 ? BigInt(-V(j, i)) : V(j, i);
    if (a > m) m = a;
  }
  return m;
}

BigInt sup_product(const Matrix<BigInt>& V) {
  BigInt p = 1;
  for (Eigen::Index j = 0; j < V.rows(); ++j) p *= row_sup(V, j);
  return p;
}

}  // namespace

BigInt gcd_maximal_minors(const Matrix<BigInt>& M) {
  const Eigen::Index r = M.rows(), d = M.cols();
  BigInt g = 0;
  std::vector<Eigen::Index> cols;
  std::function<void(Eigen::Index)> pick = [&](Eigen::Index start) {
    if (static_cast<Eigen::Index>(cols.size()) == r) {
      Matrix<BigInt> S(r, r);
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) S(i, j) = M(i, cols[j]);
      }
      g = boost::multiprecision::gcd(g, linalg::determinant(S));
      return;
    }
    for (Eigen::Index c = start; c < d; ++c) {
      cols.push_back(c);
      pick(c + 1);
      cols.pop_back();
    }
  };
  pick(0);
  return g < 0 ? BigInt(-g) : g;
}

SmallSolutions bv_small_solutions(const Matrix<BigInt>& M, std::uint64_t budget) {
  const Eigen::Index d0 = M.rows(), d = M.cols();
  if (d0 < 1 || d0 >= d) throw DomainError("need 1 <= d0 < d equations");
  if (linalg::rank(M) != d0) throw DomainError("equations are not linearly independent");

  SmallSolutions out;
  out.gcd_minors = gcd_maximal_minors(M);
  out.gram_determinant = linalg::determinant(linalg::multiply(M, linalg::transpose(M)));

  const Matrix<BigInt> K = linalg::integer_kernel(M);
  const std::vector<double> unit(static_cast<std::size_t>(d), 1.0);
  out.vectors = lll_reduce(K, unit);
  out.product = sup_product(out.vectors);
  const BigInt D2 = out.gcd_minors * out.gcd_minors;
  out.from_minima = false;
  if (out.product * out.product * D2 > out.gram_determinant) {
    out.vectors = sublattice_minima(K, WeightedBox::unit(static_cast<int>(d)), budget).witnesses;
    out.product = sup_product(out.vectors);
    out.from_minima = true;
  }
  out.meets_bound = out.product * out.product * D2 <= out.gram_determinant;
  const auto k = static_cast<unsigned>(d - d0);
  out.meets_stated_bound =
      boost::multiprecision::pow(out.product, 2 * k) * D2 <= out.gram_determinant;
  return out;
}

}  // namespace energia
