#include "energia/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "energia/core_ring.hpp"
#include "energia/linalg.hpp"
#include "enumeration.hpp"

namespace energia {
namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

double to_dbl(const BigInt& x) { return x.convert_to<double>(); }

std::vector<std::vector<double>> scaled_rows(const Matrix<BigInt>& B,
                                             const std::vector<double>& s) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(B.rows()),
                                        std::vector<double>(static_cast<std::size_t>(B.cols())));
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.cols(); ++j) rows[i][j] = to_dbl(B(i, j)) * s[j];
  }
  return rows;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

struct Gso {
  std::vector<std::vector<double>> mu;
  std::vector<double> norm2;
};

Gso gram_schmidt(const std::vector<std::vector<double>>& b) {
  const std::size_t k = b.size();
  Gso g{std::vector<std::vector<double>>(k, std::vector<double>(k, 0.0)),
        std::vector<double>(k, 0.0)};
  std::vector<std::vector<double>> star = b;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      g.mu[i][j] = dot(b[i], star[j]) / g.norm2[j];
      for (std::size_t t = 0; t < star[i].size(); ++t) star[i][t] -= g.mu[i][j] * star[j][t];
    }
    g.norm2[i] = dot(star[i], star[i]);
  }
  return g;
}

BigInt round_to_big(double x) {
  if (!std::isfinite(x) || std::fabs(x) > 9e18) throw OverflowError("LLL coefficient out of range");
  return BigInt(std::llround(x));
}

bool sign_positive(const RowVector<BigInt>& x) {
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    if (x(i) != 0) return x(i) > 0;
  }
  return false;
}

BigInt euclid2(const RowVector<BigInt>& x) {
  BigInt acc = 0;
  for (Eigen::Index i = 0; i < x.cols(); ++i) acc += x(i) * x(i);
  return acc;
}

// Reduced row echelon form over Q, for greedy independence tests.
class Echelon {
 public:
  explicit Echelon(Eigen::Index n) : n_(n) {}

  std::vector<Rational> reduce(const RowVector<BigInt>& x) const {
    std::vector<Rational> v(static_cast<std::size_t>(n_));
    for (Eigen::Index i = 0; i < n_; ++i) v[i] = Rational(x(i));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f == 0) continue;
      for (Eigen::Index i = 0; i < n_; ++i) v[i] -= f * rows_[r][i];
    }
    return v;
  }

  bool in_span(const RowVector<BigInt>& x) const {
    const auto v = reduce(x);
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
  }

  bool try_add(const RowVector<BigInt>& x) {
    auto v = reduce(x);
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    const Rational lead = v[p];
    for (auto& e : v) e /= lead;
    for (auto& row : rows_) {
      const Rational f = row[p];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) row[i] -= f * v[i];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  Eigen::Index n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

struct Candidate {
  Rational norm;
  BigInt e2;
  RowVector<BigInt> x;
};

bool lex_greater(const RowVector<BigInt>& a, const RowVector<BigInt>& b) {
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

std::vector<Rational> positive(std::vector<Rational> c, const char* what) {
  if (c.empty()) throw DomainError(std::string(what) + " needs at least one coordinate");
  for (const auto& v : c) {
    if (v <= 0) throw DomainError(std::string(what) + " weights must be positive");
  }
  return c;
}

}  // namespace

namespace detail {

Rational NormSpec::exact(const RowVector<BigInt>& x) const {
  Rational acc = 0;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    const Rational a(abs_big(x(i)));
    if (kind == Kind::kSup) {
      const Rational r = a / c[i];
      if (r > acc) acc = r;
    } else {
      acc += a * c[i];
    }
  }
  return acc;
}

double NormSpec::approx(const std::vector<double>& x) const {
  double acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (kind == Kind::kSup) {
      acc = std::max(acc, std::fabs(x[i]));
    } else {
      acc += std::fabs(x[i]);
    }
  }
  return acc;
}

std::vector<double> NormSpec::scale() const {
  std::vector<double> s(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double ci = to_double(c[i]);
    s[i] = kind == Kind::kSup ? 1.0 / ci : ci;
  }
  return s;
}

double NormSpec::l2_factor() const {
  return kind == Kind::kSup ? std::sqrt(static_cast<double>(c.size())) : 1.0;
}

void enumerate(const Matrix<BigInt>& basis, const NormSpec& spec, const Rational& radius,
               std::uint64_t budget, const std::function<void(const RowVector<BigInt>&)>& visit) {
  const auto k = static_cast<std::size_t>(basis.rows());
  const Eigen::Index n = basis.cols();
  if (k == 0) {
    visit(RowVector<BigInt>::Zero(n));
    return;
  }
  const auto s = spec.scale();
  const auto rows = scaled_rows(basis, s);
  const Gso g = gram_schmidt(rows);
  const double rd = to_double(radius);
  const double l2 = rd * spec.l2_factor();
  const double R2 = l2 * l2 * (1 + 1e-6) + 1e-12;
  const double approx_cap = rd * (1 + 1e-6) + 1e-12;

  std::vector<std::int64_t> u(k, 0);
  std::vector<double> xd(static_cast<std::size_t>(n));
  std::uint64_t nodes = 0;

  auto leaf = [&]() {
    std::fill(xd.begin(), xd.end(), 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      if (u[j] == 0) continue;
      for (Eigen::Index t = 0; t < n; ++t) xd[t] += static_cast<double>(u[j]) * rows[j][t];
    }
    if (spec.approx(xd) > approx_cap) return;
    RowVector<BigInt> x = RowVector<BigInt>::Zero(n);
    for (std::size_t j = 0; j < k; ++j) {
      if (u[j] == 0) continue;
      const BigInt uj(u[j]);
      for (Eigen::Index t = 0; t < n; ++t) x(t) += uj * basis(static_cast<Eigen::Index>(j), t);
    }
    if (spec.exact(x) <= radius) visit(x);
  };

  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double partial) {
    double c = 0;
    for (std::size_t j = i + 1; j < k; ++j) c -= static_cast<double>(u[j]) * g.mu[j][i];
    const double rem = R2 - partial;
    if (rem < 0) return;
    const double w = std::sqrt(rem / g.norm2[i]);
    const double lo_d = std::ceil(c - w), hi_d = std::floor(c + w);
    if (std::fabs(lo_d) > 9e18 || std::fabs(hi_d) > 9e18) throw OverflowError("enumeration range");
    for (auto v = static_cast<std::int64_t>(lo_d); v <= static_cast<std::int64_t>(hi_d); ++v) {
      if (++nodes > budget) throw BudgetExceeded("lattice enumeration exceeded its node budget");
      u[i] = v;
      const double y = static_cast<double>(v) - c;
      const double p = partial + y * y * g.norm2[i];
      if (p > R2) continue;
      if (i == 0) {
        leaf();
      } else {
        rec(i - 1, p);
      }
    }
    u[i] = 0;
  };
  rec(k - 1, 0.0);
}

MinimaProfile minima(const Matrix<BigInt>& basis, const NormSpec& spec, std::uint64_t budget) {
  const Eigen::Index k = basis.rows(), n = basis.cols();
  if (n > kMaxLatticeDimension) {
    throw DomainError("successive minima supported up to dimension " +
                      std::to_string(kMaxLatticeDimension));
  }
  if (static_cast<Eigen::Index>(spec.c.size()) != n) throw DomainError("body dimension mismatch");
  const Matrix<BigInt> B = lll_reduce(basis, spec.scale());

  Rational R = -1;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Rational r = spec.exact(B.row(i));
    if (R < 0 || r < R) R = r;
  }

  for (;;) {
    std::vector<Candidate> cands;
    enumerate(B, spec, R, budget, [&](const RowVector<BigInt>& x) {
      if (sign_positive(x)) cands.push_back({spec.exact(x), euclid2(x), x});
    });
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.norm != b.norm) return a.norm < b.norm;
      if (a.e2 != b.e2) return a.e2 < b.e2;
      return lex_greater(a.x, b.x);
    });
    Echelon ech(n);
    MinimaProfile out;
    out.witnesses.resize(k, n);
    for (const auto& c : cands) {
      if (static_cast<Eigen::Index>(ech.rank()) == k) break;
      if (ech.try_add(c.x)) {
        out.witnesses.row(static_cast<Eigen::Index>(out.lambda.size())) = c.x;
        out.lambda.push_back(c.norm);
      }
    }
    if (static_cast<Eigen::Index>(ech.rank()) == k) return out;

    Rational next = -1;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (ech.in_span(B.row(i))) continue;
      const Rational r = spec.exact(B.row(i));
      if (next < 0 || r < next) next = r;
    }
    if (next <= R) throw std::logic_error("successive minima search failed to progress");
    R = next;
  }
}

}  // namespace detail

Matrix<BigInt> lll_reduce(const Matrix<BigInt>& basis, const std::vector<double>& scale) {
  Matrix<BigInt> B = basis;
  const auto k = static_cast<std::size_t>(B.rows());
  if (k < 2) return B;
  auto rows = scaled_rows(B, scale);
  std::size_t kk = 1;
  std::size_t iterations = 0;
  while (kk < k && ++iterations < 100000) {
    Gso g = gram_schmidt(rows);
    for (std::size_t j = kk; j-- > 0;) {
      const BigInt q = round_to_big(g.mu[kk][j]);
      if (q == 0) continue;
      const double qd = q.convert_to<double>();
      for (Eigen::Index t = 0; t < B.cols(); ++t) {
        B(static_cast<Eigen::Index>(kk), t) -= q * B(static_cast<Eigen::Index>(j), t);
      }
      for (std::size_t i = 0; i < j; ++i) g.mu[kk][i] -= qd * g.mu[j][i];
      g.mu[kk][j] -= qd;
    }
    for (Eigen::Index t = 0; t < B.cols(); ++t) {
      rows[kk][t] = to_dbl(B(static_cast<Eigen::Index>(kk), t)) * scale[t];
    }
    const double m = g.mu[kk][kk - 1];
    if (g.norm2[kk] < (0.99 - m * m) * g.norm2[kk - 1]) {
      linalg::swap_rows(B, static_cast<Eigen::Index>(kk), static_cast<Eigen::Index>(kk - 1));
      std::swap(rows[kk], rows[kk - 1]);
      kk = std::max<std::size_t>(kk - 1, 1);
    } else {
      ++kk;
    }
  }
  return B;
}

IntLattice::IntLattice(const Matrix<BigInt>& generators) {
  basis_ = linalg::hermite_normal_form(generators);
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols()) {
    throw DomainError("generators do not span a full-rank lattice");
  }
  covolume_ = 1;
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) covolume_ *= basis_(i, i);
}

IntLattice IntLattice::integer_lattice(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  Matrix<BigInt> I(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) I(i, j) = i == j ? 1 : 0;
  }
  return IntLattice(I);
}

bool IntLattice::contains(const RowVector<BigInt>& v) const {
  if (v.cols() != basis_.cols()) return false;
  RowVector<BigInt> x = v;
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    if (x(i) % basis_(i, i) != 0) return false;
    const BigInt q = x(i) / basis_(i, i);
    for (Eigen::Index j = i; j < x.cols(); ++j) x(j) -= q * basis_(i, j);
  }
  return true;
}

bool IntLattice::operator==(const IntLattice& other) const {
  if (basis_.rows() != other.basis_.rows() || basis_.cols() != other.basis_.cols()) return false;
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
      if (basis_(i, j) != other.basis_(i, j)) return false;
    }
  }
  return true;
}

WeightedBox::WeightedBox(std::vector<Rational> half_widths)
    : c_(positive(std::move(half_widths), "box")) {}

WeightedBox WeightedBox::unit(int n) {
  return WeightedBox(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

Rational WeightedBox::norm(const RowVector<BigInt>& x) const {
  return detail::NormSpec{detail::NormSpec::Kind::kSup, c_}.exact(x);
}

Rational WeightedBox::volume() const {
  Rational v = 1;
  for (const auto& c : c_) v *= 2 * c;
  return v;
}

bool WeightedBox::contains(const std::vector<Rational>& x) const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if ((x[i] < 0 ? Rational(-x[i]) : x[i]) > c_[i]) return false;
  }
  return true;
}

DualBody::DualBody(std::vector<Rational> weights)
    : c_(positive(std::move(weights), "dual body")) {}

Rational DualBody::norm(const RowVector<BigInt>& y) const {
  return detail::NormSpec{detail::NormSpec::Kind::kL1, c_}.exact(y);
}

Rational DualBody::volume() const {
  Rational v = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) v *= Rational(2) / (Rational(static_cast<int>(i + 1)) * c_[i]);
  return v;
}

bool DualBody::contains(const std::vector<Rational>& y) const {
  Rational acc = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) acc += c_[i] * (y[i] < 0 ? Rational(-y[i]) : y[i]);
  return acc <= 1;
}

IntLattice congruence_lattice(const std::vector<std::int64_t>& coeffs, std::int64_t m) {
  if (coeffs.empty()) throw DomainError("congruence lattice needs d >= 1");
  if (m < 2) throw DomainError("modulus must be at least 2");
  const auto d = static_cast<Eigen::Index>(coeffs.size());
  Matrix<BigInt> G = Matrix<BigInt>::Zero(d + 1, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    G(0, j) = mod(coeffs[j], m);
    G(j + 1, j) = m;
  }
  return IntLattice(G);
}

MinimaProfile successive_minima(const IntLattice& L, const WeightedBox& D, std::uint64_t budget) {
  if (L.dimension() != D.dimension()) throw DomainError("lattice and box dimensions differ");
  return detail::minima(L.basis(), {detail::NormSpec::Kind::kSup, D.half_widths()}, budget);
}

MinimaProfile successive_minima(const ScaledLattice& L, const DualBody& D, std::uint64_t budget) {
  if (L.numerator.dimension() != D.dimension()) throw DomainError("lattice and body dimensions differ");
  MinimaProfile p =
      detail::minima(L.numerator.basis(), {detail::NormSpec::Kind::kL1, D.weights()}, budget);
  for (auto& l : p.lambda) l /= Rational(L.denominator);
  p.denominator = L.denominator;
  return p;
}

MinimaProfile sublattice_minima(const Matrix<BigInt>& basis, const WeightedBox& D,
                                std::uint64_t budget) {
  if (basis.cols() != D.dimension()) throw DomainError("basis and box dimensions differ");
  if (linalg::rank(basis) != basis.rows()) throw DomainError("basis rows are dependent");
  return detail::minima(basis, {detail::NormSpec::Kind::kSup, D.half_widths()}, budget);
}

ScaledLattice dual_lattice(const IntLattice& L) { return dual_lattice(ScaledLattice{L, 1}); }

ScaledLattice dual_lattice(const ScaledLattice& L) {
  const Eigen::Index n = L.numerator.dimension();
  const Matrix<Rational> inv =
      linalg::inverse(linalg::convert<Rational>(L.numerator.basis()));
  Matrix<Rational> dual(n, n);
  BigInt den = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dual(i, j) = inv(j, i) * Rational(L.denominator);
      den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(dual(i, j)));
    }
  }
  Matrix<BigInt> num(n, n);
  BigInt g = den;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Rational scaled = dual(i, j) * Rational(den);
      num(i, j) = boost::multiprecision::numerator(scaled);
      g = boost::multiprecision::gcd(g, num(i, j));
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) num(i, j) /= g;
  }
  return ScaledLattice{IntLattice(num), den / g};
}

}  // namespace energia
