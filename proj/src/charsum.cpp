#include "energia/charsum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace energia {
namespace {

// Neumaier-compensated complex accumulator.
class ComplexSum {
 public:
  void add(const Complex& z) {
    add_part(re_, re_c_, z.real());
    add_part(im_, im_c_, z.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& s, double& c, double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

constexpr std::size_t kBlocks = 8;

}  // namespace

std::int64_t primitive_root(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("modulus must be an odd prime");
  const Factorization fac = factorize(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& pp : fac.factors) {
      if (powmod(g, static_cast<std::uint64_t>((p - 1) / pp.prime), p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

CharTable::CharTable(std::int64_t p, std::int64_t k) : p_(p), k_(k), g_(primitive_root(p)) {
  if (k < 1 || k > p - 2) throw DomainError("character index must lie in [1, p - 2]");
  dlog_.assign(static_cast<std::size_t>(p), -1);
  std::int64_t x = 1;
  for (std::int64_t a = 0; a < p - 1; ++a) {
    dlog_[static_cast<std::size_t>(x)] = a;
    x = mulmod(x, g_, p);
  }
  roots_.resize(static_cast<std::size_t>(p - 1));
  for (std::int64_t e = 0; e < p - 1; ++e) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(p - 1);
    roots_[static_cast<std::size_t>(e)] = {std::cos(theta), std::sin(theta)};
  }
}

CharTable CharTable::legendre(std::int64_t p) { return CharTable(p, (p - 1) / 2); }

std::int64_t CharTable::order() const { return (p_ - 1) / std::gcd(k_, p_ - 1); }

std::int64_t CharTable::dlog(std::int64_t x) const {
  const std::int64_t r = mod(x, p_);
  if (r == 0) throw DomainError("discrete log of zero");
  return dlog_[static_cast<std::size_t>(r)];
}

std::optional<std::int64_t> CharTable::exponent(std::int64_t x) const {
  const std::int64_t r = mod(x, p_);
  if (r == 0) return std::nullopt;
  return mulmod(k_, dlog_[static_cast<std::size_t>(r)], p_ - 1);
}

Complex CharTable::operator()(std::int64_t x) const {
  const auto e = exponent(x);
  return e ? root(*e) : Complex(0, 0);
}

Complex char_eval(const CharTable& chi, std::int64_t x) { return chi(x); }

Complex complete_sum_poly(const CharTable& chi, const PolyMod& f) {
  if (f.modulus() != chi.p()) throw DomainError("polynomial modulus differs from the character's");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(chi.p() - 1), 0);
  for (std::int64_t x = 0; x < chi.p(); ++x) {
    if (const auto e = chi.exponent(f(x))) ++counts[static_cast<std::size_t>(*e)];
  }
  ComplexSum acc;
  for (std::size_t e = 0; e < counts.size(); ++e) {
    if (counts[e] != 0) acc.add(static_cast<double>(counts[e]) * chi.root(static_cast<std::int64_t>(e)));
  }
  return acc.value();
}

bool is_character_power(const CharTable& chi, const PolyMod& f) {
  const std::int64_t p = chi.p();
  if (f.modulus() != p) throw DomainError("polynomial modulus differs from the character's");
  const std::int64_t o = chi.order();
  const int d = f.degree();
  if (d % o != 0) return false;
  const int e = static_cast<int>(d / o);
  // Reversed monic f is 1 + a_1 t + ...; take its o-th root as a power series.
  const std::int64_t inv_lead = *invmod(f.leading(), p);
  std::vector<std::int64_t> a(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d; ++i) a[i] = mulmod(f.coeffs()[d - i], inv_lead, p);
  const std::int64_t alpha = *invmod(mod(o, p), p);
  std::vector<std::int64_t> b(static_cast<std::size_t>(e + 1), 0);
  b[0] = 1;
  for (int n = 1; n <= e; ++n) {
    std::int64_t acc = 0;
    for (int k = 1; k <= n && k <= d; ++k) {
      const std::int64_t coef = mod(mulmod(alpha, k, p) - (n - k), p);
      acc = mod(acc + mulmod(mulmod(a[k], b[n - k], p), coef, p), p);
    }
    b[n] = mulmod(acc, *invmod(n, p), p);
  }
  // Compare b^o against the reversed monic f.
  std::vector<std::int64_t> pw{1};
  for (std::int64_t t = 0; t < o; ++t) {
    std::vector<std::int64_t> next(pw.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < pw.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        next[i + j] = mod(next[i + j] + mulmod(pw[i], b[j], p), p);
      }
    }
    pw = std::move(next);
  }
  for (int i = 0; i <= d; ++i) {
    if (pw[static_cast<std::size_t>(i)] != a[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

Complex bilinear_W(const CharTable& chi, const BilinearInstance& inst) {
  if (inst.alpha.size() != inst.S.size()) throw DomainError("need one alpha per element of S");
  if (inst.H < 0 || inst.beta.size() != static_cast<std::size_t>(inst.H)) {
    throw DomainError("need one beta per element of I");
  }
  for (const auto& a : inst.alpha) {
    if (std::abs(a) > 1 + 1e-12) throw DomainError("|alpha_s| must be at most 1");
  }
  for (const auto& b : inst.beta) {
    if (std::abs(b) > 1 + 1e-12) throw DomainError("|beta_x| must be at most 1");
  }
  const std::size_t n = inst.S.size();
  std::vector<Complex> partial(kBlocks);
  for (std::size_t blk = 0; blk < kBlocks; ++blk) {
    ComplexSum acc;
    for (std::size_t i = blk * n / kBlocks; i < (blk + 1) * n / kBlocks; ++i) {
      if (inst.alpha[i] == Complex(0, 0)) continue;
      ComplexSum inner;
      for (std::int64_t x = 1; x <= inst.H; ++x) {
        const Complex& bx = inst.beta[static_cast<std::size_t>(x - 1)];
        if (bx == Complex(0, 0)) continue;
        inner.add(bx * chi(inst.S[i] + x));
      }
      acc.add(inst.alpha[i] * inner.value());
    }
    partial[blk] = acc.value();
  }
  ComplexSum total;
  for (const auto& z : partial) total.add(z);
  return total.value();
}

BilinearBound bilinear_energy_bound(double S, double H, double p, double E, int r) {
  if (r < 1) throw DomainError("r must be a positive integer");
  if (S <= 0 || H <= 0 || p <= 0 || E <= 0) throw DomainError("S, H, p, E must be positive");
  BilinearBound b;
  const double rr = r;
  const double t1 = E * std::pow(p, (rr + 1) / rr) / (std::pow(S, 4) * H * H);
  const double t2 = std::pow(p, (rr + 2) / rr) / (S * std::pow(H, 2.5));
  const double t3 = std::pow(p, (rr + 2) / rr) / (S * S * H * H);
  b.value = S * H * std::pow(t1 + t2 + t3, 1 / (4 * rr)) + std::sqrt(S) * H;
  b.size_ok = S * S * H <= p * p;
  b.short_ok = H * H < p;
  b.range_ok = H >= std::pow(p, 1 / rr);
  b.conditions_hold = b.size_ok && b.short_ok && b.range_ok;
  b.note = "p^{o(1)} factor set to 1";
  return b;
}

RegionReport prime_sum_region(const RegimeParams& params) {
  if (params.zeta <= 0 || params.xi <= 0) throw DomainError("zeta and xi must be positive");
  if (params.d < 2) throw DomainError("degree must be at least 2");
  const Rational half(1, 2);
  const Rational& z = params.zeta;
  const Rational& x = params.xi;
  const Rational t_sum = half - z;
  const Rational t_deg = half - Rational(2, params.d * (params.d + 1));
  const Rational t_lin = Rational(2, 5) * (1 - z);

  RegionReport rep;
  rep.xi_threshold = std::max({t_sum, t_deg, t_lin});
  rep.xi_cap = std::min(half, Rational(2 - 2 * z));

  auto strict = [&](std::string name, const Rational& lhs, const Rational& rhs, const Rational& t) {
    const bool sat = lhs > rhs;
    rep.constraints.push_back({std::move(name), lhs, rhs, Rational(lhs - rhs), sat,
                               !sat || t == rep.xi_threshold});
  };
  strict("zeta + xi > 1/2", Rational(z + x), half, t_sum);
  strict("xi > 1/2 - 2/(d(d+1))", x, t_deg, t_deg);
  strict("zeta + 5 xi / 2 > 1", Rational(z + Rational(5, 2) * x), Rational(1), t_lin);
  const bool cap_ok = x <= rep.xi_cap;
  rep.constraints.push_back({"xi <= min(1/2, 2 - 2 zeta)", x, rep.xi_cap, Rational(rep.xi_cap - x),
                             cap_ok, !cap_ok || x == rep.xi_cap});
  rep.admissible = true;
  for (const auto& c : rep.constraints) rep.admissible = rep.admissible && c.satisfied;
  return rep;
}

PrimeBilinearSums prime_bilinear_sum(const CharTable& chi, const PolyMod& f, std::int64_t Q,
                                     std::int64_t R) {
  const std::int64_t p = chi.p();
  if (f.modulus() != p) throw DomainError("polynomial modulus differs from the character's");
  if (Q < 1 || R < 1 || Q >= p || R >= p) throw DomainError("need 1 <= Q, R < p");
  const auto qs = primes_up_to(Q);
  const auto rs = primes_up_to(R);
  PrimeBilinearSums out;
  out.primes_q = static_cast<std::int64_t>(qs.size());
  out.primes_r = static_cast<std::int64_t>(rs.size());
  std::vector<std::int64_t> fq;
  fq.reserve(qs.size());
  for (std::int64_t q : qs) fq.push_back(f(q));

  // grid[i][j] = chi(f(q_i) + r_j)
  std::vector<ComplexSum> col(rs.size());
  ComplexSum row_total;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    ComplexSum row;
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const Complex v = chi(fq[i] + rs[j]);
      row.add(v);
      col[j].add(v);
    }
    row_total.add(Complex(std::abs(row.value()), 0));
  }
  ComplexSum col_total;
  for (const auto& c : col) col_total.add(Complex(std::abs(c.value()), 0));
  out.sum_over_q = row_total.value().real();
  out.sum_over_r = col_total.value().real();
  const double qr = static_cast<double>(Q) * static_cast<double>(R);
  out.ratio_q = out.sum_over_q / qr;
  out.ratio_r = out.sum_over_r / qr;
  const double lp = std::log(static_cast<double>(p));
  out.saving_q = std::log(qr / out.sum_over_q) / lp;
  out.saving_r = std::log(qr / out.sum_over_r) / lp;
  return out;
}

}  // namespace energia
