#include "energia/eqcount.hpp"

#include <algorithm>
#include <stdexcept>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"

namespace energia {
namespace {

constexpr std::int64_t kMaxLifts = 1'000'000;

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// g(d1 + m, m) as a polynomial in m.
IntPoly substitute_shift(const std::vector<std::vector<BigInt>>& g, std::int64_t d1) {
  const std::size_t n = g.size();
  IntPoly q(n == 0 ? 1 : n, BigInt(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; k + l < n; ++l) {
      if (g[k][l] == 0) continue;
      BigInt dpow = 1;  // d1^(k - i), built from i = k downwards
      for (std::size_t i = k + 1; i-- > 0;) {
        q[i + l] += g[k][l] * binomial(static_cast<int>(k), static_cast<int>(i)) * dpow;
        dpow *= d1;
      }
    }
  }
  trim(q);
  return q;
}

bool divides(const BigInt& c0, std::int64_t t) {
  if (c0 >= std::numeric_limits<std::int64_t>::min() && c0 <= std::numeric_limits<std::int64_t>::max()) {
    return c0.convert_to<std::int64_t>() % t == 0;
  }
  return c0 % t == 0;
}

std::vector<BigInt> power_differences(std::int64_t n, std::int64_t m, int d) {
  std::vector<BigInt> v(static_cast<std::size_t>(d));
  BigInt pn = 1, pm = 1;
  for (int i = 0; i < d; ++i) {
    pn *= n;
    pm *= m;
    v[i] = pn - pm;
  }
  return v;
}

}  // namespace

IntPoly to_int_poly(const std::vector<std::int64_t>& coeffs) {
  IntPoly f(coeffs.begin(), coeffs.end());
  trim(f);
  return f;
}

BigInt eval(const IntPoly& f, const BigInt& x) {
  BigInt acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

int degree(const IntPoly& f) {
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::int64_t> integer_roots(const IntPoly& poly, std::int64_t lo, std::int64_t hi) {
  IntPoly f = poly;
  trim(f);
  if (f.empty()) throw DomainError("zero polynomial has every integer as a root");
  std::vector<std::int64_t> roots;
  if (lo > hi) return roots;
  std::size_t shift = 0;
  while (f[shift] == 0) ++shift;
  if (shift > 0) {
    if (lo <= 0 && 0 <= hi) roots.push_back(0);
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(shift));
  }
  if (f.size() > 1) {
    const BigInt& lead = f.back();
    BigInt bound = 0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      const BigInt q = abs_big(f[i]) / abs_big(lead);
      if (q > bound) bound = q;
    }
    bound += 1;
    const BigInt reach = std::max(abs_big(BigInt(lo)), abs_big(BigInt(hi)));
    const std::int64_t top = to_int64(std::min(bound, reach));
    const BigInt& c0 = f.front();
    for (std::int64_t t = 1; t <= top; ++t) {
      if (!divides(c0, t)) continue;
      for (std::int64_t x : {t, -t}) {
        if (x >= lo && x <= hi && eval(f, BigInt(x)) == 0) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<std::vector<BigInt>> difference_quotient(const IntPoly& f) {
  const int d = degree(f);
  if (d < 1) return {};
  std::vector<std::vector<BigInt>> g(static_cast<std::size_t>(d),
                                     std::vector<BigInt>(static_cast<std::size_t>(d), BigInt(0)));
  // (x^j - y^j)/(x - y) = sum_{k+l=j-1} x^k y^l
  for (int j = 1; j <= d; ++j) {
    for (int k = 0; k < j; ++k) g[k][j - 1 - k] += f[j];
  }
  return g;
}

std::vector<SolutionPair> solve_difference_eq(const IntPoly& f, const BigInt& w, std::int64_t H) {
  if (degree(f) < 2) throw DomainError("polynomial degree must be at least 2");
  if (H < 1) throw DomainError("H must be positive");
  const auto g = difference_quotient(f);
  std::vector<SolutionPair> out;
  for (std::int64_t d1 = -(H - 1); d1 <= H - 1; ++d1) {
    if (d1 == 0) continue;
    BigInt d2 = 0;
    if (w != 0) {
      if (w % d1 != 0) continue;
      d2 = w / d1;
    }
    const std::int64_t lo = std::max<std::int64_t>(1, 1 - d1);
    const std::int64_t hi = std::min<std::int64_t>(H, H - d1);
    if (lo > hi) continue;
    IntPoly q = substitute_shift(g, d1);
    q[0] -= d2;
    for (std::int64_t m : integer_roots(q, lo, hi)) out.emplace_back(m + d1, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t count_eq(const IntPoly& f, const BigInt& w, std::int64_t H) {
  if (w == 0) throw DomainError("w must be nonzero");
  return static_cast<std::int64_t>(solve_difference_eq(f, w, H).size());
}

SymmetricCount count_symmetric_eq(const IntPoly& f, std::int64_t H) {
  if (degree(f) < 2) throw DomainError("polynomial degree must be at least 2");
  if (H < 1) throw DomainError("H must be positive");
  std::vector<BigInt> v;
  v.reserve(static_cast<std::size_t>(H));
  for (std::int64_t x = 1; x <= H; ++x) v.push_back(eval(f, BigInt(x)));

  auto squared_multiplicities = [](std::vector<BigInt>& xs, bool skip_zero) {
    std::sort(xs.begin(), xs.end());
    BigInt total = 0;
    for (std::size_t i = 0; i < xs.size();) {
      std::size_t j = i;
      while (j < xs.size() && xs[j] == xs[i]) ++j;
      if (!(skip_zero && xs[i] == 0)) total += BigInt(j - i) * BigInt(j - i);
      i = j;
    }
    return total;
  };

  std::vector<BigInt> sums, diffs;
  sums.reserve(v.size() * v.size());
  diffs.reserve(v.size() * v.size());
  BigInt r0 = 0;
  for (const auto& a : v) {
    for (const auto& b : v) {
      sums.push_back(a + b);
      diffs.push_back(a - b);
      if (a == b) ++r0;
    }
  }
  SymmetricCount out;
  out.count = squared_multiplicities(sums, false);
  out.zero_term = r0 * r0;
  out.nonzero_term = squared_multiplicities(diffs, true);
  if (out.count != out.zero_term + out.nonzero_term) {
    throw std::logic_error("sum and difference histograms disagree");
  }
  return out;
}

Rational choose_cd(int d) {
  if (d < 2) throw DomainError("c_d is defined for d >= 2");
  const unsigned s = static_cast<unsigned>(d * (d + 1) / 2);
  const BigInt scale = boost::multiprecision::pow(BigInt(100 * d), static_cast<unsigned>(d));
  const BigInt N = 1'000'000;
  auto ok = [&](const BigInt& p, const BigInt& q) {
    return boost::multiprecision::pow(p, s) * scale <= boost::multiprecision::pow(q, s);
  };
  // Stern-Brocot descent: lower = a/b satisfies the condition, upper = c/e does not.
  BigInt a = 0, b = 1, c = 1, e = 1;
  for (;;) {
    bool moved = false;
    // largest k with (a + kc)/(b + ke) admissible and b + ke <= N
    BigInt lo = 0, hi = (N - b) / e;
    while (lo < hi) {
      const BigInt mid = (lo + hi + 1) / 2;
      if (ok(a + mid * c, b + mid * e)) lo = mid; else hi = mid - 1;
    }
    if (lo > 0) {
      a += lo * c;
      b += lo * e;
      moved = true;
    }
    // largest k with (c + ka)/(e + kb) still inadmissible and e + kb <= N
    lo = 0;
    hi = (N - e) / b;
    while (lo < hi) {
      const BigInt mid = (lo + hi + 1) / 2;
      if (!ok(c + mid * a, e + mid * b)) lo = mid; else hi = mid - 1;
    }
    if (lo > 0) {
      c += lo * a;
      e += lo * b;
      moved = true;
    }
    if (!moved) break;
  }
  return Rational(a, b);
}

bool in_short_regime(int d, std::int64_t m, std::int64_t H) {
  const unsigned s = static_cast<unsigned>(d * (d + 1) / 2);
  const Rational c = choose_cd(d);
  const BigInt& p = boost::multiprecision::numerator(c);
  const BigInt& q = boost::multiprecision::denominator(c);
  return boost::multiprecision::pow(BigInt(H) * q, s) <= boost::multiprecision::pow(p, s) * m;
}

std::int64_t brute_count_congruence(const PolyMod& f, std::int64_t lambda, std::int64_t H) {
  const std::int64_t m = f.modulus();
  const std::int64_t lam = mod(lambda, m);
  std::vector<std::int64_t> v;
  v.reserve(static_cast<std::size_t>(H));
  for (std::int64_t x = 1; x <= H; ++x) v.push_back(f(x));
  std::int64_t count = 0;
  for (std::int64_t a : v) {
    for (std::int64_t b : v) {
      if (mod(a - b, m) == lam) ++count;
    }
  }
  return count;
}

namespace {

EqCountResult run_pipeline(const PolyMod& f, std::int64_t lam, std::int64_t H) {
  const std::int64_t m = f.modulus();
  const int d = f.degree();
  const std::int64_t inv = *invmod(f.leading(), m);

  PipelineCertificate cert;
  for (int j = 1; j <= d; ++j) cert.normalized.push_back(mulmod(f.coeffs()[j], inv, m));
  cert.lambda_normalized = mulmod(lam, inv, m);

  const IntLattice L = congruence_lattice(cert.normalized, m);
  std::vector<Rational> widths;
  BigInt Hj = 1;
  for (int j = 1; j <= d; ++j) {
    Hj *= H;
    widths.emplace_back(Rational(m) / (Rational(100 * d) * Rational(Hj)));
  }
  const WeightedBox box(widths);
  const MinimaProfile prof = successive_minima(L, box);
  Eigen::Index pick = -1;
  for (Eigen::Index i = 0; i < prof.witnesses.rows(); ++i) {
    if (prof.witnesses(i, d - 1) % m != 0) {
      pick = i;
      break;
    }
  }
  if (pick < 0) throw std::logic_error("no lattice witness with b_d nonzero mod m");
  for (int j = 0; j < d; ++j) cert.b.push_back(prof.witnesses(pick, j));
  cert.b_norm = prof.lambda[static_cast<std::size_t>(pick)];
  BigInt ell = cert.b.back() % m;
  if (ell < 0) ell += m;
  cert.ell = ell.convert_to<std::int64_t>();
  for (int j = 0; j < d; ++j) {
    if ((BigInt(cert.normalized[j]) * ell - cert.b[j]) % m != 0) {
      throw std::logic_error("short vector is not of the form a_j ell mod m");
    }
  }

  // Every solution has sum b_j (n^j - m^j) = w for a lift w of ell * lambda'.
  const std::int64_t r = mulmod(cert.ell, cert.lambda_normalized, m);
  BigInt reach = 0;
  Hj = 1;
  for (int j = 0; j < d; ++j) {
    Hj *= H;
    reach += abs_big(cert.b[j]) * (Hj - 1);
  }
  const BigInt k_lo = linalg::floor_div<BigInt>(-reach - r + m - 1, BigInt(m));
  const BigInt k_hi = linalg::floor_div<BigInt>(reach - r, BigInt(m));
  if (k_hi - k_lo + 1 > kMaxLifts) throw BudgetExceeded("too many lifts of the congruence");

  IntPoly gb(static_cast<std::size_t>(d + 1), BigInt(0));
  for (int j = 0; j < d; ++j) gb[j + 1] = cert.b[j];

  auto satisfies = [&](const SolutionPair& s) { return mod(f(s.first) - f(s.second), m) == lam; };

  EqCountResult out;
  out.method = "pipeline";
  for (BigInt k = k_lo; k <= k_hi; ++k) {
    LiftCertificate lc;
    lc.w = BigInt(r) + k * m;
    std::vector<SolutionPair> fiber;
    for (const auto& s : solve_difference_eq(gb, lc.w, H)) {
      if (mod(f(s.first) - f(s.second), m) != 0) fiber.push_back(s);
    }
    lc.fiber_size = fiber.size();
    if (fiber.empty()) {
      lc.final_equation = "empty";
      cert.lifts.push_back(std::move(lc));
      continue;
    }
    lc.anchor = fiber.front();
    const auto delta0 = power_differences(lc.anchor->first, lc.anchor->second, d);

    Matrix<BigInt> chosen(0, d);
    for (const auto& s : fiber) {
      const auto delta = power_differences(s.first, s.second, d);
      Matrix<BigInt> trial(chosen.rows() + 1, d);
      trial.topRows(chosen.rows()) = chosen;
      for (int i = 0; i < d; ++i) trial(chosen.rows(), i) = delta[i] - delta0[i];
      if (linalg::rank(trial) > chosen.rows()) chosen = trial;
    }
    lc.d0 = static_cast<int>(chosen.rows());

    std::vector<SolutionPair> candidates;
    if (lc.d0 == 0) {
      lc.final_equation = "fiber";
      candidates = fiber;
    } else {
      const SmallSolutions bv = bv_small_solutions(chosen);
      Eigen::Index j0 = -1;
      for (Eigen::Index j = 0; j < bv.vectors.rows() && j0 < 0; ++j) {
        BigInt ws = 0;
        for (int i = 0; i < d; ++i) ws += bv.vectors(j, i) * delta0[i];
        if (ws != 0) {
          j0 = j;
          lc.w_star = ws;
        }
      }
      if (j0 < 0) throw std::logic_error("no small solution pairs nontrivially with the anchor");
      for (int i = 0; i < d; ++i) lc.w_j0.push_back(bv.vectors(j0, i));
      const bool linear = std::all_of(lc.w_j0.begin() + 1, lc.w_j0.end(),
                                      [](const BigInt& x) { return x == 0; });
      if (linear) {
        lc.final_equation = "linear-shift";
        if (lc.w_star % lc.w_j0[0] != 0) throw std::logic_error("shift is not integral");
        const BigInt shift = lc.w_star / lc.w_j0[0];
        lc.w_star2 = shift;
        // sum_j b_j ((x + shift)^j - x^j) - w as a polynomial in x
        IntPoly p(static_cast<std::size_t>(d), BigInt(0));
        for (int j = 1; j <= d; ++j) {
          BigInt spow = shift;
          for (int i = j - 1; i >= 0; --i) {
            p[i] += cert.b[j - 1] * binomial(j, i) * spow;
            spow *= shift;
          }
        }
        p[0] -= lc.w;
        const std::int64_t s = to_int64(shift);
        const std::int64_t lo = std::max<std::int64_t>(1, 1 - s);
        const std::int64_t hi = std::min<std::int64_t>(H, H - s);
        if (lo <= hi) {
          for (std::int64_t x : integer_roots(p, lo, hi)) candidates.emplace_back(x + s, x);
        }
      } else {
        lc.final_equation = "polynomial";
        IntPoly g(static_cast<std::size_t>(d + 1), BigInt(0));
        for (int i = 0; i < d; ++i) g[i + 1] = lc.w_j0[i];
        candidates = solve_difference_eq(g, lc.w_star, H);
      }
    }
    for (const auto& s : candidates) {
      if (satisfies(s)) ++lc.count;
    }
    out.count += lc.count;
    cert.lifts.push_back(std::move(lc));
  }
  out.certificate = std::move(cert);
  return out;
}

}  // namespace

CongruenceCount count_congruence(const PolyMod& f, std::int64_t lambda, std::int64_t H,
                                 bool force_pipeline) {
  if (f.degree() < 2) throw DomainError("polynomial degree must be at least 2");
  if (!f.has_unit_leading()) throw DomainError("leading coefficient must be coprime to m");
  if (H < 1) throw DomainError("H must be positive");
  const std::int64_t lam = mod(lambda, f.modulus());
  if (lam == 0) throw DomainError("lambda must be nonzero mod m");

  CongruenceCount out;
  out.brute = brute_count_congruence(f, lam, H);
  out.in_regime = in_short_regime(f.degree(), f.modulus(), H);
  if (!out.in_regime && !force_pipeline) {
    out.declined = "H exceeds c_d m^{2/(d(d+1))}";
    return out;
  }
  out.pipeline = run_pipeline(f, lam, H);
  if (out.pipeline->count != out.brute) {
    throw std::logic_error("pipeline count " + std::to_string(out.pipeline->count) +
                           " differs from brute force " + std::to_string(out.brute));
  }
  return out;
}

}  // namespace energia
