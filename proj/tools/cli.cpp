#include "cli.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "energia/bounds.hpp"
#include "energia/charsum.hpp"
#include "energia/core_ring.hpp"
#include "energia/energy.hpp"
#include "energia/eqcount.hpp"
#include "energia/lattice.hpp"
#include "energia/linalg.hpp"
#include "energia/sweep.hpp"
#include "energia/vinogradov.hpp"

namespace energia::cli {
namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  json value;
  std::string raw_json;  // preformatted report, emitted verbatim
  std::string raw_csv;
  bool ok = true;
};

using Handler = std::function<Outcome()>;

// ---------------------------------------------------------------- encoding

json big(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

json rat(const Rational& r) { return to_string(r); }

json rats(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

json bigs(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

json rows(const Matrix<BigInt>& M) {
  json a = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(big(M(i, j)));
    a.push_back(std::move(r));
  }
  return a;
}

json cplx(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json finite(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

void flatten(const json& v, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, keys, values);
    return;
  }
  if (v.is_array()) {
    bool scalars = true;
    for (const auto& x : v) scalars = scalars && x.is_primitive();
    if (scalars) {
      std::string joined;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) joined += ';';
        joined += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
      keys.push_back(prefix);
      values.push_back(csv_cell(joined));
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), keys, values);
    return;
  }
  keys.push_back(prefix);
  values.push_back(csv_cell(v));
}

std::string to_csv(const json& v) {
  std::vector<std::string> keys, values;
  flatten(v, "", keys, values);
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  out += '\n';
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i];
  return out + '\n';
}

// ----------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

BigInt parse_big(const std::string& text) {
  const std::string t = strip(text);
  if (t.empty()) throw DomainError("empty integer");
  const std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (start == t.size() || t.find_first_not_of("0123456789", start) != std::string::npos) {
    throw DomainError("not an integer: '" + t + "'");
  }
  return BigInt(t[0] == '+' ? t.substr(1) : t);
}

Matrix<BigInt> parse_matrix(const std::string& text) {
  std::vector<std::vector<BigInt>> data;
  for (const auto& row : split(text, ';')) {
    if (strip(row).empty()) continue;
    std::vector<BigInt> r;
    for (const auto& x : split(row, ',')) r.push_back(parse_big(x));
    if (!data.empty() && r.size() != data.front().size()) throw DomainError("ragged matrix rows");
    data.push_back(std::move(r));
  }
  if (data.empty()) throw DomainError("empty matrix");
  Matrix<BigInt> M(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data[0].size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data[i].size(); ++j) M(i, j) = data[i][j];
  }
  return M;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& x : split(text, ',')) out.push_back(parse_rational(strip(x)));
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& x : split(text, ',')) out.push_back(to_double(parse_rational(strip(x))));
  return out;
}

json params_poly(const std::vector<std::int64_t>& c) { return json(c); }

// ---------------------------------------------------------------- commands

struct Globals {
  std::string emit = "json";
  std::uint64_t seed = 20240601;
  CLI::Option* seed_opt = nullptr;
};

void add_energy(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& handlers) {
  struct Opts {
    std::int64_t modulus = 0, H = 0;
    std::string poly, what = "T";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("energy", "Additive energies of f(I) mod m");
  sub->add_option("--modulus", o->modulus, "Modulus m >= 2")->required();
  sub->add_option("--poly", o->poly, "Ascending coefficients, e.g. 0,0,1")->required();
  sub->add_option("--H", o->H, "Interval length")->required();
  sub->add_option("--what", o->what, "Quantity")
      ->check(CLI::IsMember({"T", "plus", "times", "sumset", "report"}));
  handlers.emplace_back(sub, [o] {
    const auto coeffs = parse_coefficients(o->poly);
    const PolyMod f(o->modulus, coeffs);
    const Interval I(o->H);
    Outcome r;
    r.value["params"] = {{"modulus", o->modulus}, {"poly", params_poly(coeffs)}, {"H", o->H}, {"what", o->what}};
    if (o->what == "T") {
      r.value["value"] = energy_T(f, I);
    } else if (o->what == "plus") {
      r.value["value"] = energy_plus(f, I);
    } else if (o->what == "times") {
      r.value["value"] = energy_times(f, I);
    } else if (o->what == "sumset") {
      r.value["value"] = sumset_size(f, I);
    } else {
      const EnergyReport e = energy_report(f, I);
      r.value["value"] = {{"T", e.T}, {"Eplus", e.Eplus}, {"Etimes", e.Etimes},
                          {"K", rat(e.K)}, {"sumset_size", e.sumset_size}};
    }
    return r;
  });
}

void add_vinogradov(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& handlers) {
  struct Opts {
    int d = 0, s = 0;
    std::int64_t H = 0;
    std::string set, lambda;
    std::uint64_t budget = kDefaultTupleBudget;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("vinogradov", "Vinogradov system counts J and I");
  sub->add_option("--d", o->d, "Degree")->required();
  sub->add_option("--s", o->s, "Number of summands per side")->required();
  auto* h = sub->add_option("--H", o->H, "Use X = [1, H]");
  auto* set = sub->add_option("--set", o->set, "Explicit set X, comma separated");
  h->excludes(set);
  sub->add_option("--lambda", o->lambda, "Right-hand side for the inhomogeneous count")->needs(h);
  sub->add_option("--budget", o->budget, "Cap on enumerated s-tuples");
  handlers.emplace_back(sub, [o, h, set] {
    if (!h->count() && !set->count()) throw DomainError("one of --H or --set is required");
    Outcome r;
    r.value["d"] = o->d;
    r.value["s"] = o->s;
    if (!o->lambda.empty()) {
      std::vector<BigInt> lam;
      for (const auto& x : split(o->lambda, ',')) lam.push_back(parse_big(x));
      r.value["lambda"] = bigs(lam);
      r.value["count"] = big(count_I(o->d, o->s, o->H, lam, o->budget));
      return r;
    }
    std::vector<std::int64_t> X;
    if (h->count()) {
      if (o->H < 1) throw DomainError("H must be positive");
      for (std::int64_t x = 1; x <= o->H; ++x) X.push_back(x);
    } else {
      X = parse_int_list(o->set);
    }
    r.value["count"] = big(count_J(o->d, o->s, X, o->budget));
    return r;
  });
}

void add_lattice(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& handlers, const Globals& g) {
  struct Opts {
    std::string basis, coeffs, box, matrix, eps;
    std::int64_t modulus = 0;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::uint64_t samples = kDefaultMeasureSamples;
  };
  auto* lat = app.add_subcommand("lattice", "Geometry of numbers");
  lat->require_subcommand(1);

  auto lattice_opts = [](CLI::App* sub, const std::shared_ptr<Opts>& o) {
    sub->add_option("--basis", o->basis, "Generator rows, e.g. '1,1;0,5'");
    sub->add_option("--coeffs", o->coeffs, "Congruence lattice generator a_1..a_d (with --modulus)");
    sub->add_option("--modulus", o->modulus, "Modulus for --coeffs");
    sub->add_option("--box", o->box, "Half-widths c_i as rationals; unit box by default");
    sub->add_option("--budget", o->budget, "Cap on enumeration nodes");
  };
  auto make_lattice = [](const Opts& o) {
    if (!o.basis.empty() && !o.coeffs.empty()) throw DomainError("give --basis or --coeffs, not both");
    if (!o.coeffs.empty()) return congruence_lattice(parse_int_list(o.coeffs), o.modulus);
    if (o.basis.empty()) throw DomainError("one of --basis or --coeffs is required");
    return IntLattice(parse_matrix(o.basis));
  };
  auto make_box = [](const Opts& o, int n) {
    if (o.box.empty()) return WeightedBox::unit(n);
    auto c = parse_rationals(o.box);
    if (static_cast<int>(c.size()) != n) throw DomainError("box dimension differs from the lattice's");
    return WeightedBox(std::move(c));
  };

  auto add = [&](const char* name, const char* help,
                 std::function<Outcome(const Opts&, const IntLattice&, const WeightedBox&)> fn) {
    auto o = std::make_shared<Opts>();
    auto* sub = lat->add_subcommand(name, help);
    lattice_opts(sub, o);
    handlers.emplace_back(sub, [o, fn, make_lattice, make_box] {
      const IntLattice L = make_lattice(*o);
      return fn(*o, L, make_box(*o, L.dimension()));
    });
  };

  add("minima", "Successive minima with witnesses", [](const Opts& o, const IntLattice& L, const WeightedBox& D) {
    const MinimaProfile mp = successive_minima(L, D, o.budget);
    Outcome r;
    r.value = {{"dimension", L.dimension()}, {"covolume", big(L.covolume())}, {"hnf", rows(L.basis())},
               {"lambda", rats(mp.lambda)}, {"witnesses", rows(mp.witnesses)}};
    return r;
  });
  add("dual", "Dual lattice q^{-1} N", [](const Opts&, const IntLattice& L, const WeightedBox&) {
    const ScaledLattice dual = dual_lattice(L);
    const ScaledLattice back = dual_lattice(dual);
    Outcome r;
    r.ok = back.denominator == 1 && back.numerator == L;
    r.value = {{"denominator", big(dual.denominator)}, {"numerator", rows(dual.numerator.basis())},
               {"double_dual_equal", r.ok}};
    return r;
  });
  add("mahler", "Basis adapted to the minima", [](const Opts& o, const IntLattice& L, const WeightedBox& D) {
    const MahlerBasis mb = mahler_basis(L, D, o.budget);
    Outcome r;
    r.value = {{"basis", rows(mb.basis)},
               {"lambda", rats(mb.lambda)},
               {"norm_ratio", rats(mb.norm_ratio)},
               {"norm_factor", rat(mb.norm_factor)},
               {"coefficient_constant", rat(mb.coefficient_constant)},
               {"points_checked", mb.points_checked}};
    return r;
  });
  add("count", "Lattice points in the box", [](const Opts& o, const IntLattice& L, const WeightedBox& D) {
    const PointCount pc = count_lattice_points(L, D, o.budget);
    Outcome r;
    r.value = {{"count", big(pc.count)},
               {"minima_product", rat(pc.minima_product)},
               {"ratio", rat(pc.ratio)},
               {"henk_bound", big(pc.henk_bound)},
               {"constant", big(pc.constant)}};
    return r;
  });
  add("minkowski", "Second theorem sandwich", [](const Opts& o, const IntLattice& L, const WeightedBox& D) {
    const MinkowskiRecord mk = minkowski_check(L, D, o.budget);
    Outcome r;
    r.ok = mk.holds;
    r.value = {{"lambda", rats(mk.lambda)}, {"ratio", rat(mk.ratio)}, {"lower", rat(mk.lower)},
               {"upper", rat(mk.upper)}, {"holds", mk.holds}};
    return r;
  });
  add("transfer", "Products lambda_j lambda*_{n-j+1}", [](const Opts& o, const IntLattice& L, const WeightedBox& D) {
    const TransferenceRecord tr = transference_check(L, D, o.budget);
    Outcome r;
    r.ok = tr.holds;
    r.value = {{"lambda", rats(tr.lambda)}, {"dual_lambda", rats(tr.dual_lambda)},
               {"products", rats(tr.products)}, {"max_product", rat(tr.max_product)}, {"holds", tr.holds}};
    return r;
  });

  {
    auto o = std::make_shared<Opts>();
    auto* sub = lat->add_subcommand("bv", "Small integer solutions of M w = 0");
    sub->add_option("--matrix", o->matrix, "Rows of M, e.g. '1,50,50'")->required();
    sub->add_option("--budget", o->budget, "Cap on enumeration nodes");
    handlers.emplace_back(sub, [o] {
      const Matrix<BigInt> M = parse_matrix(o->matrix);
      const SmallSolutions bv = bv_small_solutions(M, o->budget);
      const Matrix<BigInt> residual = linalg::multiply(M, linalg::transpose(bv.vectors));
      bool kernel = true;
      for (Eigen::Index i = 0; i < residual.rows(); ++i) {
        for (Eigen::Index j = 0; j < residual.cols(); ++j) kernel = kernel && residual(i, j) == 0;
      }
      Outcome r;
      r.ok = kernel;
      r.value = {{"vectors", rows(bv.vectors)},
                 {"gcd_minors", big(bv.gcd_minors)},
                 {"gram_determinant", big(bv.gram_determinant)},
                 {"product", big(bv.product)},
                 {"in_kernel", kernel},
                 {"meets_bound", bv.meets_bound},
                 {"meets_stated_bound", bv.meets_stated_bound},
                 {"from_minima", bv.from_minima}};
      return r;
    });
  }
  {
    auto o = std::make_shared<Opts>();
    auto* sub = lat->add_subcommand("measure", "Monte-Carlo measure of the fractional-part set");
    sub->add_option("--matrix", o->matrix, "Integer matrix M, rows indexed by t")->required();
    sub->add_option("--eps", o->eps, "Thresholds eps_j, one per column")->required();
    sub->add_option("--samples", o->samples, "Sample count");
    handlers.emplace_back(sub, [o, &g] {
      const Matrix<BigInt> B = parse_matrix(o->matrix);
      IntMatrix M(B.rows(), B.cols());
      for (Eigen::Index i = 0; i < B.rows(); ++i) {
        for (Eigen::Index j = 0; j < B.cols(); ++j) M(i, j) = to_int64(B(i, j));
      }
      const MeasureEstimate me = fractional_measure(M, parse_doubles(o->eps), o->samples, g.seed);
      Outcome r;
      r.value = {{"estimate", me.estimate}, {"std_error", me.std_error}, {"half_width", me.half_width},
                 {"product_eps", me.exact},  {"constant", me.constant},   {"samples", me.samples},
                 {"hits", me.hits},          {"seed", g.seed}};
      return r;
    });
  }
}

json lift_json(const LiftCertificate& c) {
  json j;
  j["w"] = big(c.w);
  j["fiber_size"] = c.fiber_size;
  j["anchor"] = c.anchor ? json::array({c.anchor->first, c.anchor->second}) : json(nullptr);
  j["d0"] = c.d0;
  j["w_j0"] = bigs(c.w_j0);
  j["w_star"] = big(c.w_star);
  j["w_star2"] = c.w_star2 ? big(*c.w_star2) : json(nullptr);
  j["final_equation"] = c.final_equation;
  j["count"] = c.count;
  return j;
}

void add_eqcount(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& handlers) {
  auto* eq = app.add_subcommand("eqcount", "Polynomial equations and congruences");
  eq->require_subcommand(1);
  {
    struct Opts {
      std::string poly, w;
      std::int64_t H = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = eq->add_subcommand("eq", "f(n) - f(m) = w over [1,H]^2");
    sub->add_option("--poly", o->poly, "Integer coefficients, ascending")->required();
    sub->add_option("--w", o->w, "Nonzero right-hand side")->required();
    sub->add_option("--H", o->H, "Range")->required();
    handlers.emplace_back(sub, [o] {
      const auto coeffs = parse_coefficients(o->poly);
      const IntPoly f = to_int_poly(coeffs);
      const BigInt w = parse_big(o->w);
      Outcome r;
      r.value["poly"] = coeffs;
      r.value["w"] = big(w);
      r.value["H"] = o->H;
      r.value["count"] = count_eq(f, w, o->H);
      r.value["method"] = "divisor";
      json sols = json::array();
      for (const auto& [n, m] : solve_difference_eq(f, w, o->H)) sols.push_back({n, m});
      r.value["solutions"] = std::move(sols);
      return r;
    });
  }
  {
    struct Opts {
      std::string poly;
      std::int64_t H = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = eq->add_subcommand("sym", "f(x)+f(y) = f(z)+f(w) over [1,H]^4");
    sub->add_option("--poly", o->poly, "Integer coefficients, ascending")->required();
    sub->add_option("--H", o->H, "Range")->required();
    handlers.emplace_back(sub, [o] {
      const SymmetricCount sc = count_symmetric_eq(to_int_poly(parse_coefficients(o->poly)), o->H);
      Outcome r;
      r.value = {{"count", big(sc.count)}, {"zero_term", big(sc.zero_term)}, {"nonzero_term", big(sc.nonzero_term)}};
      return r;
    });
  }
  {
    struct Opts {
      std::string poly;
      std::int64_t modulus = 0, lambda = 0, H = 0;
      bool force = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = eq->add_subcommand("cong", "f(n) - f(m) = lambda mod m over [1,H]^2");
    sub->add_option("--modulus", o->modulus, "Modulus")->required();
    sub->add_option("--poly", o->poly, "Coefficients, ascending")->required();
    sub->add_option("--lambda", o->lambda, "Nonzero residue")->required();
    sub->add_option("--H", o->H, "Range")->required();
    sub->add_flag("--force", o->force, "Run the pipeline outside the short regime");
    handlers.emplace_back(sub, [o] {
      const PolyMod f(o->modulus, parse_coefficients(o->poly));
      Outcome r;
      const CongruenceCount cc = count_congruence(f, o->lambda, o->H, o->force);
      r.value["c_d"] = rat(choose_cd(f.degree()));
      r.value["in_regime"] = cc.in_regime;
      r.value["brute"] = cc.brute;
      if (cc.pipeline) {
        const auto& p = *cc.pipeline;
        json pj = {{"count", p.count}, {"method", p.method}};
        if (p.certificate) {
          const auto& c = *p.certificate;
          json lifts = json::array();
          for (const auto& l : c.lifts) lifts.push_back(lift_json(l));
          pj["certificate"] = {{"normalized", c.normalized}, {"lambda_normalized", c.lambda_normalized},
                               {"b", bigs(c.b)},           {"b_norm", rat(c.b_norm)},
                               {"ell", c.ell},             {"lifts", std::move(lifts)}};
        }
        r.value["pipeline"] = std::move(pj);
      } else {
        r.value["pipeline"] = nullptr;
        r.value["declined"] = cc.declined;
      }
      return r;
    });
  }
}

void add_charsum(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& handlers, const Globals& g) {
  auto* cs = app.add_subcommand("charsum", "Multiplicative character sums");
  cs->require_subcommand(1);
  auto table = [](std::int64_t p, std::int64_t k) { return k ? CharTable(p, k) : CharTable::legendre(p); };
  {
    struct Opts {
      std::int64_t p = 0, k = 0;
      std::string poly;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = cs->add_subcommand("weil", "Complete sum of chi(f(x))");
    sub->add_option("--p", o->p, "Odd prime")->required();
    sub->add_option("--k", o->k, "Character index; Legendre symbol by default");
    sub->add_option("--poly", o->poly, "Coefficients, ascending")->required();
    handlers.emplace_back(sub, [o, table] {
      const CharTable chi = table(o->p, o->k);
      const PolyMod f(o->p, parse_coefficients(o->poly));
      const Complex s = complete_sum_poly(chi, f);
      const bool degenerate = is_character_power(chi, f);
      const double bound = (f.degree() - 1) * std::sqrt(static_cast<double>(o->p));
      const bool holds = std::abs(s) <= bound + 1e-6;
      Outcome r;
      r.ok = degenerate || holds;
      r.value = {{"p", o->p},         {"k", chi.k()},        {"order", chi.order()},
                 {"generator", chi.generator()}, {"sum", cplx(s)}, {"abs", std::abs(s)},
                 {"weil_bound", bound}, {"degenerate", degenerate}, {"holds", holds}};
      return r;
    });
  }
  {
    struct Opts {
      std::int64_t p = 0, k = 0, H = 0;
      std::string S, weights = "unit";
      int r = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = cs->add_subcommand("bilinear", "W = sum_s sum_x alpha_s beta_x chi(s + x)");
    sub->add_option("--p", o->p, "Odd prime")->required();
    sub->add_option("--k", o->k, "Character index; Legendre symbol by default");
    sub->add_option("--S", o->S, "The set S, comma separated")->required();
    sub->add_option("--H", o->H, "I = [1, H]")->required();
    sub->add_option("--weights", o->weights, "unit or random phases")->check(CLI::IsMember({"unit", "random"}));
    sub->add_option("--r", o->r, "Also evaluate the energy bound with this r");
    handlers.emplace_back(sub, [o, table, &g] {
      const CharTable chi = table(o->p, o->k);
      BilinearInstance inst;
      inst.S = parse_int_list(o->S);
      inst.H = o->H;
      inst.alpha.assign(inst.S.size(), Complex(1, 0));
      inst.beta.assign(static_cast<std::size_t>(std::max<std::int64_t>(o->H, 0)), Complex(1, 0));
      if (o->weights == "random") {
        std::mt19937_64 rng(g.seed);
        std::uniform_real_distribution<double> phase(0, 2 * std::numbers::pi);
        for (auto& a : inst.alpha) a = std::polar(1.0, phase(rng));
        for (auto& b : inst.beta) b = std::polar(1.0, phase(rng));
      }
      const Complex W = bilinear_W(chi, inst);
      const std::int64_t E = additive_energy(inst.S, o->p);
      Outcome r;
      r.value = {{"W", cplx(W)},
                 {"abs", std::abs(W)},
                 {"trivial", static_cast<double>(inst.S.size()) * static_cast<double>(o->H)},
                 {"energy_S", E}};
      if (o->r > 0) {
        const BilinearBound b = bilinear_energy_bound(static_cast<double>(inst.S.size()), static_cast<double>(o->H),
                                               static_cast<double>(o->p), static_cast<double>(E), o->r);
        r.value["bound"] = {{"value", b.value}, {"conditions_hold", b.conditions_hold}, {"note", b.note}};
        r.value["ratio"] = std::abs(W) / b.value;
      }
      return r;
    });
  }
  {
    struct Opts {
      std::int64_t p = 0, k = 0, Q = 0, R = 0;
      std::string poly;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = cs->add_subcommand("primes", "Sums of chi(f(q) + r) over primes q <= Q, r <= R");
    sub->add_option("--p", o->p, "Odd prime")->required();
    sub->add_option("--k", o->k, "Character index; Legendre symbol by default");
    sub->add_option("--poly", o->poly, "Coefficients, ascending")->required();
    sub->add_option("--Q", o->Q, "Bound on q")->required();
    sub->add_option("--R", o->R, "Bound on r")->required();
    handlers.emplace_back(sub, [o, table] {
      const CharTable chi = table(o->p, o->k);
      const PrimeBilinearSums s = prime_bilinear_sum(chi, PolyMod(o->p, parse_coefficients(o->poly)), o->Q, o->R);
      Outcome r;
      r.value = {{"sum_over_q", s.sum_over_q}, {"sum_over_r", s.sum_over_r}, {"primes_q", s.primes_q},
                 {"primes_r", s.primes_r},     {"ratio_q", s.ratio_q},       {"ratio_r", s.ratio_r},
                 {"saving_q", finite(s.saving_q)}, {"saving_r", finite(s.saving_r)}};
      return r;
    });
  }
  {
    struct Opts {
      double S = 0, H = 0, p = 0, E = 0;
      int r = 1;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = cs->add_subcommand("bound", "Energy bound for bilinear sums");
    sub->add_option("--S", o->S, "Size of S")->required();
    sub->add_option("--H", o->H, "Interval length")->required();
    sub->add_option("--p", o->p, "Prime")->required();
    sub->add_option("--E", o->E, "Additive energy of S")->required();
    sub->add_option("--r", o->r, "Positive integer r")->required();
    handlers.emplace_back(sub, [o] {
      const BilinearBound b = bilinear_energy_bound(o->S, o->H, o->p, o->E, o->r);
      Outcome r;
      r.value = {{"value", b.value},       {"size_ok", b.size_ok},
                 {"short_ok", b.short_ok}, {"range_ok", b.range_ok},
                 {"conditions_hold", b.conditions_hold}, {"note", b.note}};
      return r;
    });
  }
  {
    struct Opts {
      std::string zeta, xi;
      int d = 2, r = 1;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = cs->add_subcommand("region", "Admissible (zeta, xi) for prime bilinear sums");
    sub->add_option("--zeta", o->zeta, "Rational zeta")->required();
    sub->add_option("--xi", o->xi, "Rational xi")->required();
    sub->add_option("--d", o->d, "Degree");
    sub->add_option("--r", o->r, "Energy parameter r");
    handlers.emplace_back(sub, [o] {
      RegimeParams params;
      params.zeta = parse_rational(o->zeta);
      params.xi = parse_rational(o->xi);
      params.d = o->d;
      params.r = o->r;
      const RegionReport rep = prime_sum_region(params);
      Outcome r;
      json cons = json::array();
      for (const auto& c : rep.constraints) {
        cons.push_back({{"name", c.name}, {"lhs", rat(c.lhs)}, {"rhs", rat(c.rhs)}, {"slack", rat(c.slack)},
                        {"satisfied", c.satisfied}, {"binding", c.binding}});
      }
      r.value = {{"admissible", rep.admissible}, {"xi_threshold", rat(rep.xi_threshold)},
                 {"xi_cap", rat(rep.xi_cap)}, {"constraints", std::move(cons)}};
      return r;
    });
  }
}

void add_verify(CLI::App& app, std::vector<std::pair<CLI::App*, Handler>>& handlers, const Globals& g) {
  struct Opts {
    std::string config;
    unsigned threads = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("verify", "Sweep exact energies against the theorem bounds");
  sub->add_option("--config", o->config, "key = value grid description; default grid if omitted")
      ->check(CLI::ExistingFile);
  sub->add_option("--threads", o->threads, "Worker threads; 0 uses every core");
  handlers.emplace_back(sub, [o, &g] {
    SweepConfig cfg = o->config.empty() ? SweepConfig{} : load_sweep_config(o->config);
    if (g.seed_opt->count()) cfg.seed = g.seed;
    if (o->threads) cfg.threads = o->threads;
    const SweepReport rep = run_sweep(cfg);
    Outcome r;
    r.raw_json = sweep_json(rep);
    r.raw_csv = sweep_csv(rep);
    r.ok = rep.failures == 0;
    return r;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact additive energies, lattices and character sums", "energia"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--emit", g.emit, "Output format")->check(CLI::IsMember({"json", "csv"}));
  g.seed_opt = app.add_option("--seed", g.seed, "Seed for every random choice");

  std::vector<std::pair<CLI::App*, Handler>> handlers;
  add_energy(app, handlers);
  add_vinogradov(app, handlers);
  add_lattice(app, handlers, g);
  add_eqcount(app, handlers);
  add_charsum(app, handlers, g);
  add_verify(app, handlers, g);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kBadInput;
  }

  for (const auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    try {
      const Outcome r = handler();
      if (g.emit == "csv") {
        out << (r.raw_csv.empty() ? to_csv(r.value) : r.raw_csv);
      } else {
        out << (r.raw_json.empty() ? r.value.dump(2) + "\n" : r.raw_json);
      }
      if (!r.ok) err << "hard assertion failed\n";
      return r.ok ? kOk : kAssertionFailed;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kBadInput;
    } catch (const std::out_of_range& e) {
      err << "error: " << e.what() << '\n';
      return kBadInput;
    } catch (const BudgetExceeded& e) {
      err << "error: " << e.what() << '\n';
      return kBadInput;
    } catch (const OverflowError& e) {
      err << "error: " << e.what() << '\n';
      return kBadInput;
    } catch (const std::logic_error& e) {
      err << "assertion failed: " << e.what() << '\n';
      return kAssertionFailed;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kBadInput;
    }
  }
  err << "no command given\n";
  return kBadInput;
}

}  // namespace energia::cli
