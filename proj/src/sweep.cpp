#include "energia/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "energia/bounds.hpp"
#include "energia/core_ring.hpp"
#include "energia/energy.hpp"
#include "energia/stats.hpp"

namespace energia {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t cell_seed(std::uint64_t seed, int d, std::int64_t m, int seed_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(m),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(m) >> 32),
                    static_cast<std::uint32_t>(seed_index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void evaluate(SweepCell& c, const SweepConfig& cfg) {
  try {
    std::mt19937_64 rng(c.f_seed);
    std::uniform_int_distribution<std::int64_t> coef(0, c.m - 1);
    c.coeffs.assign(static_cast<std::size_t>(c.d + 1), 0);
    for (int j = 0; j < c.d; ++j) c.coeffs[j] = coef(rng);
    c.coeffs[c.d] = 1;
    const PolyMod f(c.m, c.coeffs);
    const Interval I(c.H);
    c.T = energy_T(f, I);
    c.sumset = sumset_size(f, I);
    c.K = Rational(big_pow(c.H, 3), BigInt(c.T));
    c.global_bound = global_energy_bound(c.d, static_cast<double>(c.m), static_cast<double>(c.H));
    const ShortEnergyBound sb = short_energy_bound(c.d, static_cast<double>(c.m), static_cast<double>(c.H));
    c.short_bound = sb.value;
    c.crossover = sb.crossover;
    const double T = static_cast<double>(c.T);
    c.ratio_global = T / c.global_bound;
    c.ratio_short = T / c.short_bound;
    c.slack_ratio = T / (std::pow(static_cast<double>(c.H), cfg.slack_exponent) * c.short_bound);
    c.in_regime = big_pow(c.H, c.d * (c.d + 1) / 2) <= BigInt(c.m);
    c.cauchy_schwarz = big_pow(c.H, 4) <= BigInt(c.sumset) * BigInt(c.T) &&
                       Rational(c.sumset) >= Rational(c.H) * c.K;
  } catch (const std::exception& e) {
    c.error = e.what();
  }
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "d") {
        cfg.degrees.clear();
        for (auto v : parse_int_list(value)) cfg.degrees.push_back(static_cast<int>(v));
      } else if (key == "m") {
        cfg.moduli = parse_int_list(value);
      } else if (key == "H") {
        cfg.lengths = parse_int_list(value);
      } else if (key == "seeds") {
        cfg.seeds = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "h_max") {
        cfg.h_max = std::stoll(value);
      } else if (key == "slack_exponent") {
        cfg.slack_exponent = std::stod(value);
      } else if (key == "slack_constant") {
        cfg.slack_constant = std::stod(value);
      } else if (key == "min_regime_points") {
        cfg.min_regime_points = std::stoi(value);
      } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(std::stoul(value));
      } else {
        throw DomainError("unknown key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      throw DomainError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (int d : cfg.degrees) {
    if (d < 2) throw DomainError("degrees must be at least 2");
  }
  for (auto m : cfg.moduli) {
    if (m < 2) throw DomainError("moduli must be at least 2");
  }
  for (auto H : cfg.lengths) {
    if (H < 1) throw DomainError("interval lengths must be positive");
  }
  if (cfg.seeds < 0) throw DomainError("seeds must be non-negative");
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  return parse_sweep_config(in);
}

SweepReport run_sweep(const SweepConfig& config) {
  SweepReport rep;
  rep.config = config;
  auto lengths = config.lengths;
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (int d : config.degrees) {
    for (auto m : config.moduli) {
      for (int s = 0; s < config.seeds; ++s) {
        const std::uint64_t fs = cell_seed(config.seed, d, m, s);
        for (auto H : lengths) {
          if (H > config.h_max || H > m) continue;
          SweepCell c;
          c.index = rep.cells.size();
          c.d = d;
          c.m = m;
          c.H = H;
          c.seed_index = s;
          c.f_seed = fs;
          rep.cells.push_back(std::move(c));
        }
      }
    }
  }

  unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(rep.cells.size(), 1)));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rep.cells.size(); i = next++) evaluate(rep.cells[i], config);
      });
    }
  }

  std::map<std::tuple<int, std::int64_t, int>, std::vector<const SweepCell*>> groups;
  for (const auto& c : rep.cells) {
    if (!c.error.empty() || !c.cauchy_schwarz) ++rep.failures;
    if (c.error.empty()) {
      groups[{c.d, c.m, c.seed_index}].push_back(&c);
      rep.max_slack_ratio = std::max(rep.max_slack_ratio, c.slack_ratio);
    }
  }
  for (const auto& [key, cells] : groups) {
    SweepSeries s;
    std::tie(s.d, s.m, s.seed_index) = key;
    std::vector<double> x, y, xr, yr;
    for (const auto* c : cells) {
      x.push_back(static_cast<double>(c->H));
      y.push_back(static_cast<double>(c->T));
      if (c->in_regime) {
        xr.push_back(x.back());
        yr.push_back(y.back());
      }
    }
    s.points = x.size();
    s.regime_points = xr.size();
    if (x.size() < 2) continue;
    s.slope = loglog_slope(x, y);
    for (std::size_t i = 1; i < x.size(); ++i) {
      s.max_local_slope = std::max(s.max_local_slope,
                                   std::log(y[i] / y[i - 1]) / std::log(x[i] / x[i - 1]));
    }
    if (static_cast<int>(xr.size()) >= std::max(2, config.min_regime_points)) {
      s.regime_slope = loglog_slope(xr, yr);
      rep.max_regime_slope = std::max(rep.max_regime_slope.value_or(-INFINITY), *s.regime_slope);
    }
    rep.max_slope = std::max(rep.max_slope, s.slope);
    rep.series.push_back(s);
  }
  return rep;
}

std::string sweep_json(const SweepReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  const auto& c = r.config;
  j["config"] = {{"d", c.degrees},
                 {"m", c.moduli},
                 {"H", c.lengths},
                 {"seeds", c.seeds},
                 {"seed", c.seed},
                 {"h_max", c.h_max},
                 {"slack_exponent", c.slack_exponent},
                 {"slack_constant", c.slack_constant},
                 {"min_regime_points", c.min_regime_points}};
  ordered_json cells = ordered_json::array();
  for (const auto& x : r.cells) {
    ordered_json o;
    o["index"] = x.index;
    o["d"] = x.d;
    o["m"] = x.m;
    o["H"] = x.H;
    o["seed_index"] = x.seed_index;
    o["f_seed"] = x.f_seed;
    o["coeffs"] = x.coeffs;
    o["T"] = x.T;
    o["sumset"] = x.sumset;
    o["K"] = to_string(x.K);
    o["global_energy_bound"] = x.global_bound;
    o["short_energy_bound"] = x.short_bound;
    o["crossover"] = x.crossover;
    o["ratio_global"] = x.ratio_global;
    o["ratio_short"] = x.ratio_short;
    o["slack_ratio"] = x.slack_ratio;
    o["in_regime"] = x.in_regime;
    o["cauchy_schwarz"] = x.cauchy_schwarz;
    if (!x.error.empty()) o["error"] = x.error;
    cells.push_back(std::move(o));
  }
  j["cells"] = std::move(cells);
  ordered_json series = ordered_json::array();
  for (const auto& s : r.series) {
    ordered_json o;
    o["d"] = s.d;
    o["m"] = s.m;
    o["seed_index"] = s.seed_index;
    o["points"] = s.points;
    o["regime_points"] = s.regime_points;
    o["slope"] = s.slope;
    o["regime_slope"] = s.regime_slope ? ordered_json(*s.regime_slope) : ordered_json(nullptr);
    o["max_local_slope"] = s.max_local_slope;
    series.push_back(std::move(o));
  }
  j["series"] = std::move(series);
  j["summary"] = {{"cells", r.cells.size()},
                  {"failures", r.failures},
                  {"max_slack_ratio", r.max_slack_ratio},
                  {"slack_within_constant", r.max_slack_ratio <= c.slack_constant},
                  {"max_slope", r.max_slope},
                  {"max_regime_slope",
                   r.max_regime_slope ? ordered_json(*r.max_regime_slope) : ordered_json(nullptr)}};
  return j.dump(2) + "\n";
}

std::string sweep_csv(const SweepReport& r) {
  std::ostringstream out;
  out << "index,d,m,H,seed_index,f_seed,coeffs,T,sumset,K,global_energy_bound,short_energy_bound,crossover,"
         "ratio_global,ratio_short,slack_ratio,in_regime,cauchy_schwarz,error\n";
  for (const auto& x : r.cells) {
    std::string error = x.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::string coeffs;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
      if (i) coeffs += ';';
      coeffs += std::to_string(x.coeffs[i]);
    }
    out << x.index << ',' << x.d << ',' << x.m << ',' << x.H << ',' << x.seed_index << ','
        << x.f_seed << ',' << coeffs << ',' << x.T << ',' << x.sumset << ',' << to_string(x.K)
        << ',' << fmt_double(x.global_bound) << ',' << fmt_double(x.short_bound) << ','
        << fmt_double(x.crossover) << ',' << fmt_double(x.ratio_global) << ','
        << fmt_double(x.ratio_short) << ',' << fmt_double(x.slack_ratio) << ','
        << (x.in_regime ? 1 : 0) << ',' << (x.cauchy_schwarz ? 1 : 0) << ',' << error << '\n';
  }
  return out.str();
}

}  // namespace energia
