#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "energia/types.hpp"

namespace energia {

struct SweepConfig {
  std::vector<int> degrees{2, 3};
  std::vector<std::int64_t> moduli{1000, 10000, 100000, 1000000};
  std::vector<std::int64_t> lengths{4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 48, 64, 96, 128, 192, 256, 384, 500};
  int seeds = 3;
  std::uint64_t seed = 20240601;
  std::int64_t h_max = 500;
  double slack_exponent = 0.5;
  double slack_constant = 16;
  int min_regime_points = 3;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Parses "key = value" lines; '#' starts a comment; lists are comma separated.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct SweepCell {
  std::size_t index = 0;
  int d = 0;
  std::int64_t m = 0;
  std::int64_t H = 0;
  int seed_index = 0;
  std::uint64_t f_seed = 0;
  std::vector<std::int64_t> coeffs;
  std::int64_t T = 0;
  std::int64_t sumset = 0;
  Rational K;
  double global_bound = 0;
  double short_bound = 0;
  double crossover = 0;
  double ratio_global = 0;
  double ratio_short = 0;
  double slack_ratio = 0;  // T / (H^slack_exponent * short_bound)
  bool in_regime = false;  // H <= m^{2/(d(d+1))}
  bool cauchy_schwarz = false;
  std::string error;
};

struct SweepSeries {
  int d = 0;
  std::int64_t m = 0;
  int seed_index = 0;
  std::size_t points = 0;
  std::size_t regime_points = 0;
  double slope = 0;                        // log T against log H over every H
  std::optional<double> regime_slope;      // restricted to H <= m^{2/(d(d+1))}
  double max_local_slope = 0;              // between consecutive H
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepCell> cells;  // ordered by grid index
  std::vector<SweepSeries> series;
  double max_slack_ratio = 0;
  double max_slope = 0;
  std::optional<double> max_regime_slope;
  std::size_t failures = 0;      // hard identity failures plus cell errors
};

SweepReport run_sweep(const SweepConfig& config);

std::string sweep_json(const SweepReport& report);
std::string sweep_csv(const SweepReport& report);

}  // namespace energia
