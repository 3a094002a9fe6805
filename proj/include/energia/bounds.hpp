#pragma once

#include "energia/types.hpp"

namespace energia {

/// alpha_d = 2/(d^2+d-2), beta_d = 2/(d+2).
struct BoundParams {
  int d;
  Rational alpha;
  Rational beta;
};

BoundParams alpha_beta(int d);

// The evaluators below drop every H^{o(1)} factor.

/// H^3 min{(m/H)^{-alpha_d}, H^{-beta_d}}, for 1 <= H <= m.
double global_energy_bound(int d, double m, double H);

/// (H^2 Z^2 / m^{2/(d(d+1))} + Z (H + Z)), for Z >= 1.
double cross_interval_bound(int d, double m, double H, double Z);

struct ShortEnergyBound {
  double value;      // H^4 / m^{4/(d(d+1))} + H^2
  double crossover;  // H* = m^{2/(d(d+1))}; below it the H^2 term dominates
};

ShortEnergyBound short_energy_bound(int d, double m, double H);

}  // namespace energia
