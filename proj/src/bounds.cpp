#include "energia/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace energia {
namespace {

void check_range(int d, double m, double H) {
  if (d < 2) throw DomainError("degree must be at least 2");
  if (!(H >= 1 && H <= m)) throw DomainError("need 1 <= H <= m");
}

double inv_tri(int d) { return 2.0 / (static_cast<double>(d) * (d + 1)); }

}  // namespace

BoundParams alpha_beta(int d) {
  if (d < 2) throw DomainError("degree must be at least 2");
  return {d, Rational(2, d * d + d - 2), Rational(2, d + 2)};
}

double global_energy_bound(int d, double m, double H) {
  check_range(d, m, H);
  const auto ab = alpha_beta(d);
  const double a = to_double(ab.alpha), b = to_double(ab.beta);
  return std::pow(H, 3) * std::min(std::pow(m / H, -a), std::pow(H, -b));
}

double cross_interval_bound(int d, double m, double H, double Z) {
  check_range(d, m, H);
  if (Z < 1) throw DomainError("Z must be at least 1");
  return H * H * Z * Z / std::pow(m, inv_tri(d)) + Z * (H + Z);
}

ShortEnergyBound short_energy_bound(int d, double m, double H) {
  check_range(d, m, H);
  return {std::pow(H, 4) / std::pow(m, 2 * inv_tri(d)) + H * H, std::pow(m, inv_tri(d))};
}

}  // namespace energia
