#include <cmath>
#include <random>

#include "energia/lattice.hpp"
#include "energia/linalg.hpp"

namespace energia {

MeasureEstimate fractional_measure(const IntMatrix& M, const std::vector<double>& eps,
                                   std::uint64_t samples, std::uint64_t seed) {
  const Eigen::Index d = M.rows();
  if (d == 0 || M.cols() != d) throw DomainError("matrix must be square and non-empty");
  if (static_cast<Eigen::Index>(eps.size()) != d) throw DomainError("need one epsilon per column");
  for (double e : eps) {
    if (!(e > 0 && e <= 0.5)) throw DomainError("each epsilon must lie in (0, 1/2]");
  }
  if (samples == 0) throw DomainError("need at least one sample");
  if (linalg::determinant(linalg::convert<BigInt>(M)) == 0) throw DomainError("singular matrix");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> t(static_cast<std::size_t>(d));
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& v : t) v = unif(rng);
    bool inside = true;
    for (Eigen::Index j = 0; j < d && inside; ++j) {
      double acc = 0;
      for (Eigen::Index i = 0; i < d; ++i) acc += static_cast<double>(M(i, j)) * t[i];
      inside = acc - std::floor(acc) <= eps[j];
    }
    if (inside) ++hits;
  }

  MeasureEstimate r;
  r.samples = samples;
  r.hits = hits;
  r.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  r.exact = 1.0;
  for (double e : eps) r.exact *= e;
  r.std_error = std::sqrt(r.exact * (1 - r.exact) / static_cast<double>(samples));
  r.half_width = 3 * r.std_error;
  r.constant = r.estimate / r.exact;
  return r;
}

}  // namespace energia
