#include "opdyn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace opdyn {

Eigen::VectorXd gen_opinions(std::size_t n, const OpinionDistribution& dist, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_opinions: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));

  if (dist.kind == OpinionDistribution::Kind::uniform) {
    for (auto& v : out) v = unit(rng);
    return out;
  }

  if (!(dist.slope > 1.0)) {
    throw std::invalid_argument("gen_opinions: power-law slope must be > 1");
  }
  // CDF on [m, 1]: F(x) = (m^(1-a) - x^(1-a)) / (m^(1-a) - 1).
  const double e = 1.0 - dist.slope;
  const double top = std::pow(kPowerLawMin, e);
  for (auto& v : out) {
    const double u = unit(rng);
    v = std::pow(top - u * (top - 1.0), 1.0 / e);
    v = std::min(1.0, std::max(kPowerLawMin, v));
  }
  return out;
}

Eigen::VectorXd gen_resistance(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_resistance: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(kResistanceMin, 1.0);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for (auto& v : out) v = draw(rng);
  return out;
}

}  // namespace opdyn
