#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

namespace opdyn {

/// Lower cutoff of the power-law opinion support [kPowerLawMin, 1].
inline constexpr double kPowerLawMin = 0.01;
inline constexpr double kResistanceMin = 0.001;

struct OpinionDistribution {
  enum class Kind { uniform, powerlaw };
  Kind kind = Kind::uniform;
  /// Density exponent for powerlaw: p(x) proportional to x^-slope. Must be > 1.
  double slope = 2.0;
};

/// uniform: iid U[0,1). powerlaw: inverse-transform draws from the density
/// proportional to x^-slope on [kPowerLawMin, 1].
Eigen::VectorXd gen_opinions(std::size_t n, const OpinionDistribution& dist, std::uint64_t seed);

/// iid U[kResistanceMin, 1).
Eigen::VectorXd gen_resistance(std::size_t n, std::uint64_t seed);

}  // namespace opdyn
