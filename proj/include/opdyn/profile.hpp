#pragma once

#include <string_view>

#include <Eigen/Core>

#include "opdyn/graph.hpp"

namespace opdyn {

/// Innate opinions s in [0,1]^n and resistances alpha in (0,1]^n.
/// The constructor validates both ranges and throws ValidationError.
class OpinionProfile {
 public:
  OpinionProfile(Eigen::VectorXd innate, Eigen::VectorXd resistance);

  std::size_t size() const noexcept { return static_cast<std::size_t>(s_.size()); }
  const Eigen::VectorXd& innate() const noexcept { return s_; }
  const Eigen::VectorXd& resistance() const noexcept { return alpha_; }

  OpinionProfile with_resistance(Eigen::VectorXd resistance) const;
  OpinionProfile with_resistance_at(NodeId node, double value) const;
  /// Same resistances, innate opinions 1 - s.
  OpinionProfile complement() const;

 private:
  Eigen::VectorXd s_;
  Eigen::VectorXd alpha_;
};

/// Throws std::invalid_argument unless the profile has one entry per node.
void require_matching(const Graph& g, const OpinionProfile& p);

/// Intervention interval [lower, upper] with 0 < lower <= upper <= 1.
class BoxBounds {
 public:
  BoxBounds(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  /// Bounds of the reparameterized variable x = 1/alpha.
  double x_lower() const noexcept { return 1.0 / upper_; }
  double x_upper() const noexcept { return 1.0 / lower_; }

 private:
  double lower_;
  double upper_;
};

enum class Direction { minimize, maximize };

std::string_view to_string(Direction d);

/// True when `candidate` is strictly better than `incumbent` by more than tol.
inline bool improves(Direction d, double candidate, double incumbent, double tol = 0.0) {
  return d == Direction::maximize ? candidate > incumbent + tol : candidate < incumbent - tol;
}

}  // namespace opdyn
