#include "opdyn/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "opdyn/errors.hpp"

namespace opdyn {

OpinionProfile::OpinionProfile(Eigen::VectorXd innate, Eigen::VectorXd resistance)
    : s_(std::move(innate)), alpha_(std::move(resistance)) {
  if (s_.size() != alpha_.size()) {
    throw ValidationError("profile has " + std::to_string(s_.size()) + " opinions but " +
                          std::to_string(alpha_.size()) + " resistances");
  }
  for (Eigen::Index i = 0; i < s_.size(); ++i) {
    if (!(s_[i] >= 0.0 && s_[i] <= 1.0)) {
      throw ValidationError("innate opinion of node " + std::to_string(i) + " is " +
                            std::to_string(s_[i]) + ", outside [0, 1]");
    }
    if (!(alpha_[i] > 0.0 && alpha_[i] <= 1.0)) {
      throw ValidationError("resistance of node " + std::to_string(i) + " is " +
                            std::to_string(alpha_[i]) + ", outside (0, 1]");
    }
  }
}

OpinionProfile OpinionProfile::with_resistance(Eigen::VectorXd resistance) const {
  return OpinionProfile(s_, std::move(resistance));
}

OpinionProfile OpinionProfile::with_resistance_at(NodeId node, double value) const {
  Eigen::VectorXd a = alpha_;
  a[node] = value;
  return OpinionProfile(s_, std::move(a));
}

OpinionProfile OpinionProfile::complement() const {
  return OpinionProfile((1.0 - s_.array()).matrix(), alpha_);
}

void require_matching(const Graph& g, const OpinionProfile& p) {
  if (p.size() != g.node_count()) {
    throw std::invalid_argument("profile length " + std::to_string(p.size()) +
                                " does not match node count " + std::to_string(g.node_count()));
  }
}

BoxBounds::BoxBounds(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!(lower > 0.0 && lower <= upper && upper <= 1.0)) {
    throw ValidationError("bounds [" + std::to_string(lower) + ", " + std::to_string(upper) +
                          "] violate 0 < lower <= upper <= 1");
  }
}

std::string_view to_string(Direction d) {
  return d == Direction::maximize ? "max" : "min";
}

}  // namespace opdyn
