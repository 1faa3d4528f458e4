#include "opdyn/rank_one.hpp"

#include <cmath>

#include <Eigen/LU>

#include "opdyn/equilibrium.hpp"

namespace opdyn {

namespace {

constexpr double kDegenerateDenominator = 1e-12;

}  // namespace

ResolventState::ResolventState(const Graph& g, const OpinionProfile& p)
    : g_(&g), s_(p.innate()), alpha_(p.resistance()) {
  require_matching(g, p);
  refactor();
}

void ResolventState::refactor() {
  const Eigen::MatrixXd m = system_matrix(*g_, alpha_);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  inverse_ = lu.inverse();
  z_ = inverse_ * alpha_.cwiseProduct(s_);
  column_sums_ = inverse_.colwise().sum().transpose();
  objective_ = z_.sum();
}

void ResolventState::assign_and_refactor(NodeId node, double value) {
  alpha_[node] = value;
  refactor();
}

std::optional<double> ResolventState::objective_if(NodeId node, double value) const {
  const double d = value - alpha_[node];
  if (d == 0.0) return objective_;
  const auto nb = g_->neighbors(node);
  const double inv_deg = 1.0 / static_cast<double>(nb.size());
  const auto col = inverse_.col(node);
  double pc = 0.0;
  double pz = 0.0;
  for (NodeId j : nb) {
    pc += col[j];
    pz += z_[j];
  }
  pc *= inv_deg;
  pz *= inv_deg;
  const double denom = 1.0 + d * pc;
  if (std::abs(denom) < kDegenerateDenominator) return std::nullopt;
  const double ds = d * s_[node];
  const double r = column_sums_[node];
  return objective_ + ds * r - r * d * (pz + ds * pc) / denom;
}

void ResolventState::update(NodeId node, double value) {
  const double d = value - alpha_[node];
  if (d == 0.0) return;
  const auto nb = g_->neighbors(node);
  const double inv_deg = 1.0 / static_cast<double>(nb.size());

  // vt = d P_i M^{-1}: mean of the neighbor rows, scaled.
  Eigen::RowVectorXd vt = Eigen::RowVectorXd::Zero(inverse_.cols());
  for (NodeId j : nb) vt += inverse_.row(j);
  vt *= d * inv_deg;
  const Eigen::VectorXd c = inverse_.col(node);
  const double denom = 1.0 + vt[node];
  if (std::abs(denom) < kDegenerateDenominator) {
    assign_and_refactor(node, value);
    return;
  }
  inverse_.noalias() -= (c / denom) * vt;
  alpha_[node] = value;
  z_ = inverse_ * alpha_.cwiseProduct(s_);
  column_sums_ = inverse_.colwise().sum().transpose();
  objective_ = z_.sum();
}

double ResolventState::inverse_residual() const {
  const Eigen::MatrixXd m = system_matrix(*g_, alpha_);
  const Eigen::MatrixXd e =
      inverse_ * m - Eigen::MatrixXd::Identity(inverse_.rows(), inverse_.cols());
  return e.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace opdyn
