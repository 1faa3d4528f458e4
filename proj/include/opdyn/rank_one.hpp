#pragma once

#include <optional>

#include <Eigen/Core>

#include "opdyn/graph.hpp"
#include "opdyn/profile.hpp"

namespace opdyn {

/**
 * Dense inverse of the equilibrium system M = I - (I - A) P for one
 * resistance vector, with the quantities needed to re-evaluate the objective
 * after changing a single resistance.
 *
 * Changing alpha_i to a replaces row i of M by e_i - (1 - a) P_i, i.e.
 * M' = M + e_i v^T with v = (a - alpha_i) P_i^T, and the right-hand side A s
 * gains (a - alpha_i) s_i e_i. With c = M^{-1} e_i and r = 1^T M^{-1}:
 *
 *   f' = f + d s_i r_i - r_i * d P_i (z + d s_i c) / (1 + d P_i c),  d = a - alpha_i
 *
 * P_i touches only the neighbors of i, so a candidate costs O(deg(i)) once
 * the inverse and its column sums are known.
 */
class ResolventState {
 public:
  ResolventState(const Graph& g, const OpinionProfile& p);

  const Graph& graph() const noexcept { return *g_; }
  const Eigen::MatrixXd& inverse() const noexcept { return inverse_; }
  const Eigen::VectorXd& equilibrium() const noexcept { return z_; }
  const Eigen::VectorXd& column_sums() const noexcept { return column_sums_; }
  const Eigen::VectorXd& innate() const noexcept { return s_; }
  const Eigen::VectorXd& resistance() const noexcept { return alpha_; }
  double objective() const noexcept { return objective_; }

  /// Objective with alpha_node replaced by `value`, via the rank-1 formula.
  /// Empty when |1 + d P_i c| < 1e-12 (caller falls back to a fresh solve).
  std::optional<double> objective_if(NodeId node, double value) const;

  /// Commits alpha_node = value by a Sherman-Morrison update of the inverse.
  /// Falls back to refactor() when the update is degenerate.
  void update(NodeId node, double value);

  /// Sets alpha_node = value and rebuilds everything from a fresh factorization.
  void assign_and_refactor(NodeId node, double value);
  void refactor();

  /// ||M^{-1} M - I||_inf for the current resistances.
  double inverse_residual() const;

 private:
  const Graph* g_;
  Eigen::VectorXd s_;
  Eigen::VectorXd alpha_;
  Eigen::MatrixXd inverse_;
  Eigen::VectorXd z_;
  Eigen::VectorXd column_sums_;
  double objective_ = 0.0;
};

}  // namespace opdyn
