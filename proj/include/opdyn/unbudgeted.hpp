#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "opdyn/graph.hpp"
#include "opdyn/profile.hpp"

namespace opdyn {

/// Diagonal of X = A^{-1}. Every entry is >= 1, so alpha_i = 1/x_i is a valid
/// resistance. Box feasibility against BoxBounds is checked where it matters.
class XDiagonal {
 public:
  explicit XDiagonal(Eigen::VectorXd x);

  static XDiagonal from_resistance(const Eigen::VectorXd& alpha);
  /// Every entry at the middle of [1/u, 1/l].
  static XDiagonal midpoint(std::size_t n, const BoxBounds& b);

  const Eigen::VectorXd& values() const noexcept { return x_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(x_.size()); }
  Eigen::VectorXd resistance() const { return x_.cwiseInverse(); }
  bool within(const BoxBounds& b, double slack = 0.0) const;

 private:
  Eigen::VectorXd x_;
};

/// 1^T (X - (X - I) P)^{-1} s.
double objective_in_x(const Graph& g, const Eigen::VectorXd& s, const XDiagonal& x);

/// d/dx_i of objective_in_x: -w_i ((I - P) v)_i with Z v = s, Z^T w = 1.
Eigen::VectorXd gradient_in_x(const Graph& g, const Eigen::VectorXd& s, const XDiagonal& x);

struct ObjectiveWithGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// Both of the above from one factorization.
ObjectiveWithGradient evaluate_in_x(const Graph& g, const Eigen::VectorXd& s, const XDiagonal& x);

struct SolverOptions {
  double initial_step = 1.0;
  double step_shrink = 0.5;
  double sufficient_decrease = 1e-4;
  double gradient_tolerance = 1e-8;
  std::size_t max_iterations = 10'000;
  /// Keep the per-iteration objective sequence in the trace.
  bool record_history = false;
};

struct SolverTrace {
  std::size_t iterations = 0;
  /// ||x - clamp(x - grad)||_inf at the last iterate.
  double projected_gradient_norm = 0.0;
  bool converged = false;
  /// Objective after projected descent, before the endpoint sweep.
  double descent_objective = 0.0;
  std::vector<double> history;
};

struct InterventionPlan {
  Direction direction = Direction::maximize;
  std::vector<NodeId> target_set;
  Eigen::VectorXd alpha;
  double objective = 0.0;
  /// f under the original resistances, when those are known.
  std::optional<double> baseline_objective;
  SolverTrace trace;
  /// Objective after each greedy commit (budgeted selection only).
  std::vector<double> step_objectives;
};

/// Coordinate sweep in index order: each alpha_i is moved to whichever of
/// {lower, upper} is better (ties within 1e-12 go to upper) until a full
/// pass changes nothing by more than 1e-12. Output is all-endpoint.
Eigen::VectorXd extremize_coordinates(const Graph& g, const Eigen::VectorXd& s,
                                      const Eigen::VectorXd& alpha, const BoxBounds& b,
                                      Direction direction);

/// Projected gradient descent in X-space followed by extremize_coordinates.
InterventionPlan minimize_unbudgeted(const Graph& g, const Eigen::VectorXd& s, const BoxBounds& b,
                                     const SolverOptions& opts = {});
InterventionPlan minimize_unbudgeted(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                     const SolverOptions& opts = {});

/// Minimizes on 1 - s and reports n - f_min with the same assignment.
InterventionPlan maximize_unbudgeted(const Graph& g, const Eigen::VectorXd& s, const BoxBounds& b,
                                     const SolverOptions& opts = {});
InterventionPlan maximize_unbudgeted(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                     const SolverOptions& opts = {});

}  // namespace opdyn
