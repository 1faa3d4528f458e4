#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "opdyn/graph.hpp"
#include "opdyn/profile.hpp"

namespace opdyn {

enum class SolveMethod { direct, fixed_point, monte_carlo };

std::string_view to_string(SolveMethod m);

/// Expressed opinions z and the total opinion f = sum(z).
struct EquilibriumResult {
  Eigen::VectorXd z;
  double objective = 0.0;
  SolveMethod method = SolveMethod::direct;
  /// ||M z - A s||_inf
  double residual = 0.0;
  std::size_t iterations = 0;
  /// False only for a fixed-point run that stopped at max_iters.
  bool converged = true;
};

/// Above this size solve_equilibrium switches from dense LU to iteration.
inline constexpr std::size_t kDenseSolveLimit = 4096;
inline constexpr double kFixedPointTolerance = 1e-12;
inline constexpr std::size_t kFixedPointMaxIters = 1'000'000;
inline constexpr std::uint64_t kMaxWalkSteps = 10'000'000;

/// Dense M = I - (I - A) P.
Eigen::MatrixXd system_matrix(const Graph& g, const Eigen::VectorXd& alpha);

/// ||M z - A s||_inf evaluated sparsely.
double equilibrium_residual(const Graph& g, const OpinionProfile& p, const Eigen::VectorXd& z);

/// Solves (I - (I - A) P) z = A s. Dense LU with partial pivoting up to
/// kDenseSolveLimit nodes, fixed-point iteration beyond. Throws SolverError
/// if the residual check fails.
EquilibriumResult solve_equilibrium(const Graph& g, const OpinionProfile& p);

/// Runs x <- A s + (I - A) P x from x0 until ||dx||_inf <= tol or max_iters.
/// A run that hits max_iters returns converged = false with the last iterate.
EquilibriumResult iterate_dynamics(const Graph& g, const OpinionProfile& p,
                                   const Eigen::VectorXd& x0, double tol = kFixedPointTolerance,
                                   std::size_t max_iters = kFixedPointMaxIters);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  /// Walks that reached the step cap; they are excluded from the estimate.
  std::size_t capped_walks = 0;
};

/// Monte-Carlo estimate of z_node by absorbing random walks. Walk w draws
/// from its own stream (seed, w), so the result does not depend on threading.
McEstimate mc_estimate(const Graph& g, const OpinionProfile& p, NodeId node, std::size_t walks,
                       std::uint64_t seed, std::uint64_t max_steps = kMaxWalkSteps);

/// f(s, alpha) = 1^T z.
double total_opinion(const Graph& g, const OpinionProfile& p);

}  // namespace opdyn
