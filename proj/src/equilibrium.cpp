#include "opdyn/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "opdyn/errors.hpp"
#include "opdyn/kernels.hpp"
#include "opdyn/summation.hpp"

namespace opdyn {

std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::direct:
      return "direct";
    case SolveMethod::fixed_point:
      return "fixed-point";
    case SolveMethod::monte_carlo:
      return "monte-carlo";
  }
  return "unknown";
}

Eigen::MatrixXd system_matrix(const Graph& g, const Eigen::VectorXd& alpha) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto nb = g.neighbors(static_cast<NodeId>(i));
    const double w = (1.0 - alpha[i]) / static_cast<double>(nb.size());
    for (NodeId j : nb) m(i, j) -= w;
  }
  return m;
}

double equilibrium_residual(const Graph& g, const OpinionProfile& p, const Eigen::VectorXd& z) {
  const Eigen::VectorXd pz = random_walk_apply(g, z);
  const auto& a = p.resistance().array();
  const Eigen::ArrayXd r = z.array() - (1.0 - a) * pz.array() - a * p.innate().array();
  return r.size() == 0 ? 0.0 : r.abs().maxCoeff();
}

namespace {

// The exact solution is a convex combination of innate opinions; clamping
// removes rounding that would step outside that hull.
void clamp_to_hull(const OpinionProfile& p, Eigen::VectorXd& z) {
  const double lo = p.innate().minCoeff();
  const double hi = p.innate().maxCoeff();
  z = z.cwiseMax(lo).cwiseMin(hi);
}

EquilibriumResult solve_dense(const Graph& g, const OpinionProfile& p) {
  const Eigen::MatrixXd m = system_matrix(g, p.resistance());
  const Eigen::VectorXd rhs = p.resistance().cwiseProduct(p.innate());
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  EquilibriumResult out;
  out.z = lu.solve(rhs);
  clamp_to_hull(p, out.z);
  out.method = SolveMethod::direct;
  out.iterations = 0;
  return out;
}

}  // namespace

EquilibriumResult solve_equilibrium(const Graph& g, const OpinionProfile& p) {
  require_matching(g, p);
  EquilibriumResult out;
  if (g.node_count() <= kDenseSolveLimit) {
    out = solve_dense(g, p);
  } else {
    out = iterate_dynamics(g, p, p.innate(), kFixedPointTolerance, kFixedPointMaxIters);
    if (!out.converged) {
      throw SolverError("fixed-point iteration did not converge in " +
                        std::to_string(out.iterations) + " iterations");
    }
  }
  out.objective = out.z.sum();
  out.residual = equilibrium_residual(g, p, out.z);
  const double scale = std::max(1.0, p.resistance().cwiseProduct(p.innate()).lpNorm<Eigen::Infinity>());
  if (!(out.residual <= 1e-10 * scale)) {
    throw SolverError("equilibrium residual " + std::to_string(out.residual) +
                      " exceeds 1e-10 * " + std::to_string(scale) + " (n = " +
                      std::to_string(g.node_count()) + ")");
  }
  return out;
}

EquilibriumResult iterate_dynamics(const Graph& g, const OpinionProfile& p,
                                   const Eigen::VectorXd& x0, double tol, std::size_t max_iters) {
  require_matching(g, p);
  if (static_cast<std::size_t>(x0.size()) != g.node_count()) {
    throw std::invalid_argument("iterate_dynamics: initial vector has wrong length");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("iterate_dynamics: tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("iterate_dynamics: max_iters must be >= 1");

  Eigen::VectorXd x = x0;
  Eigen::VectorXd next(x.size());
  EquilibriumResult out;
  out.method = SolveMethod::fixed_point;
  out.converged = false;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const double delta = kernels::dynamics_step_omp(g, p, x, next);
    x.swap(next);
    out.iterations = it;
    if (delta <= tol) {
      out.converged = true;
      break;
    }
  }
  out.z = std::move(x);
  out.objective = out.z.sum();
  out.residual = equilibrium_residual(g, p, out.z);
  return out;
}

McEstimate mc_estimate(const Graph& g, const OpinionProfile& p, NodeId node, std::size_t walks,
                       std::uint64_t seed, std::uint64_t max_steps) {
  require_matching(g, p);
  if (walks < 1) throw std::invalid_argument("mc_estimate: walks must be >= 1");
  if (node < 0 || static_cast<std::size_t>(node) >= g.node_count()) {
    throw std::invalid_argument("mc_estimate: node " + std::to_string(node) + " out of range");
  }
  std::vector<double> values(walks);
  kernels::mc_walks_omp(g, p, node, seed, max_steps, values);

  McEstimate out;
  const auto capped = std::remove_if(values.begin(), values.end(), [](double v) { return std::isnan(v); });
  out.capped_walks = static_cast<std::size_t>(values.end() - capped);
  values.erase(capped, values.end());
  if (values.empty()) {
    throw SolverError("every walk from node " + std::to_string(node) + " hit the step cap");
  }

  // Shift by the first sample: the mean of identical samples is then exact.
  const double shift = values.front();
  const auto count = static_cast<double>(values.size());
  std::vector<double> dev(values.size());
  std::transform(values.begin(), values.end(), dev.begin(), [&](double v) { return v - shift; });
  const double mean_dev = pairwise_sum(dev) / count;
  out.estimate = shift + mean_dev;
  if (values.size() > 1) {
    std::transform(dev.begin(), dev.end(), dev.begin(),
                   [&](double d) { return (d - mean_dev) * (d - mean_dev); });
    const double var = pairwise_sum(dev) / (count - 1.0);
    out.std_error = std::sqrt(var / count);
  }
  return out;
}

double total_opinion(const Graph& g, const OpinionProfile& p) {
  return solve_equilibrium(g, p).objective;
}

}  // namespace opdyn
