#include "opdyn/unbudgeted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "opdyn/equilibrium.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/rank_one.hpp"

namespace opdyn {

XDiagonal::XDiagonal(Eigen::VectorXd x) : x_(std::move(x)) {
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    if (!(x_[i] >= 1.0) || !std::isfinite(x_[i])) {
      throw std::invalid_argument("XDiagonal: entry " + std::to_string(i) + " = " +
                                  std::to_string(x_[i]) + " is not a finite value >= 1");
    }
  }
}

XDiagonal XDiagonal::from_resistance(const Eigen::VectorXd& alpha) {
  return XDiagonal(alpha.cwiseInverse());
}

XDiagonal XDiagonal::midpoint(std::size_t n, const BoxBounds& b) {
  return XDiagonal(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                             0.5 * (b.x_lower() + b.x_upper())));
}

bool XDiagonal::within(const BoxBounds& b, double slack) const {
  return x_.size() == 0 ||
         (x_.minCoeff() >= b.x_lower() - slack && x_.maxCoeff() <= b.x_upper() + slack);
}

namespace {

void require_opinions(const Graph& g, const Eigen::VectorXd& s) {
  if (static_cast<std::size_t>(s.size()) != g.node_count()) {
    throw std::invalid_argument("opinion vector length " + std::to_string(s.size()) +
                                " does not match node count " + std::to_string(g.node_count()));
  }
  if (s.size() > 0 && (s.minCoeff() < 0.0 || s.maxCoeff() > 1.0)) {
    throw std::invalid_argument("innate opinions must lie in [0, 1]");
  }
}

// Z = X - (X - I) P
Eigen::MatrixXd x_system_matrix(const Graph& g, const Eigen::VectorXd& x) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i, i) = x[i];
    const auto nb = g.neighbors(static_cast<NodeId>(i));
    const double w = (x[i] - 1.0) / static_cast<double>(nb.size());
    for (NodeId j : nb) z(i, j) -= w;
  }
  return z;
}

void require_x(const Graph& g, const XDiagonal& x) {
  if (x.size() != g.node_count()) {
    throw std::invalid_argument("XDiagonal length does not match node count");
  }
}

Eigen::VectorXd project(const Eigen::VectorXd& x, const BoxBounds& b) {
  return x.cwiseMax(b.x_lower()).cwiseMin(b.x_upper());
}

}  // namespace

double objective_in_x(const Graph& g, const Eigen::VectorXd& s, const XDiagonal& x) {
  require_opinions(g, s);
  require_x(g, x);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(x_system_matrix(g, x.values()));
  return lu.solve(s).sum();
}

ObjectiveWithGradient evaluate_in_x(const Graph& g, const Eigen::VectorXd& s, const XDiagonal& x) {
  require_opinions(g, s);
  require_x(g, x);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(x_system_matrix(g, x.values()));
  const Eigen::VectorXd v = lu.solve(s);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.size());
  const Eigen::VectorXd w = lu.transpose().solve(ones);
  const Eigen::VectorXd lv = v - random_walk_apply(g, v);
  return {v.sum(), -w.cwiseProduct(lv)};
}

Eigen::VectorXd gradient_in_x(const Graph& g, const Eigen::VectorXd& s, const XDiagonal& x) {
  return evaluate_in_x(g, s, x).gradient;
}

Eigen::VectorXd extremize_coordinates(const Graph& g, const Eigen::VectorXd& s,
                                      const Eigen::VectorXd& alpha, const BoxBounds& b,
                                      Direction direction) {
  require_opinions(g, s);
  constexpr double kTol = 1e-12;
  const double lo = b.lower();
  const double hi = b.upper();
  ResolventState state(g, OpinionProfile(s, alpha));

  auto evaluate = [&](NodeId i, double value) {
    if (auto f = state.objective_if(i, value)) return *f;
    return total_opinion(g, OpinionProfile(s, state.resistance()).with_resistance_at(i, value));
  };

  const auto n = static_cast<NodeId>(g.node_count());
  for (;;) {
    bool improved = false;
    for (NodeId i = 0; i < n; ++i) {
      const double current = state.resistance()[i];
      const double f_lo = evaluate(i, lo);
      const double f_hi = evaluate(i, hi);
      double pick = hi;
      double f_pick = f_hi;
      if (std::abs(f_lo - f_hi) > kTol && improves(direction, f_lo, f_hi)) {
        pick = lo;
        f_pick = f_lo;
      }
      if (pick == current) continue;
      const bool at_endpoint = current == lo || current == hi;
      if (improves(direction, f_pick, state.objective(), kTol)) {
        improved = true;
        state.update(i, pick);
      } else if (!at_endpoint) {
        state.update(i, pick);
      }
    }
    state.refactor();
    if (!improved) break;
  }
  return state.resistance();
}

InterventionPlan minimize_unbudgeted(const Graph& g, const Eigen::VectorXd& s, const BoxBounds& b,
                                     const SolverOptions& opts) {
  require_opinions(g, s);
  const std::size_t n = g.node_count();
  InterventionPlan plan;
  plan.direction = Direction::minimize;
  plan.target_set.resize(n);
  std::iota(plan.target_set.begin(), plan.target_set.end(), NodeId{0});

  Eigen::VectorXd x = XDiagonal::midpoint(n, b).values();
  ObjectiveWithGradient cur = evaluate_in_x(g, s, XDiagonal(x));
  SolverTrace& trace = plan.trace;
  if (opts.record_history) trace.history.push_back(cur.value);

  for (;;) {
    trace.projected_gradient_norm = (x - project(x - cur.gradient, b)).lpNorm<Eigen::Infinity>();
    if (trace.projected_gradient_norm <= opts.gradient_tolerance) {
      trace.converged = true;
      break;
    }
    if (trace.iterations >= opts.max_iterations) break;

    // Armijo backtracking along the projection arc.
    double step = opts.initial_step;
    bool accepted = false;
    Eigen::VectorXd trial;
    double f_trial = 0.0;
    while (step >= 1e-20) {
      trial = project(x - step * cur.gradient, b);
      f_trial = objective_in_x(g, s, XDiagonal(trial));
      if (f_trial <= cur.value + opts.sufficient_decrease * cur.gradient.dot(trial - x)) {
        accepted = true;
        break;
      }
      step *= opts.step_shrink;
    }
    ++trace.iterations;
    if (!accepted) {
      // No representable descent left; treat as stationary.
      trace.converged = true;
      break;
    }
    x = std::move(trial);
    cur = evaluate_in_x(g, s, XDiagonal(x));
    if (opts.record_history) trace.history.push_back(cur.value);
  }
  trace.descent_objective = cur.value;

  plan.alpha = extremize_coordinates(g, s, x.cwiseInverse(), b, Direction::minimize);
  plan.objective = total_opinion(g, OpinionProfile(s, plan.alpha));
  return plan;
}

InterventionPlan minimize_unbudgeted(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                     const SolverOptions& opts) {
  require_matching(g, p);
  InterventionPlan plan = minimize_unbudgeted(g, p.innate(), b, opts);
  plan.baseline_objective = total_opinion(g, p);
  return plan;
}

InterventionPlan maximize_unbudgeted(const Graph& g, const Eigen::VectorXd& s, const BoxBounds& b,
                                     const SolverOptions& opts) {
  require_opinions(g, s);
  const Eigen::VectorXd complement = (1.0 - s.array()).matrix();
  InterventionPlan plan = minimize_unbudgeted(g, complement, b, opts);
  plan.direction = Direction::maximize;
  plan.objective = static_cast<double>(g.node_count()) - plan.objective;
  return plan;
}

InterventionPlan maximize_unbudgeted(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                     const SolverOptions& opts) {
  require_matching(g, p);
  InterventionPlan plan = maximize_unbudgeted(g, p.innate(), b, opts);
  plan.baseline_objective = total_opinion(g, p);
  return plan;
}

}  // namespace opdyn
