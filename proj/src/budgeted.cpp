#include "opdyn/budgeted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "opdyn/equilibrium.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/kernels.hpp"

namespace opdyn {

namespace {

constexpr double kEndpointTieTol = 1e-12;

void require_budget(std::size_t k) {
  if (k < 1) throw std::invalid_argument("budget k must be >= 1");
}

}  // namespace

GreedyState::GreedyState(const Graph& g, const OpinionProfile& p)
    : resolvent(g, p), is_committed(g.node_count(), false) {}

void GreedyState::commit(NodeId node, double alpha) {
  committed.emplace_back(node, alpha);
  is_committed[node] = true;
  resolvent.assign_and_refactor(node, alpha);
}

double marginal_gain(const GreedyState& state, const Graph& g, const OpinionProfile& p,
                     NodeId candidate, double new_alpha) {
  require_matching(g, p);
  if (candidate < 0 || static_cast<std::size_t>(candidate) >= g.node_count()) {
    throw std::invalid_argument("marginal_gain: candidate out of range");
  }
  if (state.is_committed[candidate]) {
    throw std::invalid_argument("marginal_gain: node " + std::to_string(candidate) +
                                " is already committed");
  }
  if (!(new_alpha > 0.0 && new_alpha <= 1.0)) {
    throw std::invalid_argument("marginal_gain: new_alpha must lie in (0, 1]");
  }
  const double base = state.current_objective();
  if (auto f = state.resolvent.objective_if(candidate, new_alpha)) return *f - base;
  const OpinionProfile committed(p.innate(), state.resolvent.resistance());
  return total_opinion(g, committed.with_resistance_at(candidate, new_alpha)) - base;
}

InterventionPlan greedy_select(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                               std::size_t k, Direction direction, const GreedyOptions& opts) {
  require_matching(g, p);
  require_budget(k);
  const std::size_t n = g.node_count();
  const std::size_t rounds = std::min(k, n);

  GreedyState state(g, p);
  InterventionPlan plan;
  plan.direction = direction;
  plan.baseline_objective = state.current_objective();
  const double sign = direction == Direction::maximize ? 1.0 : -1.0;

  std::vector<NodeId> candidates;
  std::vector<double> f_lo, f_hi;
  for (std::size_t round = 0; round < rounds; ++round) {
    candidates.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (!state.is_committed[v]) candidates.push_back(static_cast<NodeId>(v));
    f_lo.assign(candidates.size(), 0.0);
    f_hi.assign(candidates.size(), 0.0);
    if (opts.parallel) {
      kernels::candidate_objectives_omp(state.resolvent, candidates, b.lower(), f_lo);
      kernels::candidate_objectives_omp(state.resolvent, candidates, b.upper(), f_hi);
    } else {
      kernels::candidate_objectives_serial(state.resolvent, candidates, b.lower(), f_lo);
      kernels::candidate_objectives_serial(state.resolvent, candidates, b.upper(), f_hi);
    }

    const double base = state.current_objective();
    double best_gain = -std::numeric_limits<double>::infinity();
    NodeId winner = -1;
    double winner_alpha = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const NodeId v = candidates[c];
      for (auto [value, f] : {std::pair{b.lower(), &f_lo[c]}, std::pair{b.upper(), &f_hi[c]}}) {
        if (std::isnan(*f)) {
          const OpinionProfile cur(p.innate(), state.resolvent.resistance());
          *f = total_opinion(g, cur.with_resistance_at(v, value));
        }
        if (opts.observer) opts.observer(state, v, value, *f);
      }
      double pick = b.upper();
      double gain = sign * (f_hi[c] - base);
      if (std::abs(f_lo[c] - f_hi[c]) > kEndpointTieTol && sign * (f_lo[c] - base) > gain) {
        pick = b.lower();
        gain = sign * (f_lo[c] - base);
      }
      if (gain < 0.0) {
        pick = state.resolvent.resistance()[v];
        gain = 0.0;
      }
      if (gain > best_gain) {
        best_gain = gain;
        winner = v;
        winner_alpha = pick;
      }
    }
    state.commit(winner, winner_alpha);
    plan.target_set.push_back(winner);
    plan.step_objectives.push_back(state.current_objective());
  }

  plan.alpha = state.resolvent.resistance();
  plan.objective = total_opinion(g, p.with_resistance(plan.alpha));
  return plan;
}

std::vector<NodeId> baseline_top_opinion(const OpinionProfile& p, std::size_t k) {
  require_budget(k);
  const auto& s = p.innate();
  std::vector<NodeId> order(p.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return s[a] > s[b]; });
  order.resize(std::min(k, order.size()));
  return order;
}

std::vector<NodeId> baseline_score(const Graph& g, const OpinionProfile& p, std::size_t k) {
  require_matching(g, p);
  require_budget(k);
  const auto& s = p.innate();
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  const std::size_t n = g.node_count();
  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = g.neighbors(static_cast<NodeId>(i));
    double denom = 0.0;
    for (NodeId j : nb) denom += s[j];
    score[i] = denom == 0.0 ? std::numeric_limits<double>::infinity()
                            : (static_cast<double>(nb.size()) / two_m) * (s[i] / denom);
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const bool ia = std::isinf(score[a]);
    const bool ib = std::isinf(score[b]);
    if (ia && ib) return s[a] > s[b];
    if (ia != ib) return ia;
    return score[a] > score[b];
  });
  order.resize(std::min(k, n));
  return order;
}

InterventionPlan apply_targets(const Graph& g, const OpinionProfile& p, std::span<const NodeId> nodes,
                               double value, Direction direction) {
  require_matching(g, p);
  InterventionPlan plan;
  plan.direction = direction;
  plan.target_set.assign(nodes.begin(), nodes.end());
  plan.alpha = p.resistance();
  for (NodeId v : nodes) plan.alpha[v] = value;
  plan.baseline_objective = total_opinion(g, p);
  plan.objective = total_opinion(g, p.with_resistance(plan.alpha));
  return plan;
}

std::uint64_t exhaustive_count(std::size_t n, std::size_t k) {
  k = std::min(k, n);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i stays integral at every step.
    const std::uint64_t num = n - k + i;
    if (c > kMax / num) return kMax;
    c = c * num / i;
  }
  if (k >= 64 || c > (kMax >> k)) return kMax;
  return c << k;
}

namespace {

// Direct dense solve; the enumeration sizes here keep n small.
double fresh_objective(const Graph& g, const Eigen::VectorXd& s, const Eigen::VectorXd& alpha) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system_matrix(g, alpha));
  return lu.solve(alpha.cwiseProduct(s)).sum();
}

struct SubsetBest {
  Eigen::VectorXd alpha;
  double objective = 0.0;
};

SubsetBest best_assignment(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                           std::span<const NodeId> targets, Direction direction) {
  // Options per member: lower, upper, and the original if it is outside the box.
  std::vector<std::vector<double>> options;
  options.reserve(targets.size());
  for (NodeId v : targets) {
    std::vector<double> opt{b.lower(), b.upper()};
    const double a = p.resistance()[v];
    if (a < b.lower() || a > b.upper()) opt.push_back(a);
    options.push_back(std::move(opt));
  }
  std::vector<std::size_t> digit(targets.size(), 0);
  Eigen::VectorXd alpha = p.resistance();
  SubsetBest best;
  bool have = false;
  for (;;) {
    for (std::size_t t = 0; t < targets.size(); ++t) alpha[targets[t]] = options[t][digit[t]];
    const double f = fresh_objective(g, p.innate(), alpha);
    if (!have || improves(direction, f, best.objective)) {
      best.alpha = alpha;
      best.objective = f;
      have = true;
    }
    std::size_t t = 0;
    while (t < digit.size() && ++digit[t] == options[t].size()) digit[t++] = 0;
    if (t == digit.size()) break;
  }
  return best;
}

}  // namespace

InterventionPlan optimize_subset(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                 std::span<const NodeId> targets, Direction direction) {
  require_matching(g, p);
  for (NodeId v : targets) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.node_count()) {
      throw std::invalid_argument("optimize_subset: node " + std::to_string(v) + " out of range");
    }
  }
  SubsetBest best = best_assignment(g, p, b, targets, direction);
  InterventionPlan plan;
  plan.direction = direction;
  plan.target_set.assign(targets.begin(), targets.end());
  plan.alpha = std::move(best.alpha);
  plan.objective = best.objective;
  plan.baseline_objective = total_opinion(g, p);
  return plan;
}

InterventionPlan exhaustive_opt(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                std::size_t k, Direction direction) {
  require_matching(g, p);
  require_budget(k);
  const std::size_t n = g.node_count();
  const std::uint64_t count = exhaustive_count(n, k);
  if (count > kExhaustiveLimit) {
    throw RefusalError("exhaustive search over C(" + std::to_string(n) + ", " +
                           std::to_string(std::min(k, n)) + ") * 2^" +
                           std::to_string(std::min(k, n)) + " = " + std::to_string(count) +
                           " assignments exceeds the limit of " + std::to_string(kExhaustiveLimit),
                       count);
  }
  k = std::min(k, n);

  std::vector<NodeId> subset(k);
  std::iota(subset.begin(), subset.end(), NodeId{0});
  InterventionPlan plan;
  plan.direction = direction;
  bool have = false;
  for (;;) {
    SubsetBest cand = best_assignment(g, p, b, subset, direction);
    if (!have || improves(direction, cand.objective, plan.objective)) {
      plan.target_set = subset;
      plan.alpha = std::move(cand.alpha);
      plan.objective = cand.objective;
      have = true;
    }
    // Next k-combination of [0, n) in lexicographic order.
    std::size_t i = k;
    while (i > 0 && static_cast<std::size_t>(subset[i - 1]) == n - k + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  plan.baseline_objective = total_opinion(g, p);
  return plan;
}

}  // namespace opdyn
