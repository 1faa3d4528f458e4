#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "opdyn/graph.hpp"
#include "opdyn/profile.hpp"
#include "opdyn/rank_one.hpp"
#include "opdyn/unbudgeted.hpp"

namespace opdyn {

/// Committed greedy selections plus the inverse for the committed profile.
struct GreedyState {
  GreedyState(const Graph& g, const OpinionProfile& p);

  std::vector<std::pair<NodeId, double>> committed;
  ResolventState resolvent;
  std::vector<bool> is_committed;

  double current_objective() const noexcept { return resolvent.objective(); }
  /// Records (node, alpha) and rebuilds the inverse from a fresh factorization.
  void commit(NodeId node, double alpha);
};

/// f(committed + {candidate at new_alpha}) - f(committed), by a rank-1
/// correction of the maintained inverse. Falls back to a fresh solve when the
/// update denominator vanishes.
double marginal_gain(const GreedyState& state, const Graph& g, const OpinionProfile& p,
                     NodeId candidate, double new_alpha);

struct GreedyOptions {
  bool parallel = true;
  /// Called for every candidate evaluation with (node, alpha, objective).
  /// Invoked serially, in candidate order, after the round's kernel.
  std::function<void(const GreedyState&, NodeId, double, double)> observer;
};

/// Greedy target selection: each round evaluates every uncommitted node at
/// both endpoints and commits the largest gain (ties: smallest id, then
/// upper). A node whose best endpoint loses keeps its original alpha.
/// Selects exactly min(k, n) nodes.
InterventionPlan greedy_select(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                               std::size_t k, Direction direction, const GreedyOptions& opts = {});

/// k nodes with largest s_i, ties by smallest id. Rank order.
std::vector<NodeId> baseline_top_opinion(const OpinionProfile& p, std::size_t k);

/// Top k by (deg(i)/2m) * s_i / sum_{j in N(i)} s_j. A zero neighbor sum is an
/// infinite score; those nodes come first ordered by s_i desc then id.
std::vector<NodeId> baseline_score(const Graph& g, const OpinionProfile& p, std::size_t k);

/// Sets alpha = value on `nodes` and evaluates.
InterventionPlan apply_targets(const Graph& g, const OpinionProfile& p, std::span<const NodeId> nodes,
                               double value, Direction direction = Direction::maximize);

inline constexpr std::uint64_t kExhaustiveLimit = 1'000'000;

/// C(n, k) * 2^k, saturating at UINT64_MAX.
std::uint64_t exhaustive_count(std::size_t n, std::size_t k);

/// Best endpoint assignment for a fixed target set. A member whose original
/// alpha lies outside [l, u] may also keep it.
InterventionPlan optimize_subset(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                 std::span<const NodeId> targets, Direction direction);

/// Exact optimum over target sets of size <= k. Only sets of size min(k, n)
/// are enumerated: a smaller set is dominated by any superset, since an
/// extra member's best endpoint is no worse than its original alpha when
/// that lies in [l, u], and keeping the original is enumerated otherwise.
/// Throws RefusalError when exhaustive_count exceeds kExhaustiveLimit.
InterventionPlan exhaustive_opt(const Graph& g, const OpinionProfile& p, const BoxBounds& b,
                                std::size_t k, Direction direction);

}  // namespace opdyn
