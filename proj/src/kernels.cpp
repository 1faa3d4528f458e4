#include "opdyn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "opdyn/rng.hpp"

namespace opdyn::kernels {

namespace {

inline double neighbor_mean(const Graph& g, NodeId i, const double* x) {
  const auto nb = g.neighbors(i);
  double acc = 0.0;
  for (NodeId j : nb) acc += x[j];
  return acc / static_cast<double>(nb.size());
}

inline double step_one(const Graph& g, const double* s, const double* alpha, const double* x,
                       NodeId i) {
  return alpha[i] * s[i] + (1.0 - alpha[i]) * neighbor_mean(g, i, x);
}

}  // namespace

void walk_apply_serial(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x,
                       Eigen::Ref<Eigen::VectorXd> y) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  for (std::int64_t i = 0; i < n; ++i) y[i] = neighbor_mean(g, static_cast<NodeId>(i), x.data());
}

void walk_apply_omp(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x,
                    Eigen::Ref<Eigen::VectorXd> y) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  const double* xd = x.data();
  double* yd = y.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) yd[i] = neighbor_mean(g, static_cast<NodeId>(i), xd);
}

double dynamics_step_serial(const Graph& g, const OpinionProfile& p,
                            const Eigen::Ref<const Eigen::VectorXd>& x,
                            Eigen::Ref<Eigen::VectorXd> y) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  const double* s = p.innate().data();
  const double* a = p.resistance().data();
  double delta = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    y[i] = step_one(g, s, a, x.data(), static_cast<NodeId>(i));
    delta = std::max(delta, std::abs(y[i] - x[i]));
  }
  return delta;
}

double dynamics_step_omp(const Graph& g, const OpinionProfile& p,
                         const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) {
  const auto n = static_cast<std::int64_t>(g.node_count());
  const double* s = p.innate().data();
  const double* a = p.resistance().data();
  const double* xd = x.data();
  double* yd = y.data();
  double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(max : delta)
  for (std::int64_t i = 0; i < n; ++i) {
    yd[i] = step_one(g, s, a, xd, static_cast<NodeId>(i));
    delta = std::max(delta, std::abs(yd[i] - xd[i]));
  }
  return delta;
}

double absorbing_walk(const Graph& g, const OpinionProfile& p, NodeId start, std::uint64_t seed,
                      std::uint64_t walk_id, std::uint64_t max_steps) {
  auto rng = SplitMix64::stream(seed, walk_id);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double* s = p.innate().data();
  const double* a = p.resistance().data();
  NodeId at = start;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    // alpha = 1 absorbs without consuming randomness.
    if (a[at] >= 1.0 || unit(rng) < a[at]) return s[at];
    const auto nb = g.neighbors(at);
    std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
    at = nb[pick(rng)];
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void mc_walks_serial(const Graph& g, const OpinionProfile& p, NodeId start, std::uint64_t seed,
                     std::uint64_t max_steps, std::span<double> values) {
  for (std::size_t w = 0; w < values.size(); ++w) {
    values[w] = absorbing_walk(g, p, start, seed, w, max_steps);
  }
}

void mc_walks_omp(const Graph& g, const OpinionProfile& p, NodeId start, std::uint64_t seed,
                  std::uint64_t max_steps, std::span<double> values) {
  const auto count = static_cast<std::int64_t>(values.size());
  double* out = values.data();
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::int64_t w = 0; w < count; ++w) {
    out[w] = absorbing_walk(g, p, start, seed, static_cast<std::uint64_t>(w), max_steps);
  }
}

void candidate_objectives_serial(const ResolventState& state, std::span<const NodeId> candidates,
                                 double value, std::span<double> out) {
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    out[k] = state.objective_if(candidates[k], value).value_or(
        std::numeric_limits<double>::quiet_NaN());
  }
}

void candidate_objectives_omp(const ResolventState& state, std::span<const NodeId> candidates,
                              double value, std::span<double> out) {
  const auto count = static_cast<std::int64_t>(candidates.size());
  const NodeId* cand = candidates.data();
  double* res = out.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < count; ++k) {
    res[k] = state.objective_if(cand[k], value).value_or(std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace opdyn::kernels
