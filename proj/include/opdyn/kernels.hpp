#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// variant; both must produce bit-identical output (tests/test_kernels.cpp).
// Without OpenMP the _omp variants run serially.

#include <cstddef>
#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "opdyn/graph.hpp"
#include "opdyn/profile.hpp"
#include "opdyn/rank_one.hpp"

namespace opdyn::kernels {

// y = P x
void walk_apply_serial(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x,
                       Eigen::Ref<Eigen::VectorXd> y);
void walk_apply_omp(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x,
                    Eigen::Ref<Eigen::VectorXd> y);

// One step of the averaging dynamics: y = A s + (I - A) P x.
// Returns ||y - x||_inf.
double dynamics_step_serial(const Graph& g, const OpinionProfile& p,
                            const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y);
double dynamics_step_omp(const Graph& g, const OpinionProfile& p,
                         const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y);

/// Absorbing walk number `walk_id` from `start`: at node j absorb with
/// probability alpha_j collecting s_j, else step to a uniform neighbor.
/// Returns the collected value, or NaN if the walk hit `max_steps`.
double absorbing_walk(const Graph& g, const OpinionProfile& p, NodeId start, std::uint64_t seed,
                      std::uint64_t walk_id, std::uint64_t max_steps);

// values[w] = absorbing_walk(..., walk_id = w, ...) for every w.
void mc_walks_serial(const Graph& g, const OpinionProfile& p, NodeId start, std::uint64_t seed,
                     std::uint64_t max_steps, std::span<double> values);
void mc_walks_omp(const Graph& g, const OpinionProfile& p, NodeId start, std::uint64_t seed,
                  std::uint64_t max_steps, std::span<double> values);

// out[k] = state.objective_if(candidates[k], value), NaN when degenerate.
void candidate_objectives_serial(const ResolventState& state, std::span<const NodeId> candidates,
                                 double value, std::span<double> out);
void candidate_objectives_omp(const ResolventState& state, std::span<const NodeId> candidates,
                              double value, std::span<double> out);

}  // namespace opdyn::kernels
