// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "opdyn/budgeted.hpp"
#include "opdyn/equilibrium.hpp"
#include "opdyn/generators.hpp"
#include "opdyn/unbudgeted.hpp"
#include "oracles.hpp"

using namespace opdyn;

namespace {

constexpr double kFixtureTol = 1e-9;
constexpr double kMarginalTol = 5e-3;
constexpr double kOracleRel = 1e-4;
constexpr double kComplementTol = 1e-9;
constexpr double kGradientRel = 1e-5;
constexpr double kFdStep = 1e-6;
constexpr double kRankOneTol = 1e-8;
constexpr double kSolverTol = 1e-8;
constexpr double kMcSigmas = 4.0;
constexpr int kMcTrials = 100;
constexpr int kMcRequired = 99;
constexpr std::size_t kMcWalks = 100000;
constexpr double kConvexityTol = 1e-10;
constexpr int kConvexityPoints = 100;
constexpr double kKarateRatio = 5.0;
constexpr double kSecondsPerBudget = 60.0;

const BoxBounds kBox(0.001, 1.0);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

OpinionProfile k3_fixture() { return {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d::Constant(0.1)}; }

double subset_value(const Graph& g, const OpinionProfile& p, std::vector<NodeId> t) {
  if (t.empty()) return total_opinion(g, p);
  return optimize_subset(g, p, kBox, t, Direction::maximize).objective;
}

struct K3Values {
  double f0, f1, f3, f12, f13, f123;
};

K3Values k3_values() {
  const Graph k3 = complete_graph(3);
  const auto p = k3_fixture();
  return {subset_value(k3, p, {}),     subset_value(k3, p, {0}),    subset_value(k3, p, {2}),
          subset_value(k3, p, {0, 1}), subset_value(k3, p, {0, 2}), subset_value(k3, p, {0, 1, 2})};
}

struct SmallInstance {
  Graph g;
  OpinionProfile p;
};

std::vector<SmallInstance> small_instances() {
  std::vector<SmallInstance> out;
  std::mt19937_64 rng(20240601);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 3 + seed % 6;
    out.push_back({oracle::random_shape(n, seed), oracle::random_profile(n, rng)});
  }
  return out;
}

Outcome k3_fixture_exact() {
  const double f = total_opinion(complete_graph(3), k3_fixture());
  return {std::abs(f - 1.0) <= kFixtureTol, fmt("f(empty) = %.12f", f)};
}

Outcome k3_marginals() {
  const auto v = k3_values();
  const double d3 = v.f3 - v.f0, d123 = v.f123 - v.f12, d13 = v.f13 - v.f1;
  const bool ok = std::abs(d3 - 1.493) <= kMarginalTol && std::abs(d123 - 0.191) <= kMarginalTol &&
                  std::abs(d13 - 0.168) <= kMarginalTol;
  return {ok, fmt("f({3})-f({}) = %.4f (want 1.493), f({1,2,3})-f({1,2}) = %.4f (want 0.191), "
                  "f({1,3})-f({1}) = %.4f (want 0.168); f({3}) = %.4f",
                  d3, d123, d13, v.f3)};
}

Outcome non_modularity() {
  const auto v = k3_values();
  const double d3 = v.f3 - v.f0, d123 = v.f123 - v.f12, d13 = v.f13 - v.f1;
  // Submodularity needs d13 >= d123; supermodularity needs d3 <= d13.
  const bool not_sub = d13 < d123;
  const bool not_super = d3 > d13;
  return {not_sub && not_super,
          fmt("%.4f < %.4f (not submodular), %.4f > %.4f (not supermodular)", d13, d123, d3, d13)};
}

Outcome oracle_equivalence() {
  int bad = 0, total = 0;
  double worst = 0.0;
  for (const auto& inst : small_instances()) {
    const auto& s = inst.p.innate();
    for (Direction dir : {Direction::minimize, Direction::maximize}) {
      const auto plan = dir == Direction::minimize ? minimize_unbudgeted(inst.g, s, kBox)
                                                   : maximize_unbudgeted(inst.g, s, kBox);
      const auto ref = oracle::brute_force_extreme(inst.g, s, kBox.lower(), kBox.upper(), dir);
      const double rel = std::abs(plan.objective - ref.objective) /
                         std::max({std::abs(plan.objective), std::abs(ref.objective), 1e-300});
      worst = std::max(worst, rel);
      ++total;
      if (!oracle::close_rel(plan.objective, ref.objective, kOracleRel)) ++bad;
    }
  }
  return {bad == 0, fmt("%d/%d runs on 60 instances match, worst relative gap %.2e", total - bad, total, worst)};
}

Outcome complement_identity() {
  double worst = 0.0;
  for (const auto& inst : small_instances()) {
    const auto& s = inst.p.innate();
    const auto n = static_cast<double>(s.size());
    const Eigen::VectorXd flipped = Eigen::VectorXd::Ones(s.size()) - s;
    const auto hi = maximize_unbudgeted(inst.g, s, kBox);
    const auto lo = minimize_unbudgeted(inst.g, flipped, kBox);
    worst = std::max(worst, std::abs(hi.objective + lo.objective - n));
    const double fresh = oracle::objective(inst.g, s, hi.alpha) + oracle::objective(inst.g, flipped, lo.alpha);
    worst = std::max(worst, std::abs(fresh - n));
  }
  return {worst <= kComplementTol, fmt("worst |max(s) + min(1-s) - n| = %.2e", worst)};
}

Outcome gradient_check() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  std::size_t components = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 3 + (seed * 7) % 28;
    const Graph g = oracle::random_shape(n, seed);
    const Eigen::VectorXd s = oracle::uniform_vector(n, 0, 1, rng);
    const XDiagonal x(oracle::uniform_vector(n, kBox.x_lower(), kBox.x_upper(), rng));
    const Eigen::VectorXd grad = gradient_in_x(g, s, x);
    const Eigen::Matrix<long double, Eigen::Dynamic, 1> xl = x.values().cast<long double>();
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
      auto xp = xl, xm = xl;
      xp[i] += kFdStep;
      xm[i] -= kFdStep;
      const long double diff = oracle::objective_in_x_ld(g, s, xp) - oracle::objective_in_x_ld(g, s, xm);
      const auto fd = static_cast<double>(diff / (2 * static_cast<long double>(kFdStep)));
      const double scale = std::max(std::abs(grad[i]), std::abs(fd));
      const double rel = scale == 0.0 ? 0.0 : std::abs(grad[i] - fd) / scale;
      worst = std::max(worst, rel);
      ++components;
    }
  }
  return {worst <= kGradientRel, fmt("worst relative error %.2e over %zu components", worst, components)};
}

Outcome sherman_morrison() {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  std::size_t evals = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t n = 20 + seed * 20;
    const Graph g = erdos_renyi(n, 0.1, seed);
    const OpinionProfile p = oracle::random_profile(n, rng);
    for (Direction dir : {Direction::maximize, Direction::minimize}) {
      GreedyOptions opts;
      opts.observer = [&](const GreedyState& st, NodeId node, double alpha, double f) {
        Eigen::VectorXd a = st.resolvent.resistance();
        a[node] = alpha;
        worst = std::max(worst, std::abs(f - oracle::objective(g, p.innate(), a)));
        ++evals;
      };
      greedy_select(g, p, kBox, 4, dir, opts);
    }
  }
  return {worst <= kRankOneTol, fmt("worst |rank-1 - fresh| = %.2e over %zu evaluations", worst, evals)};
}

Outcome solver_agreement() {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 5 + seed * 10;
    const Graph g = erdos_renyi(n, 0.2, seed);
    const OpinionProfile p = oracle::random_profile(n, rng);
    const auto direct = solve_equilibrium(g, p);
    const auto fp = iterate_dynamics(g, p, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), 1e-12);
    if (!fp.converged) return {false, fmt("fixed point did not converge on instance %llu", (unsigned long long)seed)};
    worst = std::max(worst, (direct.z - fp.z).lpNorm<Eigen::Infinity>());
  }
  const Graph g = erdos_renyi(30, 0.15, 123);
  const OpinionProfile p = oracle::random_profile(30, rng);
  const auto z = solve_equilibrium(g, p).z;
  int within = 0;
  std::uint64_t capped = 0;
  for (int t = 0; t < kMcTrials; ++t) {
    const auto node = static_cast<NodeId>(t % 30);
    const auto r = mc_estimate(g, p, node, kMcWalks, 5000 + static_cast<std::uint64_t>(t));
    capped += r.capped_walks;
    if (std::abs(r.estimate - z[node]) <= kMcSigmas * r.std_error) ++within;
  }
  return {worst <= kSolverTol && within >= kMcRequired,
          fmt("fixed point vs direct %.2e; Monte Carlo %d/%d within 4 stderr (%llu capped walks)", worst,
              within, kMcTrials, (unsigned long long)capped)};
}

Outcome equilibrium_bounds() {
  std::mt19937_64 rng(13);
  int violations = 0, exact_fail = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 3 + seed % 60;
    const Graph g = oracle::random_shape(n, seed);
    const OpinionProfile p = oracle::random_profile(n, rng);
    const auto z = solve_equilibrium(g, p).z;
    if (z.minCoeff() < p.innate().minCoeff() || z.maxCoeff() > p.innate().maxCoeff()) ++violations;
    const auto ones = solve_equilibrium(g, p.with_resistance(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n))));
    if (ones.z != p.innate()) ++exact_fail;
  }
  return {violations == 0 && exact_fail == 0,
          fmt("%d bound violations, %d inexact alpha = 1 solves over 100 instances", violations, exact_fail)};
}

Outcome convexity_pd() {
  std::mt19937_64 rng(17);
  int form_neg = 0, midpoint_bad = 0;
  double worst_form = 0.0, worst_gap = 0.0;
  for (int t = 0; t < kConvexityPoints; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t) % 10;
    const Graph g = oracle::random_shape(n, static_cast<std::uint64_t>(t));
    const Eigen::VectorXd s = oracle::uniform_vector(n, 0, 1, rng);
    const Eigen::VectorXd x1 = oracle::uniform_vector(n, kBox.x_lower(), kBox.x_upper(), rng);
    const Eigen::VectorXd x2 = oracle::uniform_vector(n, kBox.x_lower(), kBox.x_upper(), rng);
    const Eigen::VectorXd y = oracle::uniform_vector(n, -1, 1, rng);

    const Eigen::MatrixXd pm = oracle::dense_walk_matrix(g);
    const Eigen::MatrixXd xd = x1.asDiagonal();
    const Eigen::MatrixXd z = xd - (xd - Eigen::MatrixXd::Identity(s.size(), s.size())) * pm;
    const double form = y.dot(z * y);
    if (form < -kConvexityTol) ++form_neg;
    worst_form = std::min(worst_form, form);

    const double mid = objective_in_x(g, s, XDiagonal(0.5 * (x1 + x2)));
    const double chord = 0.5 * (objective_in_x(g, s, XDiagonal(x1)) + objective_in_x(g, s, XDiagonal(x2)));
    if (mid > chord + kConvexityTol) ++midpoint_bad;
    worst_gap = std::max(worst_gap, mid - chord);
  }
  return {form_neg == 0 && midpoint_bad == 0,
          fmt("quadratic form negative at %d/%d points (min %.3g); midpoint convexity violated at %d/%d "
              "(worst gap %.3g)",
              form_neg, kConvexityPoints, worst_form, midpoint_bad, kConvexityPoints, worst_gap)};
}

Outcome karate_ordering() {
  const Graph g = load_edge_list(std::string(OPDYN_DATA_DIR) + "/karate.txt");
  const std::size_t n = g.node_count();
  bool ok = true;
  double min_ratio = INFINITY;
  std::string rows;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const OpinionProfile p(gen_opinions(n, {}, seed), gen_resistance(n, seed + 100));
    const double f = total_opinion(g, p);
    const double lo = minimize_unbudgeted(g, p, kBox).objective;
    const double hi = maximize_unbudgeted(g, p, kBox).objective;
    ok = ok && lo <= f && f <= hi && hi / lo >= kKarateRatio;
    min_ratio = std::min(min_ratio, hi / lo);
    if (seed == 1) rows = fmt("seed 1: %.2f <= %.2f <= %.2f", lo, f, hi);
  }
  return {ok, fmt("n = %zu, %s; smallest max/min ratio over 5 seeds %.1f", n, rows.c_str(), min_ratio)};
}

Outcome desk_performance() {
  const Graph g = random_graph_with_edges(1000, 16000, 2024);
  const OpinionProfile p(gen_opinions(1000, {}, 1), gen_resistance(1000, 2));
  const auto t0 = std::chrono::steady_clock::now();
  const auto plan = greedy_select(g, p, kBox, 10, Direction::maximize);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double per_k = secs / 10.0;
  return {per_k <= kSecondsPerBudget && plan.target_set.size() == 10,
          fmt("n = 1000, m = %zu, k = 10: %.2f s total, %.2f s per k", g.edge_count(), secs, per_k)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"k3-fixture-exactness", k3_fixture_exact},
      {"k3-marginals", k3_marginals},
      {"non-sub-supermodularity", non_modularity},
      {"unbudgeted-oracle-equivalence", oracle_equivalence},
      {"complement-identity", complement_identity},
      {"gradient-finite-differences", gradient_check},
      {"rank-one-consistency", sherman_morrison},
      {"solver-agreement", solver_agreement},
      {"equilibrium-bounds", equilibrium_bounds},
      {"convexity-pd", convexity_pd},
      {"karate-ordering", karate_ordering},
      {"desk-performance", desk_performance},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s: %s [%.0f ms]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), ms);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
