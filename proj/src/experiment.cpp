#include "opdyn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <map>
#include <tuple>

#include "opdyn/budgeted.hpp"
#include "opdyn/equilibrium.hpp"
#include "opdyn/errors.hpp"
#include "opdyn/profile_io.hpp"
#include "opdyn/rng.hpp"
#include "opdyn/unbudgeted.hpp"

namespace opdyn {

std::string_view to_string(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::equilibrium:
      return "equilibrium";
    case ExperimentMode::unbudgeted_min:
      return "unbudgeted-min";
    case ExperimentMode::unbudgeted_max:
      return "unbudgeted-max";
    case ExperimentMode::budgeted:
      return "budgeted";
  }
  return "unknown";
}

std::string_view to_string(BudgetMethod m) {
  switch (m) {
    case BudgetMethod::greedy:
      return "greedy";
    case BudgetMethod::baseline1:
      return "baseline1";
    case BudgetMethod::baseline2:
      return "baseline2";
    case BudgetMethod::exhaustive:
      return "exhaustive";
  }
  return "unknown";
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) { return base + trial; }
std::uint64_t opinion_seed(std::uint64_t seed) { return SplitMix64::mix(seed ^ 0x6f70696e696f6e73ULL); }
std::uint64_t resistance_seed(std::uint64_t seed) { return SplitMix64::mix(seed ^ 0x726573697374ULL); }

OpinionProfile build_profile(const ExperimentConfig& cfg, const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  Eigen::VectorXd s;
  if (cfg.opinions.path) {
    s = load_node_column(*cfg.opinions.path, n, 1);
    if (cfg.normalize_signed) s = normalize_signed(s);
  } else {
    s = gen_opinions(n, cfg.opinions.distribution, opinion_seed(seed));
  }
  Eigen::VectorXd alpha = cfg.resistance.path ? load_node_column(*cfg.resistance.path, n, 0)
                                              : gen_resistance(n, resistance_seed(seed));
  return OpinionProfile(std::move(s), std::move(alpha));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0, bool record) {
  if (!record) return 0.0;
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  const bool budgeted = cfg.mode == ExperimentMode::budgeted;
  if (budgeted != !cfg.budgets.empty()) {
    throw ConfigError(budgeted ? "budgeted mode needs a non-empty budget list"
                               : "a budget list is only valid in budgeted mode");
  }
  if (budgeted && cfg.methods.empty()) throw ConfigError("budgeted mode needs at least one method");
  for (std::size_t k : cfg.budgets) {
    if (k < 1) throw ConfigError("budgets must be >= 1");
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_trial(const std::optional<std::size_t>& t) {
  return t ? std::to_string(*t) : std::string("mean");
}

// Numbered trials sort before the "mean" row.
std::size_t trial_key(const std::optional<std::size_t>& t) {
  return t ? *t : std::numeric_limits<std::size_t>::max();
}

}  // namespace

std::string ExperimentReport::to_csv() const {
  std::string out;
  if (mode == ExperimentMode::budgeted) {
    out = "dataset,method,k,trial,seed,objective,wall_time_ms\n";
    for (const auto& r : budgeted) {
      out += r.dataset + ',' + std::string(to_string(r.method)) + ',' + std::to_string(r.k) + ',' +
             fmt_trial(r.trial) + ',' + std::to_string(r.seed) + ',' + fmt_double(r.objective) +
             ',' + fmt_double(r.wall_time_ms) + '\n';
    }
  } else {
    out = "dataset,mode,trial,seed,sum_s,sum_z,sum_z_opt,iterations,wall_time_ms\n";
    for (const auto& r : unbudgeted) {
      out += r.dataset + ',' + std::string(to_string(r.mode)) + ',' + fmt_trial(r.trial) + ',' +
             std::to_string(r.seed) + ',' + fmt_double(r.sum_s) + ',' + fmt_double(r.sum_z) + ',' +
             (r.sum_z_opt ? fmt_double(*r.sum_z_opt) : std::string()) + ',' +
             fmt_double(r.iterations) + ',' + fmt_double(r.wall_time_ms) + '\n';
    }
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const Graph g = load_edge_list(cfg.graph_path);
  const std::string dataset = cfg.graph_path.stem().string();
  const std::size_t n = g.node_count();

  ExperimentReport report;
  report.mode = cfg.mode;

  if (cfg.mode != ExperimentMode::budgeted) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = trial_seed(cfg.seed, t);
      const OpinionProfile p = build_profile(cfg, g, seed);
      const auto t0 = Clock::now();
      UnbudgetedRow row;
      row.dataset = dataset;
      row.mode = cfg.mode;
      row.trial = t;
      row.seed = seed;
      row.sum_s = p.innate().sum();
      const EquilibriumResult eq = solve_equilibrium(g, p);
      row.sum_z = eq.objective;
      row.iterations = static_cast<double>(eq.iterations);
      if (cfg.mode == ExperimentMode::unbudgeted_min || cfg.mode == ExperimentMode::unbudgeted_max) {
        const InterventionPlan plan = cfg.mode == ExperimentMode::unbudgeted_min
                                          ? minimize_unbudgeted(g, p, cfg.bounds)
                                          : maximize_unbudgeted(g, p, cfg.bounds);
        row.sum_z_opt = plan.objective;
        row.iterations = static_cast<double>(plan.trace.iterations);
      }
      row.wall_time_ms = elapsed_ms(t0, cfg.record_timing);
      report.unbudgeted.push_back(std::move(row));
    }
    UnbudgetedRow mean;
    mean.dataset = dataset;
    mean.mode = cfg.mode;
    mean.seed = cfg.seed;
    const double count = static_cast<double>(cfg.trials);
    bool has_opt = true;
    double opt_sum = 0.0;
    for (const auto& r : report.unbudgeted) {
      mean.sum_s += r.sum_s / count;
      mean.sum_z += r.sum_z / count;
      mean.iterations += r.iterations / count;
      mean.wall_time_ms += r.wall_time_ms / count;
      if (r.sum_z_opt) opt_sum += *r.sum_z_opt / count;
      else has_opt = false;
    }
    if (has_opt) mean.sum_z_opt = opt_sum;
    report.unbudgeted.push_back(std::move(mean));
    return report;
  }

  const std::size_t max_k = *std::max_element(cfg.budgets.begin(), cfg.budgets.end());
  const double baseline_alpha = cfg.baseline_cap_at_upper ? cfg.bounds.upper() : 1.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = trial_seed(cfg.seed, t);
    const OpinionProfile p = build_profile(cfg, g, seed);
    for (BudgetMethod method : cfg.methods) {
      auto emit = [&](std::size_t k, double objective, double ms) {
        report.budgeted.push_back(BudgetedRow{dataset, method, k, t, seed, objective, ms});
      };
      switch (method) {
        case BudgetMethod::greedy: {
          // One run to the largest budget; smaller budgets are its prefixes.
          const auto t0 = Clock::now();
          const InterventionPlan plan = greedy_select(g, p, cfg.bounds, max_k, cfg.budget_direction);
          const double ms = elapsed_ms(t0, cfg.record_timing);
          for (std::size_t k : cfg.budgets) emit(k, plan.step_objectives[std::min(k, n) - 1], ms);
          break;
        }
        case BudgetMethod::baseline1:
        case BudgetMethod::baseline2:
          for (std::size_t k : cfg.budgets) {
            const auto t0 = Clock::now();
            const auto nodes = method == BudgetMethod::baseline1 ? baseline_top_opinion(p, k)
                                                                 : baseline_score(g, p, k);
            const InterventionPlan plan =
                apply_targets(g, p, nodes, baseline_alpha, cfg.budget_direction);
            emit(k, plan.objective, elapsed_ms(t0, cfg.record_timing));
          }
          break;
        case BudgetMethod::exhaustive:
          for (std::size_t k : cfg.budgets) {
            const auto t0 = Clock::now();
            const InterventionPlan plan = exhaustive_opt(g, p, cfg.bounds, k, cfg.budget_direction);
            emit(k, plan.objective, elapsed_ms(t0, cfg.record_timing));
          }
          break;
      }
    }
  }

  // Averages per (method, k).
  std::map<std::pair<std::string_view, std::size_t>, BudgetedRow> means;
  const double count = static_cast<double>(cfg.trials);
  for (const auto& r : report.budgeted) {
    auto [it, fresh] = means.try_emplace({to_string(r.method), r.k});
    BudgetedRow& m = it->second;
    if (fresh) {
      m.dataset = r.dataset;
      m.method = r.method;
      m.k = r.k;
      m.trial = std::nullopt;
      m.seed = cfg.seed;
    }
    m.objective += r.objective / count;
    m.wall_time_ms += r.wall_time_ms / count;
  }
  for (auto& [key, row] : means) report.budgeted.push_back(std::move(row));

  std::stable_sort(report.budgeted.begin(), report.budgeted.end(),
                   [](const BudgetedRow& a, const BudgetedRow& b) {
                     return std::make_tuple(std::string_view(a.dataset), to_string(a.method), a.k,
                                            trial_key(a.trial)) <
                            std::make_tuple(std::string_view(b.dataset), to_string(b.method), b.k,
                                            trial_key(b.trial));
                   });
  return report;
}

}  // namespace opdyn
