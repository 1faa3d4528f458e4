#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "opdyn/generators.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/profile.hpp"

namespace opdyn {

enum class ExperimentMode { equilibrium, unbudgeted_min, unbudgeted_max, budgeted };
enum class BudgetMethod { greedy, baseline1, baseline2, exhaustive };

std::string_view to_string(ExperimentMode m);
std::string_view to_string(BudgetMethod m);

/// Where a per-node vector comes from: a node table on disk or a generator.
/// For a three-column profile file, opinions read column 1 and resistances
/// column 2; a two-column file supplies column 1 to either.
struct VectorSource {
  std::optional<std::filesystem::path> path;
  OpinionDistribution distribution;  // opinions only; resistance is always U[0.001, 1]
};

struct ExperimentConfig {
  std::filesystem::path graph_path;
  VectorSource opinions;
  VectorSource resistance;
  BoxBounds bounds{kResistanceMin, 1.0};
  ExperimentMode mode = ExperimentMode::equilibrium;
  std::vector<BudgetMethod> methods;
  std::vector<std::size_t> budgets;
  Direction budget_direction = Direction::maximize;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool normalize_signed = false;
  /// Baselines set targeted alpha to 1 unless this caps them at bounds.upper().
  bool baseline_cap_at_upper = false;
  /// When false, wall_time_ms is written as 0 so reruns are byte-identical.
  bool record_timing = true;
};

/// Per-trial (trial >= 0) or averaged (trial == std::nullopt) row.
struct UnbudgetedRow {
  std::string dataset;
  ExperimentMode mode = ExperimentMode::equilibrium;
  std::optional<std::size_t> trial;
  std::uint64_t seed = 0;
  double sum_s = 0.0;
  double sum_z = 0.0;
  std::optional<double> sum_z_opt;
  double iterations = 0.0;
  double wall_time_ms = 0.0;
};

struct BudgetedRow {
  std::string dataset;
  BudgetMethod method = BudgetMethod::greedy;
  std::size_t k = 0;
  std::optional<std::size_t> trial;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double wall_time_ms = 0.0;
};

struct ExperimentReport {
  ExperimentMode mode = ExperimentMode::equilibrium;
  std::vector<UnbudgetedRow> unbudgeted;
  std::vector<BudgetedRow> budgeted;

  /// Fixed header per mode; rows in canonical (dataset, method, k, trial) order.
  std::string to_csv() const;
};

/// Seed actually used for trial t, and the derived opinion / resistance seeds.
std::uint64_t trial_seed(std::uint64_t base, std::size_t trial);
std::uint64_t opinion_seed(std::uint64_t trial_seed);
std::uint64_t resistance_seed(std::uint64_t trial_seed);

/// Builds the profile for one trial from the config's sources.
OpinionProfile build_profile(const ExperimentConfig& cfg, const Graph& g, std::uint64_t seed);

/// Runs the configured experiment. Throws ConfigError for inconsistent
/// configuration, ParseError/ValidationError for bad inputs and RefusalError
/// from the exhaustive method.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace opdyn
