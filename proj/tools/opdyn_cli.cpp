// Command-line front end for the opinion-optimization toolkit.
//
// Exit codes: 0 success, 2 configuration error, 3 input parse error,
// 4 refusal (oversized exhaustive search).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opdyn/errors.hpp"
#include "opdyn/experiment.hpp"
#include "opdyn/generators.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/profile_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitRefusal = 4;

struct CommonFlags {
  std::string graph;
  std::string opinions = "gen";
  std::string resistance = "gen";
  std::string dist = "uniform";
  double slope = 2.0;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::string out;
  bool normalize_signed = false;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--graph", f.graph, "Edge-list file")->required();
  cmd->add_option("--opinions", f.opinions, "Node table with innate opinions, or 'gen'");
  cmd->add_option("--resistance", f.resistance, "Node table with resistances, or 'gen'");
  cmd->add_option("--dist", f.dist, "Opinion generator when --opinions gen")
      ->check(CLI::IsMember({"uniform", "powerlaw"}));
  cmd->add_option("--slope", f.slope, "Power-law density exponent");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--trials", f.trials, "Number of trials");
  cmd->add_option("--out", f.out, "CSV output path (stdout when omitted)");
  cmd->add_flag("--normalize-signed", f.normalize_signed,
                "Map opinions from [-1,1] to [0,1] by (s+1)/2");
  cmd->add_flag("--no-timing", f.no_timing, "Write wall_time_ms as 0");
}

opdyn::ExperimentConfig make_config(const CommonFlags& f) {
  opdyn::ExperimentConfig cfg;
  cfg.graph_path = f.graph;
  if (f.opinions != "gen") cfg.opinions.path = f.opinions;
  cfg.opinions.distribution.kind = f.dist == "powerlaw" ? opdyn::OpinionDistribution::Kind::powerlaw
                                                        : opdyn::OpinionDistribution::Kind::uniform;
  cfg.opinions.distribution.slope = f.slope;
  if (cfg.opinions.distribution.kind == opdyn::OpinionDistribution::Kind::powerlaw &&
      !(f.slope > 1.0)) {
    throw opdyn::ConfigError("--slope must be > 1");
  }
  if (f.resistance != "gen") cfg.resistance.path = f.resistance;
  cfg.seed = f.seed;
  cfg.trials = f.trials;
  cfg.normalize_signed = f.normalize_signed;
  cfg.record_timing = !f.no_timing;
  return cfg;
}

opdyn::BoxBounds make_bounds(double lower, double upper) {
  try {
    return opdyn::BoxBounds(lower, upper);
  } catch (const opdyn::ValidationError& e) {
    throw opdyn::ConfigError(e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw opdyn::ConfigError("cannot write " + out);
  f << text;
}

std::size_t node_count_for(const std::optional<std::size_t>& n, const std::string& graph) {
  if (n) {
    if (*n < 1) throw opdyn::ConfigError("--n must be >= 1");
    return *n;
  }
  if (graph.empty()) throw opdyn::ConfigError("give either --n or --graph");
  return opdyn::load_edge_list(graph).node_count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opinion dynamics equilibria and susceptibility interventions"};
  app.require_subcommand(1);

  CommonFlags eq_flags;
  auto* eq = app.add_subcommand("equilibrium", "Total equilibrium opinion per trial");
  add_common(eq, eq_flags);

  CommonFlags ub_flags;
  std::string direction = "min";
  double lower = opdyn::kResistanceMin, upper = 1.0;
  auto* ub = app.add_subcommand("optimize-unbudgeted", "Optimal resistances for every node");
  add_common(ub, ub_flags);
  ub->add_option("--direction", direction)->check(CLI::IsMember({"min", "max"}));
  ub->add_option("--lower", lower, "Lower resistance bound");
  ub->add_option("--upper", upper, "Upper resistance bound");

  CommonFlags bu_flags;
  std::vector<std::size_t> k_list;
  std::vector<std::string> methods{"greedy"};
  std::string bu_direction = "max";
  double bu_lower = opdyn::kResistanceMin, bu_upper = 1.0;
  bool cap_at_upper = false;
  auto* bu = app.add_subcommand("optimize-budgeted", "Budget sweep over target-set methods");
  add_common(bu, bu_flags);
  bu->add_option("--k-list", k_list, "Budgets, comma separated")->required()->delimiter(',');
  bu->add_option("--method", methods, "greedy, baseline1, baseline2, exhaustive (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"greedy", "baseline1", "baseline2", "exhaustive"}));
  bu->add_option("--direction", bu_direction)->check(CLI::IsMember({"min", "max"}));
  bu->add_option("--lower", bu_lower, "Lower resistance bound");
  bu->add_option("--upper", bu_upper, "Upper resistance bound");
  bu->add_flag("--cap-at-upper", cap_at_upper, "Baselines set alpha to --upper instead of 1");

  std::optional<std::size_t> go_n;
  std::string go_graph, go_dist = "uniform", go_out;
  double go_slope = 2.0;
  std::uint64_t go_seed = 0;
  auto* go = app.add_subcommand("gen-opinions", "Write generated innate opinions");
  go->add_option("--n", go_n, "Number of nodes");
  go->add_option("--graph", go_graph, "Take the node count from this edge list");
  go->add_option("--dist", go_dist)->check(CLI::IsMember({"uniform", "powerlaw"}));
  go->add_option("--slope", go_slope, "Power-law density exponent");
  go->add_option("--seed", go_seed);
  go->add_option("--out", go_out);

  std::optional<std::size_t> gr_n;
  std::string gr_graph, gr_out;
  std::uint64_t gr_seed = 0;
  auto* gr = app.add_subcommand("gen-resistance", "Write resistances drawn from U[0.001, 1]");
  gr->add_option("--n", gr_n, "Number of nodes");
  gr->add_option("--graph", gr_graph, "Take the node count from this edge list");
  gr->add_option("--seed", gr_seed);
  gr->add_option("--out", gr_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*eq) {
      auto cfg = make_config(eq_flags);
      cfg.mode = opdyn::ExperimentMode::equilibrium;
      emit(opdyn::run_experiment(cfg).to_csv(), eq_flags.out);
    } else if (*ub) {
      auto cfg = make_config(ub_flags);
      cfg.mode = direction == "min" ? opdyn::ExperimentMode::unbudgeted_min
                                    : opdyn::ExperimentMode::unbudgeted_max;
      cfg.bounds = make_bounds(lower, upper);
      emit(opdyn::run_experiment(cfg).to_csv(), ub_flags.out);
    } else if (*bu) {
      auto cfg = make_config(bu_flags);
      cfg.mode = opdyn::ExperimentMode::budgeted;
      cfg.bounds = make_bounds(bu_lower, bu_upper);
      cfg.budgets = k_list;
      cfg.budget_direction =
          bu_direction == "min" ? opdyn::Direction::minimize : opdyn::Direction::maximize;
      cfg.baseline_cap_at_upper = cap_at_upper;
      for (const auto& m : methods) {
        if (m == "greedy") cfg.methods.push_back(opdyn::BudgetMethod::greedy);
        else if (m == "baseline1") cfg.methods.push_back(opdyn::BudgetMethod::baseline1);
        else if (m == "baseline2") cfg.methods.push_back(opdyn::BudgetMethod::baseline2);
        else cfg.methods.push_back(opdyn::BudgetMethod::exhaustive);
      }
      emit(opdyn::run_experiment(cfg).to_csv(), bu_flags.out);
    } else if (*go) {
      opdyn::OpinionDistribution dist;
      dist.kind = go_dist == "powerlaw" ? opdyn::OpinionDistribution::Kind::powerlaw
                                        : opdyn::OpinionDistribution::Kind::uniform;
      dist.slope = go_slope;
      if (dist.kind == opdyn::OpinionDistribution::Kind::powerlaw && !(go_slope > 1.0)) {
        throw opdyn::ConfigError("--slope must be > 1");
      }
      std::ostringstream os;
      opdyn::write_node_values(os, opdyn::gen_opinions(node_count_for(go_n, go_graph), dist, go_seed));
      emit(os.str(), go_out);
    } else if (*gr) {
      std::ostringstream os;
      opdyn::write_node_values(os, opdyn::gen_resistance(node_count_for(gr_n, gr_graph), gr_seed));
      emit(os.str(), gr_out);
    }
  } catch (const opdyn::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const opdyn::RefusalError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefusal;
  } catch (const opdyn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const opdyn::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return 0;
}
