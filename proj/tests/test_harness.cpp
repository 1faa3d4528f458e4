#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "opdyn/errors.hpp"
#include "opdyn/experiment.hpp"
#include "opdyn/generators.hpp"
#include "opdyn/profile_io.hpp"

using namespace opdyn;
namespace fs = std::filesystem;

namespace {

const fs::path kData = OPDYN_DATA_DIR;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("opdyn_test_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name, const std::string& text = "") const {
    const fs::path p = path_ / name;
    if (!text.empty()) std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + OPDYN_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Least-squares slope of y on x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("generators are deterministic per seed and respect their support") {
  const OpinionDistribution uni;
  CHECK(gen_opinions(5, uni, 7) == gen_opinions(5, uni, 7));
  CHECK(gen_opinions(5, uni, 7) != gen_opinions(5, uni, 8));
  CHECK(gen_resistance(3, 0) == gen_resistance(3, 0));

  OpinionDistribution pl;
  pl.kind = OpinionDistribution::Kind::powerlaw;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto v = gen_opinions(10000, pl, seed);
    CHECK(v.minCoeff() >= kPowerLawMin);
    CHECK(v.maxCoeff() <= 1.0);
  }
  const auto u = gen_opinions(10000, uni, 3);
  CHECK(u.minCoeff() >= 0.0);
  CHECK(u.maxCoeff() <= 1.0);

  pl.slope = 1.0;
  CHECK_THROWS_AS(gen_opinions(5, pl, 1), std::invalid_argument);
}

TEST_CASE("power-law opinions follow the truncated x^-2 density") {
  OpinionDistribution pl;
  pl.kind = OpinionDistribution::Kind::powerlaw;
  Eigen::VectorXd v = gen_opinions(1'000'000, pl, 1);
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(sorted.size());
  const auto ccdf = [&](double x) {
    return static_cast<double>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x)) / total;
  };
  const auto exact_ccdf = [](double x) { return (1.0 / x - 1.0) / (1.0 / kPowerLawMin - 1.0); };

  // Density slope from log-spaced bins over [0.02, 0.5].
  std::vector<double> lx, ld, lc, lc_exact;
  constexpr int kBins = 20;
  const double lo = std::log(0.02), hi = std::log(0.5);
  for (int b = 0; b < kBins; ++b) {
    const double a = std::exp(lo + (hi - lo) * b / kBins);
    const double c = std::exp(lo + (hi - lo) * (b + 1) / kBins);
    const double mass = ccdf(a) - ccdf(c);
    lx.push_back(std::log(std::sqrt(a * c)));
    ld.push_back(std::log(mass / (c - a)));
  }
  CHECK(std::abs(fit_slope(lx, ld) + 2.0) <= 0.1);

  // Empirical CCDF against the closed form; over [0.02, 0.5] its log-log
  // slope is about -1.17 (truncation at 1), not -1.
  std::vector<double> cx;
  for (int b = 0; b <= kBins; ++b) {
    const double x = std::exp(lo + (hi - lo) * b / kBins);
    CHECK(std::abs(ccdf(x) - exact_ccdf(x)) <= 3e-3);
    cx.push_back(std::log(x));
    lc.push_back(std::log(ccdf(x)));
    lc_exact.push_back(std::log(exact_ccdf(x)));
  }
  CHECK(std::abs(fit_slope(cx, lc) - fit_slope(cx, lc_exact)) <= 0.02);
}

TEST_CASE("resistance draws are uniform on [0.001, 1]") {
  const auto a = gen_resistance(100000, 11);
  CHECK(a.minCoeff() >= 0.001);
  CHECK(a.maxCoeff() <= 1.0);
  CHECK(std::abs(a.mean() - 0.5005) <= 0.01);
}

TEST_CASE("node tables") {
  std::istringstream ok("# c\n1\t0.5\t0.2\n0\t-1\t1\n");
  const auto p = read_profile(ok, 2, true);
  CHECK(p.innate()[0] == 0.0);
  CHECK(p.innate()[1] == 0.75);
  CHECK(p.resistance()[0] == 1.0);
  CHECK(normalize_signed(Eigen::Vector3d(-1, 0, 1)) == Eigen::Vector3d(0, 0.5, 1));

  std::istringstream bad("0\t0.5\t0.2\n1\tx\t0.3\n");
  try {
    read_profile(bad, 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream dup("0\t0.5\n0\t0.4\n");
  try {
    read_node_column(dup, 2, 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream short_table("0\t0.5\n1\t0.4\n");
  try {
    read_node_column(short_table, 3, 1);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find('2') != std::string::npos);
    CHECK(what.find('3') != std::string::npos);
  }
  std::istringstream range("0\t1.5\t0.2\n");
  CHECK_THROWS_AS(read_profile(range, 1), ValidationError);

  std::ostringstream out;
  write_profile(out, p);
  std::istringstream back(out.str());
  const auto q = read_profile(back, 2);
  CHECK(q.innate() == p.innate());
  CHECK(q.resistance() == p.resistance());
}

TEST_CASE("equilibrium experiment on the K3 fixture") {
  ExperimentConfig cfg;
  cfg.graph_path = kData / "k3.txt";
  cfg.opinions.path = kData / "k3_profile.tsv";
  cfg.resistance.path = kData / "k3_profile.tsv";
  const auto report = run_experiment(cfg);
  REQUIRE(!report.unbudgeted.empty());
  CHECK(std::abs(report.unbudgeted.front().sum_z - 1.0) <= 1e-9);
  CHECK(report.unbudgeted.front().sum_s == 1.0);
  CHECK(report.to_csv().rfind("dataset,mode,trial,seed,sum_s,sum_z,sum_z_opt,iterations,wall_time_ms\n", 0) == 0);
}

TEST_CASE("unbudgeted min on s and max on 1-s sum to n") {
  TempDir tmp;
  const Graph g = load_edge_list(kData / "karate.txt");
  const std::size_t n = g.node_count();
  const auto s = gen_opinions(n, {}, 3);
  const auto a = gen_resistance(n, 4);
  std::ostringstream fwd, rev;
  write_profile(fwd, OpinionProfile(s, a));
  write_profile(rev, OpinionProfile(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)) - s, a));
  const auto pf = tmp.file("fwd.tsv", fwd.str());
  const auto pr = tmp.file("rev.tsv", rev.str());

  ExperimentConfig cfg;
  cfg.graph_path = kData / "karate.txt";
  cfg.opinions.path = cfg.resistance.path = pf;
  cfg.mode = ExperimentMode::unbudgeted_min;
  const auto lo = run_experiment(cfg);
  cfg.opinions.path = cfg.resistance.path = pr;
  cfg.mode = ExperimentMode::unbudgeted_max;
  const auto hi = run_experiment(cfg);
  const auto& lr = lo.unbudgeted.front();
  const auto& hr = hi.unbudgeted.front();
  REQUIRE(lr.sum_z_opt.has_value());
  REQUIRE(hr.sum_z_opt.has_value());
  CHECK(std::abs(*lr.sum_z_opt + *hr.sum_z_opt - static_cast<double>(n)) <= 1e-9);
  CHECK(*lr.sum_z_opt <= lr.sum_z);
}

TEST_CASE("unbudgeted ordering and byte-identical reruns with generated inputs") {
  ExperimentConfig cfg;
  cfg.graph_path = kData / "karate.txt";
  cfg.trials = 3;
  cfg.seed = 42;
  cfg.record_timing = false;
  cfg.mode = ExperimentMode::unbudgeted_min;
  const auto lo = run_experiment(cfg);
  cfg.mode = ExperimentMode::unbudgeted_max;
  const auto hi = run_experiment(cfg);
  CHECK(hi.to_csv() == run_experiment(cfg).to_csv());
  REQUIRE(lo.unbudgeted.size() == 4);
  for (std::size_t i = 0; i < lo.unbudgeted.size(); ++i) {
    CHECK(*lo.unbudgeted[i].sum_z_opt <= lo.unbudgeted[i].sum_z + 1e-12);
    CHECK(lo.unbudgeted[i].sum_z == hi.unbudgeted[i].sum_z);
    CHECK(hi.unbudgeted[i].sum_z <= *hi.unbudgeted[i].sum_z_opt + 1e-12);
  }
  CHECK(!lo.unbudgeted.back().trial.has_value());
}

TEST_CASE("budgeted greedy on the star fixture") {
  ExperimentConfig cfg;
  cfg.graph_path = kData / "star5.txt";
  cfg.opinions.path = cfg.resistance.path = kData / "star5_profile.tsv";
  cfg.mode = ExperimentMode::budgeted;
  cfg.methods = {BudgetMethod::greedy};
  cfg.budgets = {1};
  const auto report = run_experiment(cfg);
  REQUIRE(!report.budgeted.empty());
  CHECK(report.budgeted.front().objective == doctest::Approx(4.96).epsilon(1e-12));
}

TEST_CASE("budget sweep rows: greedy monotone, exhaustive dominant, canonical order") {
  ExperimentConfig cfg;
  cfg.graph_path = kData / "karate.txt";
  cfg.mode = ExperimentMode::budgeted;
  cfg.methods = {BudgetMethod::baseline2, BudgetMethod::greedy, BudgetMethod::baseline1};
  cfg.budgets = {5, 1, 3, 2};
  cfg.trials = 2;
  cfg.seed = 9;
  cfg.record_timing = false;
  const auto report = run_experiment(cfg);
  const std::string csv = report.to_csv();
  CHECK(csv.rfind("dataset,method,k,trial,seed,objective,wall_time_ms\n", 0) == 0);
  CHECK(csv == run_experiment(cfg).to_csv());

  std::vector<const BudgetedRow*> greedy;
  for (const auto& r : report.budgeted)
    if (r.method == BudgetMethod::greedy && r.trial == std::optional<std::size_t>(0)) greedy.push_back(&r);
  REQUIRE(greedy.size() == 4);
  for (std::size_t i = 1; i < greedy.size(); ++i) {
    CHECK(greedy[i]->k > greedy[i - 1]->k);
    CHECK(greedy[i]->objective >= greedy[i - 1]->objective - 1e-12);
  }
  for (std::size_t i = 1; i < report.budgeted.size(); ++i) {
    const auto& a = report.budgeted[i - 1];
    const auto& b = report.budgeted[i];
    const auto key = [](const BudgetedRow& r) {
      return std::make_tuple(std::string(to_string(r.method)), r.k, r.trial.value_or(SIZE_MAX));
    };
    CHECK(key(a) < key(b));
  }

  cfg.methods = {BudgetMethod::exhaustive};
  cfg.budgets = {10};
  CHECK_THROWS_AS(run_experiment(cfg), RefusalError);
}

TEST_CASE("profile with the wrong node count is a configuration error") {
  ExperimentConfig cfg;
  cfg.graph_path = kData / "karate.txt";
  cfg.opinions.path = kData / "k3_profile.tsv";
  try {
    run_experiment(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("34") != std::string::npos);
    CHECK(what.find('3') != std::string::npos);
  }
}

TEST_CASE("command-line exit codes") {
  TempDir tmp;
  const std::string k3 = (kData / "k3.txt").string();
  const std::string prof = (kData / "k3_profile.tsv").string();
  const auto out = tmp.file("eq.csv");
  CHECK(run_cli("equilibrium --graph " + k3 + " --opinions " + prof + " --resistance " + prof +
                " --out " + out.string()) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("k3,equilibrium,0,0,1,1.0000000000000") != std::string::npos);

  CHECK(run_cli("equilibrium") == 2);
  CHECK(run_cli("optimize-unbudgeted --graph " + k3 + " --lower 0.5 --upper 0.2") == 2);
  CHECK(run_cli("equilibrium --graph " + (kData / "karate.txt").string() + " --opinions " + prof) == 2);
  const auto broken = tmp.file("broken.txt", "0 1\n1 x\n");
  CHECK(run_cli("equilibrium --graph " + broken.string()) == 3);
  const auto loop = tmp.file("loop.txt", "0 1\n1 1\n");
  CHECK(run_cli("equilibrium --graph " + loop.string()) == 3);
  CHECK(run_cli("optimize-budgeted --graph " + (kData / "karate.txt").string() +
                " --method exhaustive --k-list 10") == 4);

  const auto a = tmp.file("a.csv"), b = tmp.file("b.csv");
  const std::string sweep = "optimize-budgeted --graph " + (kData / "karate.txt").string() +
                            " --method greedy,baseline1,baseline2 --k-list 1,2,3 --trials 2 --seed 5 "
                            "--no-timing --out ";
  CHECK(run_cli(sweep + a.string()) == 0);
  CHECK(run_cli(sweep + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  const auto g1 = tmp.file("g1.tsv"), g2 = tmp.file("g2.tsv");
  CHECK(run_cli("gen-opinions --n 5 --dist powerlaw --seed 7 --out " + g1.string()) == 0);
  CHECK(run_cli("gen-opinions --n 5 --dist powerlaw --seed 7 --out " + g2.string()) == 0);
  CHECK(slurp(g1) == slurp(g2));
  CHECK(run_cli("gen-resistance --graph " + k3 + " --seed 1 --out " + g1.string()) == 0);
  CHECK(load_node_column(g1, 3, 1).minCoeff() >= 0.001);
}
