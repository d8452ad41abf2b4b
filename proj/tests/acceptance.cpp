// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Usage: acceptance <path-to-tnopt-cli> [criterion...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tnopt/dense.hpp"
#include "tnopt/harness.hpp"

using namespace tnopt;

namespace {

// Pinned tolerances and limits.
constexpr double kFitnessTolerance = 1e-12;
constexpr double kNumericTolerance = 1e-9;
constexpr std::size_t kRuns = 20;
constexpr std::size_t kMinPairedWins = 15;
constexpr std::size_t kBestOfRuns = 40;
constexpr std::uint64_t kBaseSeed = 1;
constexpr double kLimit1 = 1.0, kLimit2 = 60.0, kLimit3 = 60.0, kLimit4 = 600.0, kLimit5 = 1800.0,
                 kLimit6 = 900.0, kLimit7 = 60.0, kLimit8 = 600.0, kLimit9 = 120.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string cli_path;

Cost cost_of(const TensorNetwork& net, const ContractionSequence& seq) {
  EvalBudget b(net.edge_count());
  return evaluate_sequence(net, seq, b).total;
}

Outcome closed_forms() {
  const auto net2 = fixtures::three_tensor();
  bool ok = cost_of(net2, ContractionSequence{{0, 1}}) == Cost(48) &&
            cost_of(net2, ContractionSequence{{1, 0}}) == Cost(96);
  std::vector<BondDim> primes{2, 3, 5, 7, 11, 13};
  int checked = 0;
  do {
    const fixtures::ChiSet c{primes[0], primes[1], primes[2], primes[3], primes[4], primes[5]};
    const auto net = fixtures::three_tensor(c);
    const Cost ij(c.i * c.j * c.k * c.l + c.j * c.k * c.l * c.m * c.n);
    const Cost ji(c.i * c.j * c.k * c.l * c.m * c.n + c.i * c.k * c.l * c.m * c.n);
    ok = ok && cost_of(net, ContractionSequence{{0, 1}}) == ij && cost_of(net, ContractionSequence{{1, 0}}) == ji;
    ++checked;
  } while (std::next_permutation(primes.begin(), primes.end()));
  return {ok, fmt::format("48/96 at chi=2; closed forms hold for all {} assignments of (2,3,5,7,11,13)", checked)};
}

Outcome oracle_equivalence() {
  Rng rng(kBaseSeed);
  int agree = 0;
  const int n = 30;
  for (int t = 0; t < n; ++t) {
    const auto net = fixtures::random_multigraph(rng, 6, 7, 4);
    const auto [best, order] = oracle::brute_force(net);
    EvalBudget b(net.edge_count());
    const auto r = exhaustive_search(net, b);
    if (r.best_cost == Cost(best) && cost_of(net, r.best_sequence) == Cost(best)) ++agree;
  }
  return {agree == n, fmt::format("{}/{} networks match the brute-force optimum", agree, n)};
}

Outcome numeric_semantics() {
  Rng rng(kBaseSeed);
  double worst = 0.0;
  const int n = 50;
  for (int t = 0; t < n; ++t) {
    auto net = fixtures::random_multigraph(rng, 6, 8, 3, 2);
    while (net.edge_count() + net.open_leg_count() > 10) net = fixtures::random_multigraph(rng, 6, 8, 3, 2);
    const auto asg = random_assignment(net, kBaseSeed + t);
    const auto a = execute(net, asg, random_sequence(net, rng));
    const auto b = execute(net, asg, random_sequence(net, rng));
    worst = std::max(worst, max_relative_deviation(a, b));
  }
  return {worst <= kNumericTolerance, fmt::format("{} networks, max relative deviation {:.2e} (limit {:.0e})", n,
                                                  worst, kNumericTolerance)};
}

const SummaryRow& summary(const EqualBudgetReport& r, std::size_t size, Algorithm alg) {
  for (const auto& s : r.summary) {
    if (s.size == size && s.algorithm == alg) return s;
  }
  throw std::logic_error("missing summary row");
}

Outcome er_dominance() {
  ExperimentSpec spec;
  spec.family = Family::ErdosRenyi;
  spec.sizes = {16};
  spec.p = 0.8;
  spec.chi = 10;
  spec.runs = kRuns;
  spec.base_seed = kBaseSeed;
  spec.fixed_instance = true;
  spec.algorithms = {Algorithm::Greedy, Algorithm::SA};
  const auto report = run_equal_budget(spec);
  std::size_t wins = 0;
  for (std::size_t run = 0; run < kRuns; ++run) {
    const Cost* g = nullptr;
    const Cost* s = nullptr;
    for (const auto& r : report.runs) {
      if (r.run != run) continue;
      (r.algorithm == Algorithm::Greedy ? g : s) = &r.result.best_cost;
    }
    if (*s < *g) ++wins;
  }
  const auto& g = summary(report, 16, Algorithm::Greedy).stats;
  const auto& s = summary(report, 16, Algorithm::SA).stats;
  const auto edges = experiment_network(spec, 16, 0).edge_count();
  return {s.median < g.median && wins >= kMinPairedWins,
          fmt::format("E={}: median log10 SA {:.3f} vs greedy {:.3f}; SA wins {}/{} (need {})", edges,
                      s.median.log10(), g.median.log10(), wins, kRuns, kMinPairedWins)};
}

Outcome square_scaling() {
  ExperimentSpec spec;
  spec.family = Family::Square;
  spec.sizes = {4, 5, 6};
  spec.chi = 10;
  spec.runs = kRuns;
  spec.base_seed = kBaseSeed;
  spec.algorithms = {Algorithm::Greedy, Algorithm::SA};
  const auto report = run_equal_budget(spec);
  bool ok = true;
  std::string detail;
  double last_ratio = std::numeric_limits<double>::infinity();
  for (auto L : spec.sizes) {
    const auto& g = summary(report, L, Algorithm::Greedy).stats.median;
    const auto& s = summary(report, L, Algorithm::SA).stats.median;
    // log10(SA median / greedy median)
    const double ratio = s.log10() - g.log10();
    ok = ok && s <= g && ratio <= last_ratio;
    last_ratio = ratio;
    detail += fmt::format("{}L={}: SA {:.3f} greedy {:.3f} log10 ratio {:+.3f}", detail.empty() ? "" : "; ", L,
                          s.log10(), g.log10(), ratio);
  }
  return {ok, detail};
}

Outcome handcrafted_baseline() {
  const auto net = square_lattice({6, 10});
  const Cost hand = cost_of(net, handcrafted_row_sequence({6, 10}));
  std::optional<Cost> best_greedy, best_sa;
  for (std::uint64_t r = 0; r < kBestOfRuns; ++r) {
    const auto g = run_algorithm(net, Algorithm::Greedy, {}, kBaseSeed + r, 0.0);
    const auto s = run_algorithm(net, Algorithm::SA, {}, kBaseSeed + r, g.full_evaluations);
    if (!best_greedy || g.best_cost < *best_greedy) best_greedy = g.best_cost;
    if (!best_sa || s.best_cost < *best_sa) best_sa = s.best_cost;
  }
  return {*best_greedy < hand && *best_sa < hand,
          fmt::format("log10 cost: row sequence {:.3f}, best-of-{} greedy {:.3f}, SA {:.3f}", hand.log10(),
                      kBestOfRuns, best_greedy->log10(), best_sa->log10())};
}

Outcome fitness_formula() {
  constexpr double top = std::numbers::e - 0.99;
  Rng rng(kBaseSeed);
  double endpoint_error = 0.0;
  bool bounded = true;
  const int n = 1000;
  for (int t = 0; t < n; ++t) {
    std::vector<Cost> costs;
    const auto size = rng.uniform_index(2, 40);
    for (std::size_t i = 0; i < size; ++i) {
      Cost c(rng.uniform_index(1, 1'000'000));
      for (std::size_t k = rng.uniform_index(0, 4); k > 0; --k) c *= Cost(rng.uniform_index(1, 1'000'000'000));
      costs.push_back(c);
    }
    if (std::all_of(costs.begin(), costs.end(), [&](const Cost& c) { return c == costs[0]; })) continue;
    const auto f = fitness(costs);
    const auto lo = std::min_element(costs.begin(), costs.end()) - costs.begin();
    const auto hi = std::max_element(costs.begin(), costs.end()) - costs.begin();
    endpoint_error = std::max({endpoint_error, std::abs(f[lo] - top), std::abs(f[hi] - 0.01)});
    for (double x : f) bounded = bounded && x >= 0.01 - kFitnessTolerance && x <= top + kFitnessTolerance;
  }
  return {endpoint_error <= kFitnessTolerance && bounded,
          fmt::format("{} populations, endpoint error {:.1e}, all within [0.01, e-0.99]: {}", n, endpoint_error,
                      bounded ? "yes" : "no")};
}

Outcome budget_accounting() {
  Rng rng(kBaseSeed);
  int greedy_ok = 0, budget_ok = 0, trace_ok = 0;
  const int n = 100;
  auto non_increasing = [](const OptimizerResult& r) {
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      if (r.trace[i - 1].best_cost < r.trace[i].best_cost) return false;
    }
    return !r.trace.empty() && r.trace.back().best_cost == r.best_cost;
  };
  for (int t = 0; t < n; ++t) {
    TensorNetwork net;
    switch (t % 3) {
      case 0: net = fixtures::random_multigraph(rng, 8, 14, 5); break;
      case 1: net = square_lattice({rng.uniform_index(2, 5), rng.uniform_index(2, 10)}); break;
      default: net = erdos_renyi({rng.uniform_index(4, 10), 0.5, rng.uniform_index(2, 10), rng.engine()()}); break;
    }
    if (net.edge_count() < 2) net = fixtures::path3(3);
    const std::uint64_t edges = net.edge_count();
    EvalBudget gb(edges);
    const auto g = greedy_search(net, GreedyConfig{1, static_cast<std::uint64_t>(t)}, gb);
    if (gb.step_computations() == edges * (edges + 1) / 2 && non_increasing(g)) ++greedy_ok;

    const double cap = 1.0 + static_cast<double>(rng.uniform_index(0, 200)) * 0.5;
    const auto limit = static_cast<std::uint64_t>(std::floor(cap * static_cast<double>(edges) + 1e-9)) + edges - 1;
    AlgorithmSettings settings;
    settings.ga.population_size = rng.uniform_index(2, 25);
    const auto ga = run_algorithm(net, Algorithm::GA, settings, t, cap);
    const auto sa = run_algorithm(net, Algorithm::SA, settings, t, cap);
    if (ga.step_computations <= limit && sa.step_computations <= limit) ++budget_ok;
    if (non_increasing(ga) && non_increasing(sa)) ++trace_ok;
  }
  return {greedy_ok == n && budget_ok == n && trace_ok == n,
          fmt::format("{} fuzzed networks: greedy k=1 exact count {}/{}, GA+SA within budget+E-1 {}/{}, "
                      "non-increasing traces {}/{}",
                      n, greedy_ok, n, budget_ok, n, trace_ok, n)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "tnopt_acceptance_determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string d = dir.string();
  const std::vector<std::pair<std::string, std::string>> commands{
      {"net.json", "gen er --n 12 --p 0.7 --chi 4 --seed 9 -o " + d + "/net.json"},
      {"sa.json", "optimize --alg sa --seed 3 --budget 300 --net " + d + "/net.json -o " + d + "/sa.json"},
      {"ga.json", "optimize --alg ga --seed 3 --budget 300 --net " + d + "/net.json -o " + d + "/ga.json"},
      {"tr.json", "optimize --alg sa --time-remaining --flops-per-eval 50 --budget 5000 --seed 4 --net " + d +
                      "/net.json -o " + d + "/tr.json"},
      {"sweep.csv", "sweep --family square --sizes 3,4 --chi 3 --runs 3 --seed 5 --algs exhaustive,greedy,ga,sa -o " +
                        d + "/sweep.csv"},
      {"er.csv", "sweep --family er --sizes 8 --p 0.6 --chi 3 --runs 3 --seed 5 -o " + d + "/er.csv"},
      {"var.csv", "sweep --mode variable --family square --sizes 4 --chi 10 --budgets 10,50,100 --seed 2 -o " + d +
                      "/var.csv"},
  };
  std::map<std::string, std::string> first;
  for (int round = 0; round < 2; ++round) {
    for (const auto& [file, args] : commands) {
      const std::string cmd = "\"" + cli_path + "\" " + args;
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + args};
      const auto text = slurp(dir / file);
      if (text.empty()) return {false, "empty output: " + file};
      if (round == 0) {
        first[file] = text;
      } else if (first[file] != text) {
        return {false, "outputs differ: " + file};
      }
    }
  }
  std::filesystem::remove_all(dir);
  return {true, fmt::format("{} CLI outputs byte-identical across two executions", commands.size())};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <tnopt-cli> [criterion...]\n";
    return 2;
  }
  cli_path = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example closed forms", kLimit1, closed_forms},
      {2, "exhaustive equals brute force", kLimit2, oracle_equivalence},
      {3, "numeric results agree across orders", kLimit3, numeric_semantics},
      {4, "ER16 equal-budget SA beats greedy", kLimit4, er_dominance},
      {5, "square-lattice scaling L=4,5,6", kLimit5, square_scaling},
      {6, "row sequence loses to best-of-40", kLimit6, handcrafted_baseline},
      {7, "fitness endpoints and bounds", kLimit7, fitness_formula},
      {8, "budget accounting", kLimit8, budget_accounting},
      {9, "CLI determinism", kLimit9, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::cout << fmt::format("criterion {} {}: {} ({}; {:.2f}s of {:.0f}s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                             o.detail, secs, c.limit_seconds)
              << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
