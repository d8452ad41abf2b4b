#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnopt/deterministic.hpp"
#include "tnopt/generators.hpp"
#include "tnopt/stochastic.hpp"

namespace tnopt {

/// Rough cost of a contraction a desktop machine finishes in a day.
inline const Cost kDesktopLimit = Cost(10'000'000'000'000'000ULL);

struct RunStats {
  Cost median;     // lower median
  double log_std;  // sample standard deviation of log10(cost); 0 for one run
};

/// Throws std::invalid_argument on an empty input.
RunStats compute_stats(std::span<const Cost> costs);

enum class Algorithm { Exhaustive, Greedy, GA, SA };

std::string to_string(Algorithm a);
/// Accepts "exhaustive", "greedy", "ga", "sa"; throws std::invalid_argument.
Algorithm parse_algorithm(const std::string& name);

/// Settings shared by every run of an experiment. Seeds and budgets are
/// filled in per run.
struct AlgorithmSettings {
  GreedyConfig greedy;
  GAConfig ga;
  SAConfig sa;
  ExhaustiveConfig exhaustive;
};

/// Runs one algorithm. GA and SA use `budget_full_evaluations` and `stop`;
/// the deterministic searches ignore both.
OptimizerResult run_algorithm(const TensorNetwork& net, Algorithm alg, const AlgorithmSettings& settings,
                              std::uint64_t seed, double budget_full_evaluations, const StopRule& stop = {});

struct BudgetTraceRow {
  Algorithm algorithm;
  double full_evaluations;
  Cost best_cost;
};

/// Best cost at each checkpoint of one growing GA/SA run per algorithm;
/// deterministic searches contribute their single (measured budget, cost)
/// point. `budgets` must be ascending.
std::vector<BudgetTraceRow> run_variable_budget(const TensorNetwork& net, std::span<const Algorithm> algorithms,
                                                std::span<const double> budgets, std::uint64_t seed,
                                                const AlgorithmSettings& settings = {});

void write_budget_csv(std::ostream& out, std::span<const BudgetTraceRow> rows);

enum class Family { Square, ErdosRenyi };

struct ExperimentSpec {
  Family family = Family::Square;
  std::vector<std::size_t> sizes;  // L for square lattices, n for ER graphs
  BondDim chi = 10;
  double p = 0.8;
  std::vector<Algorithm> algorithms{Algorithm::Greedy, Algorithm::GA, Algorithm::SA};
  std::size_t runs = 20;
  std::uint64_t base_seed = 0;
  /// ER only: one instance (seeded by base_seed) for every run instead of
  /// one per run.
  bool fixed_instance = false;
  AlgorithmSettings settings;
  /// Parallel workers; 0 reads TNOPT_THREADS and falls back to 1.
  std::size_t threads = 0;
};

/// The network used for run `run` at `size`.
TensorNetwork experiment_network(const ExperimentSpec& spec, std::size_t size, std::size_t run);

struct RunRecord {
  std::size_t size;
  std::size_t run;
  Algorithm algorithm;
  std::uint64_t seed;
  double budget;  // greedy's measured full evaluations for this run
  OptimizerResult result;
};

struct SummaryRow {
  std::size_t size;
  Algorithm algorithm;
  RunStats stats;
  double mean_full_evaluations;
};

struct EqualBudgetReport {
  std::vector<RunRecord> runs;  // ordered by (size, run, algorithm order)
  std::vector<SummaryRow> summary;
};

/// Per size and run r: greedy with seed base_seed + r fixes the budget B_r,
/// then GA and SA search the same instance with B_r full evaluations.
/// Exhaustive search is included only where the network is small enough.
EqualBudgetReport run_equal_budget(const ExperimentSpec& spec);

void write_equal_budget_csv(std::ostream& out, const EqualBudgetReport& report);

/// Searches until the work spent, full_evaluations * flops_per_eval, reaches
/// the best cost found, or until `max_full_evaluations`. A non-positive
/// flops_per_eval means 10 * E.
OptimizerResult time_remaining_run(const TensorNetwork& net, Algorithm alg, double flops_per_eval,
                                   std::uint64_t seed, double max_full_evaluations,
                                   const AlgorithmSettings& settings = {});

/// Writes `trace.json` plus step_000.dot .. step_<E>.dot into `dir`. Each DOT
/// edge carries the cost of contracting it in that state as `stepcost`.
void export_sequence_trace(const TensorNetwork& net, const ContractionSequence& seq,
                           const std::filesystem::path& dir);

/// DOT rendering of one network state.
std::string to_dot(const TensorNetwork& net, const std::string& name);

/// Row-by-row baseline for square lattices: absorb each row into the next
/// through its vertical edges, left to right, then contract the last row
/// left to right, tracing out the stacked horizontal bonds of each column
/// pair right after the bottom one joins it.
ContractionSequence handcrafted_row_sequence(const SquareSpec& spec);

/// Number of worker threads from TNOPT_THREADS (at least 1).
std::size_t default_thread_count();

/// Calls task(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

}  // namespace tnopt
