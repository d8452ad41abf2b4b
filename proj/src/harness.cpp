#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "tnopt/harness.hpp"
#include "tnopt/io.hpp"

namespace tnopt {

RunStats compute_stats(std::span<const Cost> costs) {
  if (costs.empty()) throw std::invalid_argument("compute_stats of no runs");
  std::vector<Cost> sorted(costs.begin(), costs.end());
  std::sort(sorted.begin(), sorted.end());
  RunStats s{sorted[(sorted.size() - 1) / 2], 0.0};
  if (sorted.front() == sorted.back()) return s;
  double mean = 0.0;
  for (const auto& c : costs) mean += c.log10();
  mean /= static_cast<double>(costs.size());
  double ss = 0.0;
  for (const auto& c : costs) ss += (c.log10() - mean) * (c.log10() - mean);
  s.log_std = std::sqrt(ss / static_cast<double>(costs.size() - 1));
  return s;
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Exhaustive: return "exhaustive";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::GA: return "ga";
    case Algorithm::SA: return "sa";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "exhaustive") return Algorithm::Exhaustive;
  if (name == "greedy") return Algorithm::Greedy;
  if (name == "ga") return Algorithm::GA;
  if (name == "sa") return Algorithm::SA;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

OptimizerResult run_algorithm(const TensorNetwork& net, Algorithm alg, const AlgorithmSettings& settings,
                              std::uint64_t seed, double budget_full_evaluations, const StopRule& stop) {
  EvalBudget budget(net.edge_count());
  switch (alg) {
    case Algorithm::Exhaustive:
      return exhaustive_search(net, budget, settings.exhaustive);
    case Algorithm::Greedy: {
      GreedyConfig cfg = settings.greedy;
      cfg.seed = seed;
      return greedy_search(net, cfg, budget);
    }
    case Algorithm::GA: {
      GAConfig cfg = settings.ga;
      cfg.seed = seed;
      cfg.max_full_evaluations = budget_full_evaluations;
      return ga_run(net, cfg, budget, stop);
    }
    case Algorithm::SA: {
      SAConfig cfg = settings.sa;
      cfg.seed = seed;
      cfg.max_full_evaluations = budget_full_evaluations;
      return sa_run(net, cfg, budget, stop);
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<BudgetTraceRow> run_variable_budget(const TensorNetwork& net, std::span<const Algorithm> algorithms,
                                                std::span<const double> budgets, std::uint64_t seed,
                                                const AlgorithmSettings& settings) {
  if (!std::is_sorted(budgets.begin(), budgets.end())) throw std::invalid_argument("budgets must be ascending");
  std::vector<BudgetTraceRow> rows;
  for (Algorithm alg : algorithms) {
    if (alg == Algorithm::Greedy || alg == Algorithm::Exhaustive) {
      auto r = run_algorithm(net, alg, settings, seed, 0.0);
      rows.push_back({alg, r.full_evaluations, r.best_cost});
      continue;
    }
    if (budgets.empty()) continue;
    auto r = run_algorithm(net, alg, settings, seed, budgets.back());
    for (double b : budgets) {
      const TracePoint* last = nullptr;
      for (const auto& t : r.trace) {
        if (t.full_evaluations > b + 1e-9) break;
        last = &t;
      }
      if (last) rows.push_back({alg, b, last->best_cost});
    }
  }
  return rows;
}

void write_budget_csv(std::ostream& out, std::span<const BudgetTraceRow> rows) {
  out << "algorithm,full_evaluations,best_cost\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{}\n", to_string(r.algorithm), r.full_evaluations, r.best_cost.to_string());
  }
}

TensorNetwork experiment_network(const ExperimentSpec& spec, std::size_t size, std::size_t run) {
  if (spec.family == Family::Square) return square_lattice({size, spec.chi});
  const std::uint64_t run_seed = spec.fixed_instance ? spec.base_seed : spec.base_seed + run;
  return erdos_renyi({size, spec.p, spec.chi, mix_seed(run_seed) ^ size});
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("TNOPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

EqualBudgetReport run_equal_budget(const ExperimentSpec& spec) {
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (spec.algorithms.empty()) throw std::invalid_argument("no algorithms given");
  const bool want_exhaustive =
      std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::Exhaustive) != spec.algorithms.end();
  const bool shared_instance = spec.family == Family::Square || spec.fixed_instance;

  // Exhaustive search is deterministic: on a shared instance run it once.
  std::map<std::size_t, OptimizerResult> exhaustive_cache;
  auto small_enough = [&](const TensorNetwork& net) {
    return net.edge_count() >= 1 && net.edge_count() <= spec.settings.exhaustive.max_edges;
  };
  if (want_exhaustive && shared_instance) {
    for (auto size : spec.sizes) {
      const auto net = experiment_network(spec, size, 0);
      if (small_enough(net)) {
        exhaustive_cache.emplace(size, run_algorithm(net, Algorithm::Exhaustive, spec.settings, 0, 0.0));
      }
    }
  }

  const std::size_t tasks = spec.sizes.size() * spec.runs;
  std::vector<std::vector<RunRecord>> per_task(tasks);
  parallel_for(tasks, spec.threads ? spec.threads : default_thread_count(), [&](std::size_t i) {
    const std::size_t size = spec.sizes[i / spec.runs];
    const std::size_t run = i % spec.runs;
    const std::uint64_t seed = spec.base_seed + run;
    const auto net = experiment_network(spec, size, run);
    auto greedy = run_algorithm(net, Algorithm::Greedy, spec.settings, seed, 0.0);
    const double budget = greedy.full_evaluations;
    for (Algorithm alg : spec.algorithms) {
      RunRecord rec{size, run, alg, seed, budget, {}};
      if (alg == Algorithm::Greedy) {
        rec.result = greedy;
      } else if (alg == Algorithm::Exhaustive) {
        if (auto it = exhaustive_cache.find(size); it != exhaustive_cache.end()) {
          rec.result = it->second;
        } else if (!shared_instance && small_enough(net)) {
          rec.result = run_algorithm(net, alg, spec.settings, seed, 0.0);
        } else {
          continue;
        }
      } else if (net.edge_count() < 2) {
        continue;
      } else {
        rec.result = run_algorithm(net, alg, spec.settings, seed, budget);
      }
      per_task[i].push_back(std::move(rec));
    }
  });

  EqualBudgetReport report;
  for (auto& t : per_task) {
    for (auto& r : t) report.runs.push_back(std::move(r));
  }
  for (auto size : spec.sizes) {
    for (Algorithm alg : spec.algorithms) {
      std::vector<Cost> costs;
      double evals = 0.0;
      for (const auto& r : report.runs) {
        if (r.size != size || r.algorithm != alg) continue;
        costs.push_back(r.result.best_cost);
        evals += r.result.full_evaluations;
      }
      if (costs.empty()) continue;
      report.summary.push_back(
          {size, alg, compute_stats(costs), evals / static_cast<double>(costs.size())});
    }
  }
  return report;
}

void write_equal_budget_csv(std::ostream& out, const EqualBudgetReport& report) {
  out << "# equal-budget runs; summary cost is the lower median over runs, "
         "log10_std the sample standard deviation of log10(cost)\n";
  out << "kind,size,run,algorithm,seed,budget,full_evaluations,cost,log10_cost,log10_std\n";
  for (const auto& r : report.runs) {
    out << fmt::format("run,{},{},{},{},{},{},{},{:.6f},\n", r.size, r.run, to_string(r.algorithm), r.seed, r.budget,
                       r.result.full_evaluations, r.result.best_cost.to_string(), r.result.best_cost.log10());
  }
  for (const auto& s : report.summary) {
    out << fmt::format("summary,{},,{},,,{},{},{:.6f},{:.6f}\n", s.size, to_string(s.algorithm),
                       s.mean_full_evaluations, s.stats.median.to_string(), s.stats.median.log10(), s.stats.log_std);
  }
  out << fmt::format("desktop_limit,,,,,,,{},{:.6f},\n", kDesktopLimit.to_string(), kDesktopLimit.log10());
}

OptimizerResult time_remaining_run(const TensorNetwork& net, Algorithm alg, double flops_per_eval,
                                   std::uint64_t seed, double max_full_evaluations,
                                   const AlgorithmSettings& settings) {
  const double per_eval = flops_per_eval > 0.0 ? flops_per_eval : 10.0 * static_cast<double>(net.edge_count());
  StopRule stop = [per_eval](const EvalBudget& budget, const Cost& best) {
    return budget.full_evaluations() * per_eval >= best.value().convert_to<double>();
  };
  return run_algorithm(net, alg, settings, seed, max_full_evaluations, stop);
}

std::string to_dot(const TensorNetwork& net, const std::string& name) {
  std::string out = "graph " + name + " {\n";
  const auto legs = net.open_legs();
  for (VertexId v : net.vertices()) {
    std::string leg_list;
    for (const auto& l : legs) {
      if (l.vertex != v) continue;
      if (!leg_list.empty()) leg_list += ' ';
      leg_list += fmt::format("{}:{}", l.id, l.chi);
    }
    if (leg_list.empty()) {
      out += fmt::format("  v{};\n", v);
    } else {
      out += fmt::format("  v{} [legs=\"{}\"];\n", v, leg_list);
    }
  }
  for (const auto& e : net.edges()) {
    out += fmt::format("  v{} -- v{} [id={}, chi={}, stepcost=\"{}\"];\n", e.u, e.v, e.id, e.chi,
                       net.step_cost(e.id).to_string());
  }
  out += "}\n";
  return out;
}

void export_sequence_trace(const TensorNetwork& net, const ContractionSequence& seq,
                           const std::filesystem::path& dir) {
  EvalBudget budget(net.edge_count());
  const auto eval = evaluate_sequence(net, seq, budget, true);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw NetworkError("cannot create " + dir.string() + ": " + ec.message());

  auto write_text = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw NetworkError("cannot write " + path.string());
  };

  nlohmann::json j;
  j["edges"] = net.edge_count();
  j["total_cost"] = eval.total.to_string();
  j["initial"] = to_json(net);
  j["steps"] = nlohmann::json::array();
  write_text(dir / "step_000.dot", to_dot(net, "step_000"));
  for (std::size_t i = 0; i < eval.steps.size(); ++i) {
    const auto& s = eval.steps[i];
    const std::string name = fmt::format("step_{:03}", i + 1);
    j["steps"].push_back({{"step", i + 1},
                          {"edge", s.edge},
                          {"step_cost", s.step_cost.to_string()},
                          {"accumulated_cost", s.accumulated_cost.to_string()},
                          {"log10_step_cost", s.step_cost.log10()},
                          {"graph", to_json(*s.snapshot)}});
    write_text(dir / (name + ".dot"), to_dot(*s.snapshot, name));
  }
  write_json(dir / "trace.json", j);
}

ContractionSequence handcrafted_row_sequence(const SquareSpec& spec) {
  const std::size_t L = spec.side;
  if (L < 2) throw std::invalid_argument("handcrafted sequence needs side >= 2");
  ContractionSequence seq;
  for (std::size_t r = 0; r + 1 < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) seq.order.push_back(square_vertical_edge(L, r, c));
  }
  for (std::size_t c = 0; c + 1 < L; ++c) {
    seq.order.push_back(square_horizontal_edge(L, L - 1, c));
    for (std::size_t r = 0; r + 1 < L; ++r) seq.order.push_back(square_horizontal_edge(L, r, c));
  }
  return seq;
}

}  // namespace tnopt
