// tnopt: generate tensor networks, search contraction orders, run experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tnopt/dense.hpp"
#include "tnopt/harness.hpp"
#include "tnopt/io.hpp"

using namespace tnopt;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw NetworkError("cannot write " + path);
}

void emit_json(const std::string& path, const nlohmann::json& j) { emit(path, j.dump(2) + "\n"); }

struct SearchOptions {
  std::size_t k = 2;
  std::size_t pop = 20;
  double mutation = 0.6;
  double initial_temp = 5230.0;
  double visit = 2.62;
  double accept = -5.0;
  double restart_ratio = 2e-5;
  bool no_local_search = false;
  std::size_t max_edges = 16;
  bool force = false;

  void add_to(CLI::App* app) {
    app->add_option("--k", k, "Greedy lookahead depth")->check(CLI::PositiveNumber);
    app->add_option("--pop", pop, "GA population size");
    app->add_option("--mutation", mutation, "GA mutation rate");
    app->add_option("--initial-temp", initial_temp, "SA initial visiting temperature");
    app->add_option("--visit", visit, "SA visiting parameter q_v");
    app->add_option("--accept", accept, "SA acceptance parameter q_a");
    app->add_option("--restart-ratio", restart_ratio, "SA restart temperature ratio");
    app->add_flag("--no-local-search", no_local_search, "Disable SA local search");
    app->add_option("--max-edges", max_edges, "Exhaustive search edge limit");
    app->add_flag("--force", force, "Run exhaustive search beyond the edge limit");
  }

  AlgorithmSettings settings() const {
    AlgorithmSettings s;
    s.greedy.k = k;
    s.ga.population_size = pop;
    s.ga.mutation_rate = mutation;
    s.sa.initial_temp = initial_temp;
    s.sa.visit = visit;
    s.sa.accept = accept;
    s.sa.restart_temp_ratio = restart_ratio;
    s.sa.local_search = !no_local_search;
    s.exhaustive.max_edges = max_edges;
    s.exhaustive.force = force;
    return s;
  }
};

std::size_t lattice_side(const TensorNetwork& net) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(net.vertex_count()))));
  if (side < 2 || side * side != net.vertex_count() || net != square_lattice({side, net.edges().front().chi})) {
    throw std::invalid_argument("--rows needs a square lattice network");
  }
  return side;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contraction-order search for tensor networks"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark network");
  gen->require_subcommand(1);
  std::string gen_out;
  SquareSpec square;
  auto* gen_square = gen->add_subcommand("square", "Square lattice");
  gen_square->add_option("--L", square.side, "Vertices per side")->required()->check(CLI::PositiveNumber);
  gen_square->add_option("--chi", square.chi, "Bond dimension")->check(CLI::PositiveNumber);
  gen_square->add_option("-o,--out", gen_out, "Output file (default stdout)");
  ErdosRenyiSpec er;
  auto* gen_er = gen->add_subcommand("er", "Erdos-Renyi random graph");
  gen_er->add_option("--n", er.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gen_er->add_option("--p", er.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen_er->add_option("--chi", er.chi, "Bond dimension")->check(CLI::PositiveNumber);
  gen_er->add_option("--seed", er.seed, "RNG seed");
  gen_er->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Search for a cheap contraction sequence");
  std::string net_path, out_path, alg_name = "greedy";
  std::uint64_t seed = 0;
  double budget = 1000.0;
  bool time_remaining = false;
  double flops_per_eval = 0.0;
  SearchOptions search;
  optimize->add_option("--net", net_path, "Network JSON file")->required();
  optimize->add_option("--alg", alg_name, "exhaustive|greedy|ga|sa");
  optimize->add_option("--seed", seed, "RNG seed");
  optimize->add_option("--budget", budget, "GA/SA budget in full evaluations");
  optimize->add_flag("--time-remaining", time_remaining,
                     "Stop once search work reaches the best cost; --budget becomes a cap");
  optimize->add_option("--flops-per-eval", flops_per_eval, "Work per full evaluation (default 10*E)");
  optimize->add_option("-o,--out", out_path, "Output file (default stdout)");
  search.add_to(optimize);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a variable- or equal-budget experiment, emit CSV");
  std::string mode = "equal", family = "square", algs = "greedy,ga,sa", sweep_net;
  ExperimentSpec spec;
  std::vector<double> budgets;
  sweep->add_option("--mode", mode, "equal|variable")->check(CLI::IsMember({"equal", "variable"}));
  sweep->add_option("--family", family, "square|er")->check(CLI::IsMember({"square", "er"}));
  sweep->add_option("--sizes", spec.sizes, "Lattice sides or ER vertex counts")->delimiter(',');
  sweep->add_option("--chi", spec.chi, "Bond dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--p", spec.p, "ER edge probability")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--runs", spec.runs, "Runs per size")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", spec.base_seed, "Base seed");
  sweep->add_option("--algs", algs, "Comma-separated algorithms");
  sweep->add_flag("--fixed-instance", spec.fixed_instance, "ER: one instance for all runs");
  sweep->add_option("--net", sweep_net, "Variable mode: network file");
  sweep->add_option("--budgets", budgets, "Variable mode: ascending checkpoints")->delimiter(',');
  sweep->add_option("-o,--out", out_path, "Output file (default stdout)");
  search.add_to(sweep);

  // trace
  auto* trace = app.add_subcommand("trace", "Export per-step JSON and DOT files of a sequence");
  std::string seq_path, trace_dir;
  bool rows = false;
  trace->add_option("--net", net_path, "Network JSON file")->required();
  auto* seq_opt = trace->add_option("--seq", seq_path, "Sequence JSON file");
  auto* rows_opt = trace->add_flag("--rows", rows, "Use the row-by-row sequence of a square lattice");
  seq_opt->excludes(rows_opt);
  trace->add_option("--out", trace_dir, "Output directory")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Check that random orders give the same dense result");
  std::size_t orders = 10;
  verify->add_option("--net", net_path, "Network JSON file")->required();
  verify->add_option("--orders", orders, "Number of random orders")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "RNG seed");

  // stats
  auto* stats = app.add_subcommand("stats", "Lower median and log10 std of costs (args or stdin)");
  std::vector<std::string> values;
  stats->add_option("costs", values, "Costs as decimal integers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto net = gen_square->parsed() ? square_lattice(square) : erdos_renyi(er);
      emit_json(gen_out, to_json(net));
    } else if (optimize->parsed()) {
      const auto net = load_network(net_path);
      const auto alg = parse_algorithm(alg_name);
      const auto settings = search.settings();
      const auto result = time_remaining ? time_remaining_run(net, alg, flops_per_eval, seed, budget, settings)
                                         : run_algorithm(net, alg, settings, seed, budget);
      emit_json(out_path, to_json(result));
    } else if (sweep->parsed()) {
      spec.algorithms.clear();
      std::stringstream names(algs);
      for (std::string name; std::getline(names, name, ',');) spec.algorithms.push_back(parse_algorithm(name));
      spec.settings = search.settings();
      spec.family = family == "er" ? Family::ErdosRenyi : Family::Square;
      std::ostringstream csv;
      if (mode == "equal") {
        if (spec.sizes.empty()) throw std::invalid_argument("--sizes is required");
        write_equal_budget_csv(csv, run_equal_budget(spec));
      } else {
        TensorNetwork net;
        if (!sweep_net.empty()) {
          net = load_network(sweep_net);
        } else if (spec.sizes.size() == 1) {
          net = experiment_network(spec, spec.sizes.front(), 0);
        } else {
          throw std::invalid_argument("variable mode needs --net or exactly one size");
        }
        write_budget_csv(csv, run_variable_budget(net, spec.algorithms, budgets, spec.base_seed, spec.settings));
      }
      emit(out_path, csv.str());
    } else if (trace->parsed()) {
      const auto net = load_network(net_path);
      ContractionSequence seq;
      if (rows) {
        seq = handcrafted_row_sequence({lattice_side(net), net.edges().front().chi});
      } else if (!seq_path.empty()) {
        seq = load_sequence(seq_path);
      } else {
        throw std::invalid_argument("trace needs --seq or --rows");
      }
      export_sequence_trace(net, seq, trace_dir);
      std::cout << fmt::format("{} steps written to {}\n", seq.size(), trace_dir);
    } else if (verify->parsed()) {
      const auto net = load_network(net_path);
      const auto asg = random_assignment(net, seed);
      Rng rng = Rng(seed).split(1);
      const auto reference = execute(net, asg, random_sequence(net, rng));
      double worst = 0.0;
      for (std::size_t i = 1; i < orders; ++i) {
        worst = std::max(worst, max_relative_deviation(reference, execute(net, asg, random_sequence(net, rng))));
      }
      const bool ok = worst <= 1e-9;
      std::cout << fmt::format("{} orders, max relative deviation {:.3e}: {}\n", orders, worst,
                               ok ? "consistent" : "INCONSISTENT");
      return ok ? 0 : 1;
    } else if (stats->parsed()) {
      if (values.empty()) values.assign(std::istream_iterator<std::string>(std::cin), {});
      std::vector<Cost> costs;
      for (const auto& v : values) costs.push_back(Cost::from_string(v));
      const auto s = compute_stats(costs);
      std::cout << fmt::format("median {}\nlog10_median {:.6f}\nlog10_std {:.6f}\n", s.median.to_string(),
                               s.median.log10(), s.log_std);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
