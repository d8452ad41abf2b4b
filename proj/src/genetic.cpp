#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tnopt/stochastic.hpp"

namespace tnopt {

std::vector<double> fitness(std::span<const Cost> costs) {
  if (costs.empty()) throw std::invalid_argument("fitness of an empty population");
  std::vector<double> logs;
  logs.reserve(costs.size());
  for (const auto& c : costs) {
    if (c.is_zero()) throw std::invalid_argument("fitness requires costs >= 1");
    logs.push_back(c.ln());
  }
  const auto [lo, hi] = std::minmax_element(logs.begin(), logs.end());
  const double lmin = *lo;
  const double lmax = *hi;
  std::vector<double> out(costs.size(), 1.0);
  if (lmax == lmin) return out;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    out[i] = std::exp((lmax - logs[i]) / (lmax - lmin)) - 0.99;
  }
  return out;
}

ContractionSequence random_sequence(const TensorNetwork& net, Rng& rng) {
  ContractionSequence seq{net.remaining_edges()};
  for (std::size_t i = seq.order.size(); i > 1; --i) {
    std::swap(seq.order[i - 1], seq.order[rng.uniform_index(0, i - 1)]);
  }
  return seq;
}

namespace {

void validate(const GAConfig& cfg, const TensorNetwork& net) {
  if (cfg.population_size < 2) throw std::invalid_argument("GA population_size must be >= 2");
  if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) {
    throw std::invalid_argument("GA mutation_rate must lie in [0, 1]");
  }
  if (!(cfg.max_full_evaluations >= 1.0)) throw std::invalid_argument("GA budget must be >= 1 evaluation");
  if (net.remaining_edge_count() < 2) throw std::invalid_argument("GA needs at least two edges");
}

}  // namespace

OptimizerResult ga_run(const TensorNetwork& net, const GAConfig& cfg, EvalBudget& budget,
                       const StopRule& stop) {
  validate(cfg, net);
  Rng rng(cfg.seed);
  const EvaluationGate gate(cfg.max_full_evaluations, stop);
  BestTracker best;

  std::vector<ContractionSequence> population;
  population.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i) population.push_back(random_sequence(net, rng));

  const std::size_t n = cfg.population_size;
  const std::size_t len = population.front().size();
  std::vector<Cost> costs(n);
  std::vector<ContractionSequence> next;
  next.reserve(n);
  std::vector<double> cumulative(n);

  for (std::size_t generation = 0;; ++generation) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!gate.admits(budget, best.best())) return std::move(best).finish("ga", budget);
      costs[i] = sequence_cost(net, population[i].order, budget);
      best.offer(costs[i], population[i].order, budget);
    }

    const auto fit = fitness(costs);
    const auto elite = static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin());
    if (cfg.on_generation) cfg.on_generation(generation, costs[elite]);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) cumulative[i] = (total += fit[i]);

    next.clear();
    next.push_back(population[elite]);
    while (next.size() < n) {
      const double r = rng.uniform01() * total;
      auto pick = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), r) -
                                           cumulative.begin());
      next.push_back(population[std::min(pick, n - 1)]);
      if (rng.uniform01() < cfg.mutation_rate) {
        const auto a = rng.uniform_index(0, len - 1);
        auto b = rng.uniform_index(0, len - 2);
        if (b >= a) ++b;
        std::swap(next.back().order[a], next.back().order[b]);
      }
    }
    population.swap(next);
  }
}

}  // namespace tnopt
