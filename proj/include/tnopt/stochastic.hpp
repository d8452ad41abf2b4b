#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "tnopt/network.hpp"
#include "tnopt/optimizer.hpp"
#include "tnopt/rng.hpp"

namespace tnopt {

/// Population fitness: exp[(ln c_max - ln c) / (ln c_max - ln c_min)] - 0.99,
/// so the cheapest member scores e - 0.99 and the dearest 0.01. A population
/// of equal costs scores 1.0 throughout.
std::vector<double> fitness(std::span<const Cost> costs);

struct GAConfig {
  std::size_t population_size = 20;
  double mutation_rate = 0.6;
  std::uint64_t seed = 0;
  double max_full_evaluations = 1000.0;
  /// Called with (generation, cheapest cost in it) after each fully
  /// evaluated generation.
  std::function<void(std::size_t, const Cost&)> on_generation;
};

/// Fitness-proportional resampling plus single-swap mutation, with the
/// fittest individual carried over unmutated. Every individual is
/// re-evaluated every generation.
OptimizerResult ga_run(const TensorNetwork& net, const GAConfig& cfg, EvalBudget& budget,
                       const StopRule& stop = {});

struct SAConfig {
  double initial_temp = 5230.0;
  double restart_temp_ratio = 2e-5;
  double visit = 2.62;    // Tsallis visiting parameter q_v
  double accept = -5.0;   // acceptance parameter q_a
  bool local_search = true;
  std::uint64_t seed = 0;
  double max_full_evaluations = 1000.0;
};

/// Generalized (dual) simulated annealing over random-key vectors in [0,1]^E.
///
/// Energy is the multiplication count itself. A candidate is charged only for
/// the steps it does not share with the current state, and its evaluation is
/// abandoned once its partial cost rules out acceptance. After a Markov chain
/// that improved the global best, the best state is polished by local_search.
OptimizerResult sa_run(const TensorNetwork& net, const SAConfig& cfg, EvalBudget& budget,
                       const StopRule& stop = {});

struct LocalSearchResult {
  ContractionSequence sequence;
  Cost cost;
};

/// Best-improvement hill climb over adjacent transpositions. Swapping
/// positions i and i+1 leaves every other step unchanged, so a trial is
/// charged two step computations. The climb stops at a local optimum or when
/// `gate` refuses. `known_cost`, if given, must equal the cost of `seq`.
LocalSearchResult local_search(const TensorNetwork& net, ContractionSequence seq, EvalBudget& budget,
                               const EvaluationGate& gate = EvaluationGate(
                                   std::numeric_limits<double>::infinity()),
                               std::optional<Cost> known_cost = std::nullopt);

/// Uniformly random permutation of the live edges.
ContractionSequence random_sequence(const TensorNetwork& net, Rng& rng);

/// Probability of accepting a move that raises the energy by `delta` under
/// the generalized Metropolis rule with parameter `accept` at `temperature`.
double gsa_acceptance(double delta, double temperature, double accept);

/// Visiting temperature after `t` >= 1 annealing iterations.
double gsa_visit_temperature(double initial_temp, double visit, std::size_t t);

/// Draws displacements from the Tsallis visiting distribution.
class TsallisVisitor {
 public:
  explicit TsallisVisitor(double visit);
  double draw(double temperature, Rng& rng) const;

 private:
  double visit_;
  double factor4_p_;
  double factor6_;
};

}  // namespace tnopt
