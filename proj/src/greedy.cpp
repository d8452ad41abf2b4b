#include <stdexcept>

#include "tnopt/deterministic.hpp"
#include "tnopt/rng.hpp"

namespace tnopt {

namespace {

// Minimum summed step cost over all sequences of the next `depth`
// contractions (fewer if the network runs out of edges).
Cost best_continuation(const TensorNetwork& state, std::size_t depth, EvalBudget& budget) {
  std::optional<Cost> best;
  for (EdgeId e : state.remaining_edges()) {
    Cost score = state.step_cost(e);
    budget.record_steps();
    if (depth > 1 && state.remaining_edge_count() > 1) {
      TensorNetwork next = state;
      next.contract(e);
      score += best_continuation(next, depth - 1, budget);
    }
    if (!best || score < *best) best = std::move(score);
  }
  return best.value_or(Cost{});
}

}  // namespace

OptimizerResult greedy_search(const TensorNetwork& net, const GreedyConfig& cfg, EvalBudget& budget) {
  if (cfg.k < 1) throw std::invalid_argument("greedy lookahead k must be >= 1");
  Rng rng(cfg.seed);
  TensorNetwork state = net;
  OptimizerResult r;
  r.algorithm = "greedy";
  r.best_sequence.order.reserve(net.remaining_edge_count());

  while (state.remaining_edge_count() > 0) {
    std::optional<Cost> best_score;
    EdgeId chosen = -1;
    std::size_t ties = 0;
    for (EdgeId e : state.remaining_edges()) {
      Cost score = state.step_cost(e);
      budget.record_steps();
      if (cfg.k > 1 && state.remaining_edge_count() > 1) {
        TensorNetwork next = state;
        next.contract(e);
        score += best_continuation(next, cfg.k - 1, budget);
      }
      if (!best_score || score < *best_score) {
        best_score = std::move(score);
        chosen = e;
        ties = 1;
      } else if (score == *best_score) {
        // Reservoir sampling keeps each tied edge with equal probability.
        ++ties;
        if (rng.uniform_index(0, ties - 1) == 0) chosen = e;
      }
    }
    r.best_cost += state.contract(chosen);
    r.best_sequence.order.push_back(chosen);
  }

  r.step_computations = budget.step_computations();
  r.full_evaluations = budget.full_evaluations();
  r.trace.push_back(TracePoint{r.full_evaluations, r.best_cost});
  return r;
}

}  // namespace tnopt
