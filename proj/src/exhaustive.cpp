#include <optional>
#include <stdexcept>

#include "tnopt/deterministic.hpp"

namespace tnopt {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const TensorNetwork& net, EvalBudget& budget)
      : levels_(net.remaining_edge_count() + 1, net), budget_(budget) {
    prefix_.reserve(net.remaining_edge_count());
  }

  void run() { descend(0, Cost{}); }

  const std::optional<Cost>& best() const { return best_; }
  const std::vector<EdgeId>& best_order() const { return best_order_; }
  const std::vector<TracePoint>& trace() const { return trace_; }

 private:
  void descend(std::size_t depth, const Cost& accumulated) {
    const TensorNetwork& state = levels_[depth];
    if (state.remaining_edge_count() == 0) {
      // Pruning guarantees this is a strict improvement.
      best_ = accumulated;
      best_order_ = prefix_;
      trace_.push_back(TracePoint{budget_.full_evaluations(), accumulated});
      return;
    }
    for (EdgeId e : state.remaining_edges()) {
      Cost total = accumulated + state.step_cost(e);
      budget_.record_steps();
      if (best_ && total >= *best_) continue;
      levels_[depth + 1] = levels_[depth];
      levels_[depth + 1].contract(e);
      prefix_.push_back(e);
      descend(depth + 1, total);
      prefix_.pop_back();
    }
  }

  std::vector<TensorNetwork> levels_;
  EvalBudget& budget_;
  std::vector<EdgeId> prefix_;
  std::optional<Cost> best_;
  std::vector<EdgeId> best_order_;
  std::vector<TracePoint> trace_;
};

}  // namespace

OptimizerResult exhaustive_search(const TensorNetwork& net, EvalBudget& budget,
                                  const ExhaustiveConfig& cfg) {
  const auto edges = net.remaining_edge_count();
  if (edges == 0) throw std::invalid_argument("exhaustive search needs at least one edge");
  if (edges > cfg.max_edges && !cfg.force) {
    throw std::invalid_argument("exhaustive search refused: " + std::to_string(edges) +
                                " edges exceeds the limit of " + std::to_string(cfg.max_edges) +
                                " (force to override)");
  }
  BranchAndBound search(net, budget);
  search.run();

  OptimizerResult r;
  r.algorithm = "exhaustive";
  r.best_sequence.order = search.best_order();
  r.best_cost = *search.best();
  r.trace = search.trace();
  r.step_computations = budget.step_computations();
  r.full_evaluations = budget.full_evaluations();
  return r;
}

}  // namespace tnopt
