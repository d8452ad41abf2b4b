#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tnopt/budget.hpp"
#include "tnopt/cost.hpp"
#include "tnopt/sequence.hpp"

namespace tnopt {

struct TracePoint {
  double full_evaluations;
  Cost best_cost;
};

struct OptimizerResult {
  std::string algorithm;
  ContractionSequence best_sequence;
  Cost best_cost;
  /// (evaluations, best-so-far) at every improvement; best_cost non-increasing.
  std::vector<TracePoint> trace;
  std::uint64_t step_computations = 0;
  double full_evaluations = 0.0;
};

/// Extra stopping rule consulted before every full evaluation, after the
/// evaluation cap. Receives the budget and the best cost so far.
using StopRule = std::function<bool(const EvalBudget&, const Cost&)>;

/// Gate in front of every cost-function evaluation of a stochastic search.
/// The first evaluation is always admitted; afterwards an evaluation is
/// admitted only if it keeps the budget within `max_full_evaluations`.
class EvaluationGate {
 public:
  EvaluationGate(double max_full_evaluations, StopRule stop = {})
      : max_(max_full_evaluations), stop_(std::move(stop)) {}

  bool admits(const EvalBudget& budget, const std::optional<Cost>& best) const {
    return admits_steps(budget, best, budget.edge_count());
  }

  /// As admits(), for a partial evaluation costing `steps` step computations.
  bool admits_steps(const EvalBudget& budget, const std::optional<Cost>& best, std::uint64_t steps) const {
    if (!best) return true;
    const double after = static_cast<double>(budget.step_computations() + steps) /
                         static_cast<double>(budget.edge_count());
    if (after > max_ + 1e-9) return false;
    return !(stop_ && stop_(budget, *best));
  }

 private:
  double max_;
  StopRule stop_;
};

/// Best sequence seen so far plus its improvement trace.
class BestTracker {
 public:
  /// Returns true if `cost` strictly improves on the best so far.
  bool offer(const Cost& cost, std::span<const EdgeId> order, const EvalBudget& budget) {
    if (best_ && !(cost < *best_)) return false;
    best_ = cost;
    order_.assign(order.begin(), order.end());
    trace_.push_back(TracePoint{budget.full_evaluations(), cost});
    return true;
  }

  const std::optional<Cost>& best() const { return best_; }
  const std::vector<EdgeId>& order() const { return order_; }

  OptimizerResult finish(std::string algorithm, const EvalBudget& budget) && {
    OptimizerResult r;
    r.algorithm = std::move(algorithm);
    r.best_sequence.order = std::move(order_);
    r.best_cost = best_.value_or(Cost{});
    r.trace = std::move(trace_);
    r.step_computations = budget.step_computations();
    r.full_evaluations = budget.full_evaluations();
    return r;
  }

 private:
  std::optional<Cost> best_;
  std::vector<EdgeId> order_;
  std::vector<TracePoint> trace_;
};

}  // namespace tnopt
