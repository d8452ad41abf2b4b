#pragma once

#include <cstddef>
#include <cstdint>

namespace tnopt {

/// Counts incremental step-cost computations. E of them (E = edge count of
/// the original network) make one full cost-function evaluation, the unit in
/// which all search budgets are expressed.
class EvalBudget {
 public:
  explicit EvalBudget(std::size_t edge_count) : edge_count_(edge_count == 0 ? 1 : edge_count) {}

  void record_steps(std::uint64_t n = 1) { steps_ += n; }
  void record_full_evaluation() { steps_ += edge_count_; }

  std::uint64_t step_computations() const { return steps_; }
  std::size_t edge_count() const { return edge_count_; }
  double full_evaluations() const {
    return static_cast<double>(steps_) / static_cast<double>(edge_count_);
  }

 private:
  std::size_t edge_count_;
  std::uint64_t steps_ = 0;
};

}  // namespace tnopt
