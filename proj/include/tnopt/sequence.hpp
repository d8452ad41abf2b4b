#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnopt/budget.hpp"
#include "tnopt/cost.hpp"
#include "tnopt/network.hpp"

namespace tnopt {

/// An ordering of a network's internal edges.
struct ContractionSequence {
  std::vector<EdgeId> order;

  std::size_t size() const { return order.size(); }
  friend bool operator==(const ContractionSequence&, const ContractionSequence&) = default;
};

struct SequenceViolation {
  enum class Kind { Duplicate, Missing, Unknown };
  Kind kind;
  EdgeId edge;

  std::string message() const;
};

/// nullopt iff `seq` is a permutation of the live edges of `net`.
std::optional<SequenceViolation> validate_sequence(const TensorNetwork& net,
                                                   const ContractionSequence& seq);

struct StepRecord {
  EdgeId edge;
  Cost step_cost;
  Cost accumulated_cost;
  std::optional<TensorNetwork> snapshot;  // network after the step
};

struct SequenceEvaluation {
  Cost total;
  std::vector<StepRecord> steps;
};

/// Contracts a copy of `net` along `seq`, recording every step. Throws
/// NetworkError("invalid sequence: ...") if `seq` is not a permutation.
SequenceEvaluation evaluate_sequence(const TensorNetwork& net, const ContractionSequence& seq,
                                     EvalBudget& budget, bool keep_snapshots = false);

/// Total cost only; no validation beyond what contraction itself checks.
/// This is the hot path used by the stochastic optimizers.
Cost sequence_cost(const TensorNetwork& net, std::span<const EdgeId> order, EvalBudget& budget);

TensorNetwork final_state(const TensorNetwork& net, const ContractionSequence& seq);

/// Random-key decoding: edges sorted by ascending key, ties by position.
/// Keys must lie in [0, 1].
ContractionSequence decode_keys(std::span<const double> keys, std::span<const EdgeId> edge_ids);

}  // namespace tnopt
