#include "tnopt/sequence.hpp"

#include <algorithm>
#include <numeric>

namespace tnopt {

std::string SequenceViolation::message() const {
  switch (kind) {
    case Kind::Duplicate:
      return "duplicate edge " + std::to_string(edge);
    case Kind::Missing:
      return "missing edge " + std::to_string(edge);
    case Kind::Unknown:
      return "unknown edge " + std::to_string(edge);
  }
  return "invalid sequence";
}

std::optional<SequenceViolation> validate_sequence(const TensorNetwork& net,
                                                   const ContractionSequence& seq) {
  std::vector<char> seen(net.edge_count(), 0);
  for (EdgeId e : seq.order) {
    if (!net.contains_edge(e)) return SequenceViolation{SequenceViolation::Kind::Unknown, e};
    if (seen[e]) return SequenceViolation{SequenceViolation::Kind::Duplicate, e};
    seen[e] = 1;
  }
  for (EdgeId e : net.remaining_edges()) {
    if (!seen[e]) return SequenceViolation{SequenceViolation::Kind::Missing, e};
  }
  return std::nullopt;
}

namespace {

void require_valid(const TensorNetwork& net, const ContractionSequence& seq) {
  if (auto v = validate_sequence(net, seq)) throw NetworkError("invalid sequence: " + v->message());
}

}  // namespace

SequenceEvaluation evaluate_sequence(const TensorNetwork& net, const ContractionSequence& seq,
                                     EvalBudget& budget, bool keep_snapshots) {
  require_valid(net, seq);
  SequenceEvaluation out;
  out.steps.reserve(seq.size());
  TensorNetwork work = net;
  for (EdgeId e : seq.order) {
    Cost step = work.contract(e);
    out.total += step;
    StepRecord rec{e, std::move(step), out.total, std::nullopt};
    if (keep_snapshots) rec.snapshot = work;
    out.steps.push_back(std::move(rec));
  }
  budget.record_steps(seq.size());
  return out;
}

Cost sequence_cost(const TensorNetwork& net, std::span<const EdgeId> order, EvalBudget& budget) {
  TensorNetwork work = net;
  Cost total;
  for (EdgeId e : order) total += work.contract(e);
  budget.record_steps(order.size());
  return total;
}

TensorNetwork final_state(const TensorNetwork& net, const ContractionSequence& seq) {
  require_valid(net, seq);
  TensorNetwork work = net;
  for (EdgeId e : seq.order) work.contract(e);
  return work;
}

ContractionSequence decode_keys(std::span<const double> keys, std::span<const EdgeId> edge_ids) {
  if (keys.size() != edge_ids.size()) {
    throw std::invalid_argument("decode_keys: " + std::to_string(keys.size()) + " keys for " +
                                std::to_string(edge_ids.size()) + " edges");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!(keys[i] >= 0.0 && keys[i] <= 1.0)) {
      throw std::invalid_argument("decode_keys: key " + std::to_string(i) + " outside [0, 1]");
    }
  }
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  ContractionSequence seq;
  seq.order.reserve(idx.size());
  for (auto i : idx) seq.order.push_back(edge_ids[i]);
  return seq;
}

}  // namespace tnopt
