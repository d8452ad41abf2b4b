#pragma once

#include <cstdint>

#include "tnopt/network.hpp"
#include "tnopt/optimizer.hpp"

namespace tnopt {

struct ExhaustiveConfig {
  /// Refuse networks with more edges than this unless `force` is set.
  std::size_t max_edges = 16;
  bool force = false;
};

/// Depth-first branch-and-bound over all contraction orders. Edges are tried
/// in ascending id order at every depth and a prefix is pruned as soon as its
/// accumulated cost reaches the incumbent, so the first optimal order in
/// lexicographic order wins. Every step-cost computation is charged.
OptimizerResult exhaustive_search(const TensorNetwork& net, EvalBudget& budget,
                                  const ExhaustiveConfig& cfg = {});

struct GreedyConfig {
  std::size_t k = 2;  // lookahead depth
  std::uint64_t seed = 0;
};

/// k-step lookahead greedy search. Each round scores every sequence of the
/// next min(k, remaining) contractions by its summed step cost and commits
/// only the first edge of a best-scoring one; ties are broken uniformly at
/// random. Nothing is cached between rounds.
OptimizerResult greedy_search(const TensorNetwork& net, const GreedyConfig& cfg, EvalBudget& budget);

}  // namespace tnopt
