#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tnopt/deterministic.hpp"
#include "tnopt/generators.hpp"
#include "tnopt/stochastic.hpp"

using namespace tnopt;

namespace {

Cost cost_of(const TensorNetwork& net, const ContractionSequence& seq) {
  EvalBudget b(net.edge_count());
  return evaluate_sequence(net, seq, b).total;
}

}  // namespace

TEST_CASE("exhaustive_search examples") {
  EvalBudget b(2);
  const auto r = exhaustive_search(fixtures::three_tensor(), b);
  CHECK(r.best_cost == Cost(48));
  CHECK(r.best_sequence.order == std::vector<EdgeId>{fixtures::kEdgeI, fixtures::kEdgeJ});
  CHECK(b.step_computations() > 0);

  EvalBudget b4(4);
  CHECK(exhaustive_search(fixtures::four_cycle(), b4).best_cost == Cost(22));

  TensorNetwork single;
  single.add_vertex(0);
  single.add_vertex(1);
  single.add_edge(0, 1, 3);
  EvalBudget b1(1);
  CHECK(exhaustive_search(single, b1).best_cost == Cost(3));
}

TEST_CASE("exhaustive_search guards") {
  TensorNetwork empty;
  empty.add_vertex(0);
  EvalBudget b(1);
  CHECK_THROWS(exhaustive_search(empty, b));
  EvalBudget b24(24);
  CHECK_THROWS(exhaustive_search(square_lattice({4, 2}), b24));
  ExhaustiveConfig small{4, false};
  EvalBudget b12(12);
  CHECK_THROWS(exhaustive_search(square_lattice({3, 2}), b12, small));
  small.force = true;
  EvalBudget b4(4);
  CHECK(exhaustive_search(square_lattice({2, 2}), b4, ExhaustiveConfig{3, true}).best_cost == Cost(22));
}

TEST_CASE("exhaustive_search equals a no-pruning brute force") {
  Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const auto net = fixtures::random_multigraph(rng, 5, 7, 4);
    const auto [best, order] = oracle::brute_force(net);
    EvalBudget b(net.edge_count());
    const auto r = exhaustive_search(net, b);
    CHECK(r.best_cost == Cost(best));
    CHECK(cost_of(net, r.best_sequence) == r.best_cost);
  }
}

TEST_CASE("exhaustive_search beats random permutations") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto net = fixtures::random_multigraph(rng, 6, 8, 3);
    EvalBudget b(net.edge_count());
    const auto best = exhaustive_search(net, b).best_cost;
    for (int s = 0; s < 100; ++s) CHECK(best <= cost_of(net, random_sequence(net, rng)));
  }
}

TEST_CASE("greedy_search k=1 on the three-tensor example") {
  EvalBudget b(2);
  const auto r = greedy_search(fixtures::three_tensor(), GreedyConfig{1, 0}, b);
  CHECK(r.best_sequence.order == std::vector<EdgeId>{fixtures::kEdgeI, fixtures::kEdgeJ});
  CHECK(r.best_cost == Cost(48));
}

TEST_CASE("greedy_search with full lookahead matches exhaustive") {
  Rng rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    const auto net = fixtures::random_multigraph(rng, 5, 6, 4);
    EvalBudget be(net.edge_count());
    EvalBudget bg(net.edge_count());
    const auto exact = exhaustive_search(net, be).best_cost;
    const auto greedy = greedy_search(net, GreedyConfig{net.edge_count(), trial + 0ULL}, bg);
    CHECK(greedy.best_cost == exact);
    CHECK(greedy.best_cost == cost_of(net, greedy.best_sequence));
  }
}

TEST_CASE("greedy_search k=1 budget is E(E+1)/2") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = fixtures::random_multigraph(rng, 7, 12, 5);
    const std::uint64_t E = net.edge_count();
    EvalBudget b(E);
    const auto r = greedy_search(net, GreedyConfig{1, 9}, b);
    CHECK(b.step_computations() == E * (E + 1) / 2);
    CHECK_FALSE(validate_sequence(net, r.best_sequence));
  }
  const auto lattice = square_lattice({5, 10});
  EvalBudget b(lattice.edge_count());
  greedy_search(lattice, GreedyConfig{1, 0}, b);
  CHECK(b.step_computations() == 40 * 41 / 2);
}

TEST_CASE("greedy_search output is always a valid sequence") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto net = erdos_renyi({9, 0.5, 3, seed});
    if (net.edge_count() == 0) continue;
    EvalBudget b(net.edge_count());
    const auto r = greedy_search(net, GreedyConfig{2, seed}, b);
    CHECK_FALSE(validate_sequence(net, r.best_sequence));
    CHECK(r.trace.size() == 1);
  }
}

TEST_CASE("greedy_search k=2 on the 6x6 lattice is degenerate across seeds") {
  const auto net = square_lattice({6, 10});
  std::set<std::string> costs;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    EvalBudget b(net.edge_count());
    costs.insert(greedy_search(net, GreedyConfig{2, seed}, b).best_cost.to_string());
  }
  CHECK(costs.size() > 1);
}

TEST_CASE("greedy_search rejects k=0") {
  EvalBudget b(2);
  CHECK_THROWS(greedy_search(fixtures::path3(), GreedyConfig{0, 0}, b));
}
