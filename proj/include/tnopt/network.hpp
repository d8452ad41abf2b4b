#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tnopt/cost.hpp"

namespace tnopt {

using VertexId = std::int64_t;
using EdgeId = std::int32_t;
using LegId = std::int64_t;
using BondDim = std::uint64_t;

/// Raised for structural errors: unknown ids, invariant violations, bad input.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeView {
  EdgeId id;
  VertexId u;
  VertexId v;
  BondDim chi;
  bool is_self_loop() const { return u == v; }
};

struct OpenLegView {
  LegId id;
  VertexId vertex;
  BondDim chi;
};

/// Multigraph of tensors. Internal edges carry dense ids 0..E-1 assigned in
/// insertion order; self-loops and parallel edges are allowed. Open legs are
/// dangling indices attached to one vertex.
///
/// Contracting an edge between two vertices merges them into the one with
/// the lower insertion index; any other edge between the pair becomes a
/// self-loop on the merged vertex. Contracting a self-loop is a trace and
/// only removes the edge.
class TensorNetwork {
 public:
  TensorNetwork() = default;

  void add_vertex(VertexId label);
  /// Returns the new edge's id, which equals the number of edges added before.
  EdgeId add_edge(VertexId u, VertexId v, BondDim chi);
  void add_open_leg(LegId id, VertexId vertex, BondDim chi);

  /// Number of edges the network was built with (E), contracted or not.
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t remaining_edge_count() const { return remaining_edges_; }
  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t open_leg_count() const { return legs_.size(); }

  bool contains_edge(EdgeId e) const {
    return e >= 0 && static_cast<std::size_t>(e) < edges_.size() && edges_[e].alive;
  }
  bool contains_vertex(VertexId label) const;

  /// Throws NetworkError("no such edge ...") if `e` is unknown or contracted.
  EdgeView edge(EdgeId e) const;
  /// Live edges in ascending id order.
  std::vector<EdgeId> remaining_edges() const;
  std::vector<EdgeView> edges() const;
  /// Live vertex labels in insertion order.
  std::vector<VertexId> vertices() const;
  std::vector<OpenLegView> open_legs() const;
  /// Live edges touching `label`, ascending; a self-loop is listed once.
  std::vector<EdgeId> incident_edges(VertexId label) const;

  /// Product of bond dimensions over the distinct edges and open legs
  /// attached to either endpoint of `e`, `e` included once.
  Cost step_cost(EdgeId e) const;
  /// Performs the contraction in place and returns its step cost.
  Cost contract(EdgeId e);

  /// Structural equality: same live vertices, edges (with endpoints and chi)
  /// and open legs.
  friend bool operator==(const TensorNetwork& a, const TensorNetwork& b);

 private:
  struct VertexSlot {
    VertexId label = 0;
    bool alive = true;
    std::vector<EdgeId> edges;
    std::vector<std::uint32_t> legs;
  };
  struct EdgeSlot {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    BondDim chi = 1;
    bool alive = true;
  };
  struct LegSlot {
    LegId id = 0;
    std::uint32_t vertex = 0;
    BondDim chi = 1;
  };

  std::uint32_t index_of(VertexId label) const;
  const EdgeSlot& live_edge(EdgeId e) const;

  std::vector<VertexSlot> vertices_;
  std::vector<EdgeSlot> edges_;
  std::vector<LegSlot> legs_;
  std::size_t live_vertices_ = 0;
  std::size_t remaining_edges_ = 0;
};

/// Value-semantics contraction step: returns the contracted copy and the cost.
std::pair<TensorNetwork, Cost> contract_step(const TensorNetwork& net, EdgeId e);

}  // namespace tnopt
