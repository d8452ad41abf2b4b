#pragma once

#include <array>

#include "tnopt/generators.hpp"
#include "tnopt/network.hpp"
#include "tnopt/rng.hpp"

namespace fixtures {

using tnopt::BondDim;
using tnopt::TensorNetwork;

// N_klmn = sum_ij T_ijkl X_i Y_jmn. Vertices T=0, X=1, Y=2; edge i=0 (T-X),
// j=1 (T-Y); legs k=0, l=1 on T and m=2, n=3 on Y.
struct ChiSet {
  BondDim i = 2, j = 2, k = 2, l = 2, m = 2, n = 2;
};

inline TensorNetwork three_tensor(const ChiSet& c = {}) {
  TensorNetwork net;
  for (int v = 0; v < 3; ++v) net.add_vertex(v);
  net.add_edge(0, 1, c.i);
  net.add_edge(0, 2, c.j);
  net.add_open_leg(0, 0, c.k);
  net.add_open_leg(1, 0, c.l);
  net.add_open_leg(2, 2, c.m);
  net.add_open_leg(3, 2, c.n);
  return net;
}

inline constexpr tnopt::EdgeId kEdgeI = 0;
inline constexpr tnopt::EdgeId kEdgeJ = 1;

inline TensorNetwork path3(BondDim chi = 2) {
  TensorNetwork net;
  for (int v = 0; v < 3; ++v) net.add_vertex(v);
  net.add_edge(0, 1, chi);
  net.add_edge(1, 2, chi);
  return net;
}

inline TensorNetwork parallel_pair(BondDim chi = 2) {
  TensorNetwork net;
  net.add_vertex(0);
  net.add_vertex(1);
  net.add_edge(0, 1, chi);
  net.add_edge(0, 1, chi);
  return net;
}

inline TensorNetwork four_cycle(BondDim chi = 2) { return tnopt::square_lattice({2, chi}); }

// Random multigraph with up to `max_vertices` vertices, `max_edges` edges
// (self-loops and parallel edges allowed) and a few open legs.
inline TensorNetwork random_multigraph(tnopt::Rng& rng, std::size_t max_vertices, std::size_t max_edges,
                                       BondDim max_chi, std::size_t max_legs = 2) {
  TensorNetwork net;
  const auto n = rng.uniform_index(1, max_vertices);
  for (std::size_t v = 0; v < n; ++v) net.add_vertex(static_cast<tnopt::VertexId>(v));
  const auto edges = rng.uniform_index(1, max_edges);
  for (std::size_t e = 0; e < edges; ++e) {
    const auto u = rng.uniform_index(0, n - 1);
    const auto v = rng.uniform_index(0, n - 1);
    net.add_edge(static_cast<tnopt::VertexId>(u), static_cast<tnopt::VertexId>(v), rng.uniform_index(1, max_chi));
  }
  const auto legs = rng.uniform_index(0, max_legs);
  for (std::size_t l = 0; l < legs; ++l) {
    net.add_open_leg(static_cast<tnopt::LegId>(l), static_cast<tnopt::VertexId>(rng.uniform_index(0, n - 1)),
                     rng.uniform_index(1, max_chi));
  }
  return net;
}

}  // namespace fixtures
