#pragma once

#include <cstdint>

#include "tnopt/network.hpp"

namespace tnopt {

struct SquareSpec {
  std::size_t side = 2;  // vertices per side
  BondDim chi = 2;
};

struct ErdosRenyiSpec {
  std::size_t n = 16;
  double p = 0.8;
  BondDim chi = 2;
  std::uint64_t seed = 0;
};

/// side x side grid without open legs. Vertex (r, c) has label r*side + c.
/// Edge ids: all horizontal edges row-major first, then all vertical edges
/// row-major, so the horizontal edge (r, c)-(r, c+1) is r*(side-1) + c and
/// the vertical edge (r, c)-(r+1, c) is side*(side-1) + r*side + c.
TensorNetwork square_lattice(const SquareSpec& spec);

EdgeId square_horizontal_edge(std::size_t side, std::size_t row, std::size_t col);
EdgeId square_vertical_edge(std::size_t side, std::size_t row, std::size_t col);

/// G(n, p): vertex pairs (i < j) visited in lexicographic order, one uniform
/// draw each. Isolated vertices are kept.
TensorNetwork erdos_renyi(const ErdosRenyiSpec& spec);

}  // namespace tnopt
