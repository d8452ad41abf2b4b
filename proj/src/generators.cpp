#include "tnopt/generators.hpp"

#include <stdexcept>

#include "tnopt/rng.hpp"

namespace tnopt {

EdgeId square_horizontal_edge(std::size_t side, std::size_t row, std::size_t col) {
  return static_cast<EdgeId>(row * (side - 1) + col);
}

EdgeId square_vertical_edge(std::size_t side, std::size_t row, std::size_t col) {
  return static_cast<EdgeId>(side * (side - 1) + row * side + col);
}

TensorNetwork square_lattice(const SquareSpec& spec) {
  if (spec.side < 1) throw std::invalid_argument("square lattice needs side >= 1");
  const auto L = spec.side;
  TensorNetwork net;
  for (std::size_t v = 0; v < L * L; ++v) net.add_vertex(static_cast<VertexId>(v));
  auto label = [L](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * L + c); };
  for (std::size_t r = 0; r < L; ++r) {
    for (std::size_t c = 0; c + 1 < L; ++c) net.add_edge(label(r, c), label(r, c + 1), spec.chi);
  }
  for (std::size_t r = 0; r + 1 < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) net.add_edge(label(r, c), label(r + 1, c), spec.chi);
  }
  return net;
}

TensorNetwork erdos_renyi(const ErdosRenyiSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("Erdos-Renyi graph needs n >= 1");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw std::invalid_argument("edge probability outside [0, 1]");
  Rng rng(spec.seed);
  TensorNetwork net;
  for (std::size_t v = 0; v < spec.n; ++v) net.add_vertex(static_cast<VertexId>(v));
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = i + 1; j < spec.n; ++j) {
      if (rng.uniform01() < spec.p) {
        net.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j), spec.chi);
      }
    }
  }
  return net;
}

}  // namespace tnopt
