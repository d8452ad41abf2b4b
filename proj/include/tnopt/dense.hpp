#pragma once

#include <cstdint>
#include <vector>

#include "tnopt/network.hpp"
#include "tnopt/sequence.hpp"

namespace tnopt {

/// Names one axis of a dense tensor: an end of an internal edge or an open leg.
struct Axis {
  enum class Kind { EdgeEnd, Leg };
  Kind kind;
  std::int64_t id;  // EdgeId or LegId
  int end = 0;      // 0 for the edge's u side, 1 for v; 0 for legs

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Row-major dense tensor with labelled axes.
struct DenseTensor {
  std::vector<Axis> axes;
  std::vector<std::size_t> dims;
  std::vector<double> data;

  std::size_t size() const { return data.size(); }
};

/// One tensor per vertex of the network it was built for. Axes are ordered
/// by incident edge id (a self-loop contributes both ends), then by leg id.
struct DenseAssignment {
  std::vector<VertexId> vertices;
  std::vector<DenseTensor> tensors;
};

inline constexpr std::size_t kMaxDenseElements = 1'000'000;

/// Entries i.i.d. uniform on [-1, 1]. Throws NetworkError if any vertex
/// tensor would exceed kMaxDenseElements.
DenseAssignment random_assignment(const TensorNetwork& net, std::uint64_t seed);

/// Contracts `asg` numerically along `seq`. Returns one tensor per connected
/// component, ordered by the first vertex of the component, whose axes are
/// the surviving open legs sorted by id.
std::vector<DenseTensor> execute(const TensorNetwork& net, const DenseAssignment& asg,
                                 const ContractionSequence& seq);

/// max|a - b| / max(max|a|, 1e-12) over matching results; infinity if the
/// shapes or leg labels differ.
double max_relative_deviation(const std::vector<DenseTensor>& a, const std::vector<DenseTensor>& b);

}  // namespace tnopt
