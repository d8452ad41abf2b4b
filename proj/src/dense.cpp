#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "tnopt/dense.hpp"
#include "tnopt/rng.hpp"

namespace tnopt {

namespace {

// Intermediate results may grow past the per-vertex guard, but not without bound.
constexpr std::size_t kMaxIntermediate = 16 * kMaxDenseElements;

std::size_t product(const std::vector<std::size_t>& dims, std::size_t from, std::size_t to) {
  std::size_t p = 1;
  for (std::size_t i = from; i < to; ++i) p *= dims[i];
  return p;
}

std::size_t checked_size(const std::vector<std::size_t>& dims, std::size_t limit) {
  std::size_t p = 1;
  for (auto d : dims) {
    if (d != 0 && p > limit / d) throw NetworkError("dense tensor exceeds " + std::to_string(limit) + " elements");
    p *= d;
  }
  if (p > limit) throw NetworkError("dense tensor exceeds " + std::to_string(limit) + " elements");
  return p;
}

std::optional<std::size_t> find_axis(const DenseTensor& t, const Axis& a) {
  for (std::size_t i = 0; i < t.axes.size(); ++i) {
    if (t.axes[i] == a) return i;
  }
  return std::nullopt;
}

// Reorders axes so that output axis k is input axis perm[k].
DenseTensor permute(const DenseTensor& t, const std::vector<std::size_t>& perm) {
  const std::size_t rank = t.dims.size();
  std::vector<std::size_t> in_stride(rank, 1);
  for (std::size_t i = rank; i-- > 1;) in_stride[i - 1] = in_stride[i] * t.dims[i];
  DenseTensor out;
  for (auto p : perm) {
    out.axes.push_back(t.axes[p]);
    out.dims.push_back(t.dims[p]);
  }
  out.data.resize(t.data.size());
  std::vector<std::size_t> idx(rank, 0);
  for (std::size_t n = 0; n < out.data.size(); ++n) {
    std::size_t src = 0;
    for (std::size_t k = 0; k < rank; ++k) src += idx[k] * in_stride[perm[k]];
    out.data[n] = t.data[src];
    for (std::size_t k = rank; k-- > 0;) {
      if (++idx[k] < out.dims[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

DenseTensor move_axis(const DenseTensor& t, std::size_t axis, bool to_front) {
  std::vector<std::size_t> perm;
  if (to_front) perm.push_back(axis);
  for (std::size_t i = 0; i < t.dims.size(); ++i) {
    if (i != axis) perm.push_back(i);
  }
  if (!to_front) perm.push_back(axis);
  return permute(t, perm);
}

// Sums over axis ia of a paired with axis ib of b.
DenseTensor merge(const DenseTensor& a, std::size_t ia, const DenseTensor& b, std::size_t ib) {
  if (a.dims[ia] != b.dims[ib]) throw std::logic_error("dense contraction: shape mismatch");
  const DenseTensor lhs = move_axis(a, ia, false);
  const DenseTensor rhs = move_axis(b, ib, true);
  const std::size_t k = a.dims[ia];
  const std::size_t m = lhs.data.size() / k;
  const std::size_t n = rhs.data.size() / k;

  DenseTensor out;
  out.axes.assign(lhs.axes.begin(), lhs.axes.end() - 1);
  out.dims.assign(lhs.dims.begin(), lhs.dims.end() - 1);
  out.axes.insert(out.axes.end(), rhs.axes.begin() + 1, rhs.axes.end());
  out.dims.insert(out.dims.end(), rhs.dims.begin() + 1, rhs.dims.end());
  out.data.assign(checked_size(out.dims, kMaxIntermediate), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const double x = lhs.data[i * k + l];
      const double* row = rhs.data.data() + l * n;
      double* dst = out.data.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) dst[j] += x * row[j];
    }
  }
  return out;
}

// Partial trace over axes i < j.
DenseTensor trace(const DenseTensor& t, std::size_t i, std::size_t j) {
  if (t.dims[i] != t.dims[j]) throw std::logic_error("dense trace: shape mismatch");
  const std::size_t d = t.dims[i];
  const std::size_t a = product(t.dims, 0, i);
  const std::size_t b = product(t.dims, i + 1, j);
  const std::size_t c = product(t.dims, j + 1, t.dims.size());
  DenseTensor out;
  for (std::size_t k = 0; k < t.dims.size(); ++k) {
    if (k == i || k == j) continue;
    out.axes.push_back(t.axes[k]);
    out.dims.push_back(t.dims[k]);
  }
  out.data.assign(a * b * c, 0.0);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y)
      for (std::size_t z = 0; z < c; ++z) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += t.data[(((x * d + k) * b + y) * d + k) * c + z];
        out.data[(x * b + y) * c + z] = s;
      }
  return out;
}

}  // namespace

DenseAssignment random_assignment(const TensorNetwork& net, std::uint64_t seed) {
  Rng rng(seed);
  DenseAssignment asg;
  const auto legs = net.open_legs();
  for (VertexId v : net.vertices()) {
    DenseTensor t;
    for (EdgeId e : net.incident_edges(v)) {
      const auto ev = net.edge(e);
      if (ev.u == v) {
        t.axes.push_back({Axis::Kind::EdgeEnd, e, 0});
        t.dims.push_back(ev.chi);
      }
      if (ev.v == v) {
        t.axes.push_back({Axis::Kind::EdgeEnd, e, 1});
        t.dims.push_back(ev.chi);
      }
    }
    for (const auto& leg : legs) {
      if (leg.vertex != v) continue;
      t.axes.push_back({Axis::Kind::Leg, leg.id, 0});
      t.dims.push_back(leg.chi);
    }
    const std::size_t n = checked_size(t.dims, kMaxDenseElements);
    t.data.resize(n);
    for (auto& x : t.data) x = 2.0 * rng.uniform01() - 1.0;
    asg.vertices.push_back(v);
    asg.tensors.push_back(std::move(t));
  }
  return asg;
}

std::vector<DenseTensor> execute(const TensorNetwork& net, const DenseAssignment& asg,
                                 const ContractionSequence& seq) {
  if (auto v = validate_sequence(net, seq)) throw NetworkError("invalid sequence: " + v->message());
  if (asg.tensors.size() != net.vertex_count()) throw NetworkError("assignment does not match network");

  std::vector<std::optional<DenseTensor>> live(asg.tensors.begin(), asg.tensors.end());
  auto holder = [&](const Axis& a) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t t = 0; t < live.size(); ++t) {
      if (!live[t]) continue;
      if (auto i = find_axis(*live[t], a)) return {t, *i};
    }
    throw std::logic_error("dense contraction: axis not found");
  };

  TensorNetwork shadow = net;
  for (EdgeId e : seq.order) {
    const bool loop = shadow.edge(e).is_self_loop();
    shadow.contract(e);
    const auto [ta, ia] = holder({Axis::Kind::EdgeEnd, e, 0});
    const auto [tb, ib] = holder({Axis::Kind::EdgeEnd, e, 1});
    if (loop != (ta == tb)) throw std::logic_error("dense contraction: topology mismatch");
    if (ta == tb) {
      live[ta] = trace(*live[ta], std::min(ia, ib), std::max(ia, ib));
    } else {
      // Keep the result in the earlier slot so components are ordered by
      // their first vertex.
      const auto keep = std::min(ta, tb);
      live[keep] = merge(*live[ta], ia, *live[tb], ib);
      live[std::max(ta, tb)].reset();
    }
  }

  std::vector<DenseTensor> out;
  for (auto& t : live) {
    if (!t) continue;
    std::vector<std::size_t> perm(t->axes.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return t->axes[x].id < t->axes[y].id; });
    out.push_back(permute(*t, perm));
  }
  return out;
}

double max_relative_deviation(const std::vector<DenseTensor>& a, const std::vector<DenseTensor>& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.size() != b.size()) return inf;
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t].axes != b[t].axes || a[t].dims != b[t].dims) return inf;
    for (std::size_t i = 0; i < a[t].data.size(); ++i) {
      scale = std::max(scale, std::abs(a[t].data[i]));
      diff = std::max(diff, std::abs(a[t].data[i] - b[t].data[i]));
    }
  }
  return diff / std::max(scale, 1e-12);
}

}  // namespace tnopt
