#include "tnopt/network.hpp"

#include <algorithm>
#include <string>

namespace tnopt {

namespace {

void erase_value(std::vector<EdgeId>& list, EdgeId e) {
  auto it = std::find(list.begin(), list.end(), e);
  if (it != list.end()) list.erase(it);
}

}  // namespace

std::uint32_t TensorNetwork::index_of(VertexId label) const {
  for (std::uint32_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].label == label && vertices_[i].alive) return i;
  }
  throw NetworkError("no such vertex " + std::to_string(label));
}

bool TensorNetwork::contains_vertex(VertexId label) const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [&](const VertexSlot& s) { return s.alive && s.label == label; });
}

void TensorNetwork::add_vertex(VertexId label) {
  if (std::any_of(vertices_.begin(), vertices_.end(),
                  [&](const VertexSlot& s) { return s.label == label; })) {
    throw NetworkError("duplicate vertex " + std::to_string(label));
  }
  vertices_.push_back(VertexSlot{label, true, {}, {}});
  ++live_vertices_;
}

EdgeId TensorNetwork::add_edge(VertexId u, VertexId v, BondDim chi) {
  if (chi < 1) throw NetworkError("edge " + std::to_string(edges_.size()) + " has chi < 1");
  const auto iu = index_of(u);
  const auto iv = index_of(v);
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(EdgeSlot{iu, iv, chi, true});
  vertices_[iu].edges.push_back(id);
  if (iv != iu) vertices_[iv].edges.push_back(id);
  ++remaining_edges_;
  return id;
}

void TensorNetwork::add_open_leg(LegId id, VertexId vertex, BondDim chi) {
  if (chi < 1) throw NetworkError("open leg " + std::to_string(id) + " has chi < 1");
  if (std::any_of(legs_.begin(), legs_.end(), [&](const LegSlot& l) { return l.id == id; })) {
    throw NetworkError("duplicate open leg " + std::to_string(id));
  }
  const auto iv = index_of(vertex);
  vertices_[iv].legs.push_back(static_cast<std::uint32_t>(legs_.size()));
  legs_.push_back(LegSlot{id, iv, chi});
}

const TensorNetwork::EdgeSlot& TensorNetwork::live_edge(EdgeId e) const {
  if (!contains_edge(e)) throw NetworkError("no such edge " + std::to_string(e));
  return edges_[e];
}

EdgeView TensorNetwork::edge(EdgeId e) const {
  const auto& s = live_edge(e);
  return EdgeView{e, vertices_[s.u].label, vertices_[s.v].label, s.chi};
}

std::vector<EdgeId> TensorNetwork::remaining_edges() const {
  std::vector<EdgeId> out;
  out.reserve(remaining_edges_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

std::vector<EdgeView> TensorNetwork::edges() const {
  std::vector<EdgeView> out;
  out.reserve(remaining_edges_);
  for (EdgeId e : remaining_edges()) out.push_back(edge(e));
  return out;
}

std::vector<VertexId> TensorNetwork::vertices() const {
  std::vector<VertexId> out;
  out.reserve(live_vertices_);
  for (const auto& s : vertices_) {
    if (s.alive) out.push_back(s.label);
  }
  return out;
}

std::vector<OpenLegView> TensorNetwork::open_legs() const {
  std::vector<OpenLegView> out;
  out.reserve(legs_.size());
  for (const auto& l : legs_) out.push_back(OpenLegView{l.id, vertices_[l.vertex].label, l.chi});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::vector<EdgeId> TensorNetwork::incident_edges(VertexId label) const {
  auto out = vertices_[index_of(label)].edges;
  std::sort(out.begin(), out.end());
  return out;
}

Cost TensorNetwork::step_cost(EdgeId e) const {
  const auto& s = live_edge(e);
  CostProduct product;
  const auto& a = vertices_[s.u];
  for (EdgeId f : a.edges) product.multiply(edges_[f].chi);
  for (auto l : a.legs) product.multiply(legs_[l].chi);
  if (s.u != s.v) {
    const auto& b = vertices_[s.v];
    for (EdgeId f : b.edges) {
      const auto& g = edges_[f];
      // Edges joining the two endpoints were already counted via `a`.
      const bool shared = (g.u == s.u && g.v == s.v) || (g.u == s.v && g.v == s.u);
      if (!shared) product.multiply(g.chi);
    }
    for (auto l : b.legs) product.multiply(legs_[l].chi);
  }
  return product.result();
}

Cost TensorNetwork::contract(EdgeId e) {
  Cost cost = step_cost(e);
  auto& s = edges_[e];
  s.alive = false;
  --remaining_edges_;
  if (s.u == s.v) {
    erase_value(vertices_[s.u].edges, e);
    return cost;
  }
  const auto keep = std::min(s.u, s.v);
  const auto gone = std::max(s.u, s.v);
  auto& kv = vertices_[keep];
  auto& gv = vertices_[gone];
  erase_value(kv.edges, e);
  erase_value(gv.edges, e);
  for (EdgeId f : gv.edges) {
    auto& g = edges_[f];
    const bool to_keep = g.u == keep || g.v == keep;
    if (g.u == gone) g.u = keep;
    if (g.v == gone) g.v = keep;
    // Former parallel edges are already listed on `keep` and are now loops.
    if (!to_keep) kv.edges.push_back(f);
  }
  for (auto l : gv.legs) {
    legs_[l].vertex = keep;
    kv.legs.push_back(l);
  }
  gv.edges.clear();
  gv.legs.clear();
  gv.alive = false;
  --live_vertices_;
  return cost;
}

bool operator==(const TensorNetwork& a, const TensorNetwork& b) {
  if (a.vertices() != b.vertices()) return false;
  if (a.edge_count() != b.edge_count()) return false;
  const auto ea = a.edges();
  const auto eb = b.edges();
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].id != eb[i].id || ea[i].u != eb[i].u || ea[i].v != eb[i].v || ea[i].chi != eb[i].chi) {
      return false;
    }
  }
  const auto la = a.open_legs();
  const auto lb = b.open_legs();
  if (la.size() != lb.size()) return false;
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].id != lb[i].id || la[i].vertex != lb[i].vertex || la[i].chi != lb[i].chi) return false;
  }
  return true;
}

std::pair<TensorNetwork, Cost> contract_step(const TensorNetwork& net, EdgeId e) {
  TensorNetwork out = net;
  Cost c = out.contract(e);
  return {std::move(out), std::move(c)};
}

}  // namespace tnopt
