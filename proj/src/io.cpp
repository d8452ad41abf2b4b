#include "tnopt/io.hpp"

#include <algorithm>
#include <fstream>

namespace tnopt {

using nlohmann::json;

json to_json(const TensorNetwork& net) {
  json j;
  j["vertices"] = net.vertices();
  json edges = json::array();
  for (const auto& e : net.edges()) {
    edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"chi", e.chi}});
  }
  j["edges"] = std::move(edges);
  json legs = json::array();
  for (const auto& l : net.open_legs()) {
    legs.push_back({{"id", l.id}, {"vertex", l.vertex}, {"chi", l.chi}});
  }
  j["open_legs"] = std::move(legs);
  return j;
}

json to_json(const ContractionSequence& seq) { return json{{"order", seq.order}}; }

json to_json(const OptimizerResult& result) {
  json trace = json::array();
  for (const auto& t : result.trace) {
    trace.push_back({{"full_evaluations", t.full_evaluations}, {"best_cost", t.best_cost.to_string()}});
  }
  return json{{"algorithm", result.algorithm},
              {"best_cost", result.best_cost.to_string()},
              {"log10_best_cost", result.best_cost.log10()},
              {"best_sequence", to_json(result.best_sequence)},
              {"full_evaluations", result.full_evaluations},
              {"step_computations", result.step_computations},
              {"trace", std::move(trace)}};
}

namespace {

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw NetworkError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw NetworkError(where + ": field '" + key + "' has the wrong type");
  }
}

BondDim chi_field(const json& obj, const std::string& where) {
  const auto chi = field<std::int64_t>(obj, "chi", where);
  if (chi < 1) throw NetworkError(where + ": chi must be >= 1");
  return static_cast<BondDim>(chi);
}

}  // namespace

TensorNetwork network_from_json(const json& j) {
  if (!j.is_object()) throw NetworkError("network: expected a JSON object");
  TensorNetwork net;
  const auto vertices = field<std::vector<VertexId>>(j, "vertices", "network");
  for (auto v : vertices) net.add_vertex(v);

  struct RawEdge {
    EdgeId id;
    VertexId u, v;
    BondDim chi;
  };
  std::vector<RawEdge> raw;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw NetworkError("network: 'edges' must be an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const auto& e = j["edges"][i];
      const std::string where = "edge #" + std::to_string(i);
      raw.push_back(RawEdge{field<EdgeId>(e, "id", where), field<VertexId>(e, "u", where),
                            field<VertexId>(e, "v", where), chi_field(e, where)});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& e = raw[i];
    if (e.id != static_cast<EdgeId>(i)) {
      throw NetworkError("edge ids must be exactly 0.." + std::to_string(raw.size() - 1) +
                         "; found id " + std::to_string(e.id) + " at rank " + std::to_string(i));
    }
    for (auto end : {e.u, e.v}) {
      if (!net.contains_vertex(end)) {
        throw NetworkError("edge " + std::to_string(e.id) + " references unknown vertex " +
                           std::to_string(end));
      }
    }
    net.add_edge(e.u, e.v, e.chi);
  }

  if (j.contains("open_legs")) {
    if (!j["open_legs"].is_array()) throw NetworkError("network: 'open_legs' must be an array");
    for (std::size_t i = 0; i < j["open_legs"].size(); ++i) {
      const auto& l = j["open_legs"][i];
      const std::string where = "open leg #" + std::to_string(i);
      const auto id = field<LegId>(l, "id", where);
      const auto vertex = field<VertexId>(l, "vertex", where);
      if (!net.contains_vertex(vertex)) {
        throw NetworkError("open leg " + std::to_string(id) + " references unknown vertex " +
                           std::to_string(vertex));
      }
      net.add_open_leg(id, vertex, chi_field(l, where));
    }
  }
  return net;
}

ContractionSequence sequence_from_json(const json& j) {
  return ContractionSequence{field<std::vector<EdgeId>>(j, "order", "sequence")};
}

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw NetworkError("parse error in " + path.string() + ": " + e.what());
  }
}

}  // namespace

TensorNetwork load_network(const std::filesystem::path& path) {
  return network_from_json(read_json(path));
}

ContractionSequence load_sequence(const std::filesystem::path& path) {
  return sequence_from_json(read_json(path));
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw NetworkError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw NetworkError("write failed: " + path.string());
}

}  // namespace tnopt
