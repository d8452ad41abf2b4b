#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "tnopt/network.hpp"
#include "tnopt/optimizer.hpp"
#include "tnopt/sequence.hpp"

namespace tnopt {

// Network file:
//   {"vertices":[int...],
//    "edges":[{"id":int,"u":int,"v":int,"chi":int}...],
//    "open_legs":[{"id":int,"vertex":int,"chi":int}...]}
// Edge ids must be exactly 0..E-1 (any order in the file).
// Sequence file: {"order":[int...]}

nlohmann::json to_json(const TensorNetwork& net);
nlohmann::json to_json(const ContractionSequence& seq);
/// Costs are written as decimal strings, since they outgrow JSON integers.
nlohmann::json to_json(const OptimizerResult& result);

/// Throws NetworkError naming the offending element.
TensorNetwork network_from_json(const nlohmann::json& j);
ContractionSequence sequence_from_json(const nlohmann::json& j);

TensorNetwork load_network(const std::filesystem::path& path);
ContractionSequence load_sequence(const std::filesystem::path& path);

/// Writes `j` followed by a newline; throws NetworkError on I/O failure.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace tnopt
