#pragma once

#include "tessiso/graph.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace tessiso {

inline constexpr const char* kGraphSchema = "tessiso-graph/1";

/// Reads the interchange record. Lengths may be "p/q", a decimal string, or a
/// JSON integer. Errors carry the offending field path.
GraphSpec graph_spec_from_json(const nlohmann::json& j);
nlohmann::json graph_spec_to_json(const GraphSpec& spec);

GraphSpec parse_graph_text(const std::string& text);
std::string graph_spec_to_text(const GraphSpec& spec);

GraphSpec read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const GraphSpec& spec);

}  // namespace tessiso
