#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "json.hpp"
#include "zmcover/multigraph.hpp"

namespace zmcover {

// Graph document: {"vertices": N, "edges": [[tail, head], ...], "labels": [...]}.
// "labels" is optional; when present it has one entry per edge, each an
// unsigned integer or null.
MultiGraph graph_from_json(const nlohmann::json& doc);
nlohmann::ordered_json graph_to_json(const MultiGraph& g);

MultiGraph parse_graph(std::string_view text);
MultiGraph load_graph_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

}  // namespace zmcover
