#include "zmcover/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "zmcover/errors.hpp"

namespace zmcover {

namespace {

std::uint64_t read_index(const nlohmann::json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string(what) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

MultiGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
  if (!doc.contains("vertices")) throw ParseError("graph document lacks \"vertices\"");
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw ParseError("graph document lacks an \"edges\" array");
  }
  const std::uint64_t n = read_index(doc["vertices"], "\"vertices\"");
  const auto& raw_edges = doc["edges"];

  const nlohmann::json* labels = nullptr;
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    labels = &doc["labels"];
    if (!labels->is_array() || labels->size() != raw_edges.size()) {
      throw ParseError("\"labels\" must be an array with one entry per edge");
    }
  }

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (std::size_t i = 0; i < raw_edges.size(); ++i) {
    const auto& pair = raw_edges[i];
    if (!pair.is_array() || pair.size() != 2) {
      throw ParseError("edge " + std::to_string(i) + " must be a [tail, head] pair");
    }
    const std::uint64_t tail = read_index(pair[0], "edge endpoint");
    const std::uint64_t head = read_index(pair[1], "edge endpoint");
    if (tail >= n || head >= n) {
      throw IndexError("edge " + std::to_string(i) + " references a vertex >= " + std::to_string(n));
    }
    Edge e{static_cast<VertexId>(tail), static_cast<VertexId>(head), std::nullopt};
    if (labels != nullptr && !(*labels)[i].is_null()) {
      e.label = static_cast<std::uint32_t>(read_index((*labels)[i], "label"));
    }
    edges.push_back(e);
  }
  return MultiGraph(n, std::move(edges));
}

nlohmann::ordered_json graph_to_json(const MultiGraph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  bool any_label = false;
  for (const Edge& e : g.edges()) {
    edges.push_back({e.tail, e.head});
    any_label = any_label || e.label.has_value();
  }
  doc["edges"] = std::move(edges);
  if (any_label) {
    auto labels = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) {
      if (e.label) {
        labels.push_back(*e.label);
      } else {
        labels.push_back(nullptr);
      }
    }
    doc["labels"] = std::move(labels);
  }
  return doc;
}

MultiGraph parse_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

MultiGraph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

void save_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump() << '\n';
}

}  // namespace zmcover
