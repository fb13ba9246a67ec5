#include "zmcover/boxspace.hpp"

#include "zmcover/errors.hpp"

namespace zmcover {

Hops girth_vertex_transitive(const MultiGraph& g) {
  if (g.vertex_count() == 0) return DistanceTable::kInfinite;
  return shortest_cycle_through(g, 0).value_or(DistanceTable::kInfinite);
}

Tower build_tower(std::uint32_t n, std::uint32_t m, std::uint32_t levels, std::uint64_t size_cap) {
  if (n < 2) throw RangeError("tower rank must be at least 2");
  if (m < 2 || m > kMaxModulus) throw RangeError("modulus out of range");
  Tower tower{n, m, {}, false, {}};
  if (levels == 0) return tower;

  TowerLevel seed;
  seed.graph = std::make_shared<const MultiGraph>(cayley_zm_power(n, m, size_cap));
  seed.girth = girth_vertex_transitive(*seed.graph);
  seed.provenance = "cayley seed";
  tower.levels.push_back(std::move(seed));

  for (std::uint32_t level = 2; level <= levels; ++level) {
    const TowerLevel& prev = tower.levels.back();
    try {
      auto cover = std::make_shared<const CoverGraph>(build_zm_cover(prev.graph, m, std::nullopt, size_cap));
      TowerLevel next;
      next.level = level;
      next.graph = cover->graph_ptr();
      next.girth = girth_vertex_transitive(*next.graph);
      next.provenance = "cover of level " + std::to_string(prev.level);
      next.cover = std::move(cover);
      tower.levels.push_back(std::move(next));
    } catch (const SizeCapExceeded& e) {
      tower.truncated = true;
      tower.notice = "stopped before level " + std::to_string(level) + ": " + e.what();
      break;
    }
  }
  return tower;
}

nlohmann::ordered_json tower_manifest(const Tower& tower) {
  nlohmann::ordered_json doc;
  doc["rank"] = tower.rank;
  doc["m"] = tower.m;
  doc["truncated"] = tower.truncated;
  doc["notice"] = tower.notice;
  doc["levels"] = nlohmann::ordered_json::array();
  for (const TowerLevel& level : tower.levels) {
    nlohmann::ordered_json entry;
    entry["level"] = level.level;
    entry["vertices"] = level.graph->vertex_count();
    entry["edges"] = level.graph->edge_count();
    if (level.girth == DistanceTable::kInfinite) {
      entry["girth"] = nullptr;
    } else {
      entry["girth"] = level.girth;
    }
    entry["provenance"] = level.provenance;
    doc["levels"].push_back(std::move(entry));
  }
  return doc;
}

}  // namespace zmcover
