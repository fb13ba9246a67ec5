#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zmcover/cover.hpp"
#include "zmcover/multigraph.hpp"

namespace zmcover {

// One quotient in the derived m-series tower. Level 1 is the Cayley graph of
// Z_m^n; level i + 1 is the Z_m-homology cover of level i.
struct TowerLevel {
  std::uint32_t level = 1;
  std::shared_ptr<const MultiGraph> graph;
  Hops girth = 0;
  bool vertex_transitive_hint = true;
  std::string provenance;
  // The cover realizing this level over the previous one; empty at level 1.
  std::shared_ptr<const CoverGraph> cover;
};

struct Tower {
  std::uint32_t rank = 0;
  std::uint32_t m = 0;
  std::vector<TowerLevel> levels;
  bool truncated = false;
  std::string notice;
};

// Builds up to `levels` levels. Throws SizeCapExceeded if m^n exceeds the cap;
// later levels that would exceed it are dropped with a truncation notice.
Tower build_tower(std::uint32_t n, std::uint32_t m, std::uint32_t levels,
                  std::uint64_t size_cap = kDefaultSizeCap);

// Shortest cycle through vertex 0. Equals the girth of a vertex-transitive
// graph; the caller vouches for transitivity.
Hops girth_vertex_transitive(const MultiGraph& g);

// {"rank", "m", "truncated", "notice", "levels": [{level, vertices, edges, girth, provenance}]}
nlohmann::ordered_json tower_manifest(const Tower& tower);

}  // namespace zmcover
