#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "zmcover/multigraph.hpp"
#include "zmcover/random.hpp"

inline zmcover::MultiGraph make_graph(std::size_t n,
                                      std::initializer_list<std::pair<zmcover::VertexId, zmcover::VertexId>> pairs) {
  std::vector<zmcover::Edge> edges;
  for (const auto& [a, b] : pairs) edges.push_back({a, b, std::nullopt});
  return zmcover::MultiGraph(n, std::move(edges));
}

// Connected random multigraph: a random spanning tree plus `extra` random
// edges, which may be loops or parallel edges.
inline zmcover::MultiGraph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed) {
  zmcover::SeededRng rng(seed);
  std::vector<zmcover::Edge> edges;
  for (zmcover::VertexId v = 1; v < n; ++v) {
    edges.push_back({static_cast<zmcover::VertexId>(rng.below(v)), v, std::nullopt});
  }
  for (std::size_t i = 0; i < extra; ++i) {
    edges.push_back({static_cast<zmcover::VertexId>(rng.below(n)), static_cast<zmcover::VertexId>(rng.below(n)),
                     std::nullopt});
  }
  return zmcover::MultiGraph(n, std::move(edges));
}
