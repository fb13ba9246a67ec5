#include "zmcover/families.hpp"

#include "zmcover/errors.hpp"

namespace zmcover {

MultiGraph doubled_edge() {
  return MultiGraph(2, {{0, 1, std::nullopt}, {0, 1, std::nullopt}});
}

MultiGraph cycle_graph(std::uint32_t n) {
  if (n == 0) throw RangeError("cycle needs at least one vertex");
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, std::nullopt});
  return MultiGraph(n, std::move(edges));
}

MultiGraph path_graph(std::uint32_t n) {
  if (n == 0) throw RangeError("path needs at least one vertex");
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, std::nullopt});
  return MultiGraph(n, std::move(edges));
}

MultiGraph complete_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({i, j, std::nullopt});
  }
  return MultiGraph(n, std::move(edges));
}

MultiGraph petersen_graph() {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5, std::nullopt});
  for (std::uint32_t i = 0; i < 5; ++i) edges.push_back({i, i + 5, std::nullopt});
  for (std::uint32_t i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 2) % 5, std::nullopt});
  return MultiGraph(10, std::move(edges));
}

MultiGraph rose_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) edges.push_back({0, 0, i});
  return MultiGraph(1, std::move(edges));
}

}  // namespace zmcover
