#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace zmcover {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Hops = std::uint32_t;

// Largest vertex count any constructed graph (Cayley seed, cover, tower level)
// may have unless a caller passes a different cap.
inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 23;

// Orientation of a traversal relative to the edge's fixed tail->head
// orientation.
enum class Direction : std::int8_t { kForward = 1, kBackward = -1 };

constexpr int sign(Direction d) { return static_cast<int>(d); }
constexpr Direction reversed(Direction d) {
  return d == Direction::kForward ? Direction::kBackward : Direction::kForward;
}

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  std::optional<std::uint32_t> label;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// One half-edge seen from a vertex. Leaving the vertex along `dir` reaches
// `neighbor`. A loop contributes two incidences with opposite directions.
struct Incidence {
  EdgeId edge;
  VertexId neighbor;
  Direction dir;
};

// Finite oriented multigraph with loops and parallel edges. Immutable after
// construction; adjacency is stored in CSR form with each vertex's incidences
// in ascending edge id.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(std::size_t vertex_count, std::vector<Edge> edges);

  static MultiGraph from_pairs(std::size_t vertex_count,
                               std::span<const std::pair<VertexId, VertexId>> pairs);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(VertexId v) const {
    return {incidences_.data() + offsets_[v], incidences_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Endpoint reached by leaving `from` along edge e in direction d, or nullopt
  // when the traversal does not start at `from`.
  std::optional<VertexId> traverse(VertexId from, EdgeId e, Direction d) const;

  // |E| - |V| + 1; the free rank of pi_1 for connected graphs.
  std::int64_t cycle_rank() const {
    return static_cast<std::int64_t>(edges_.size()) - static_cast<std::int64_t>(vertex_count_) + 1;
  }

  MultiGraph without_edge(EdgeId e) const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidences_;
};

// Single-source BFS result. Unreachable vertices hold kInfinite internally;
// use at() for the explicit finite/infinite view.
struct DistanceTable {
  static constexpr Hops kInfinite = std::numeric_limits<Hops>::max();

  VertexId source = 0;
  std::vector<Hops> dist;

  std::optional<Hops> at(VertexId v) const {
    if (dist[v] == kInfinite) return std::nullopt;
    return dist[v];
  }
  bool reachable(VertexId v) const { return dist[v] != kInfinite; }
};

DistanceTable bfs_distances(const MultiGraph& g, VertexId source);

// Same as bfs_distances but writes into caller-owned storage (hot loops).
void bfs_distances_into(const MultiGraph& g, VertexId source, std::vector<Hops>& dist,
                        std::vector<VertexId>& queue);

// Shortest cycle length; nullopt stands for infinite girth (forests).
std::optional<Hops> girth(const MultiGraph& g);

// Length of the shortest closed walk found by truncated BFS from `root`,
// considering only candidates below `bound`. When root lies on a shortest
// cycle this is exactly the girth; the minimum over all roots is the girth.
std::optional<Hops> shortest_cycle_through(const MultiGraph& g, VertexId root,
                                           Hops bound = DistanceTable::kInfinite);

bool is_connected(const MultiGraph& g);
std::vector<EdgeId> bridges(const MultiGraph& g);
bool is_two_edge_connected(const MultiGraph& g);

// One step of a path: an edge and the direction it is walked in.
struct PathStep {
  EdgeId edge;
  Direction dir;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct Path {
  VertexId start = 0;
  std::vector<PathStep> steps;
  friend bool operator==(const Path&, const Path&) = default;
};

// Endpoint of a path; throws PathMismatch when consecutive steps do not chain.
VertexId path_end(const MultiGraph& g, const Path& p);

// A shortest path found by BFS (first-discovery parents, ascending edge ids).
Path bfs_path(const MultiGraph& g, VertexId from, VertexId to);

// Per-edge signed traversal counts (forward minus backward) of a path.
std::vector<std::int64_t> signed_counts(const MultiGraph& g, const Path& p);

// Cayley graph of Z_m^n with one generator per factor. Vertices are tuples in
// lexicographic order (first coordinate most significant); for each vertex and
// generator i an edge v -> v + e_i labelled i. For m = 2 the edge is emitted
// once per unordered pair.
MultiGraph cayley_zm_power(std::uint32_t n, std::uint32_t m,
                           std::uint64_t size_cap = kDefaultSizeCap);

}  // namespace zmcover
