#include "zmcover/multigraph.hpp"

#include <algorithm>
#include <string>

#include "zmcover/errors.hpp"

namespace zmcover {

MultiGraph::MultiGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ > std::numeric_limits<VertexId>::max() ||
      edges_.size() > std::numeric_limits<EdgeId>::max()) {
    throw SizeCapExceeded("graph too large for 32-bit indices");
  }
  std::vector<std::size_t> degree(vertex_count_ + 1, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail >= vertex_count_ || e.head >= vertex_count_) {
      throw IndexError("edge " + std::to_string(i) + " has an endpoint >= vertex count " +
                       std::to_string(vertex_count_));
    }
    ++degree[e.tail];
    ++degree[e.head];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  incidences_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto id = static_cast<EdgeId>(i);
    const Edge& e = edges_[i];
    incidences_[cursor[e.tail]++] = {id, e.head, Direction::kForward};
    incidences_[cursor[e.head]++] = {id, e.tail, Direction::kBackward};
  }
}

MultiGraph MultiGraph::from_pairs(std::size_t vertex_count,
                                  std::span<const std::pair<VertexId, VertexId>> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [t, h] : pairs) edges.push_back({t, h, std::nullopt});
  return MultiGraph(vertex_count, std::move(edges));
}

std::optional<VertexId> MultiGraph::traverse(VertexId from, EdgeId e, Direction d) const {
  if (e >= edges_.size()) return std::nullopt;
  const Edge& edge = edges_[e];
  if (d == Direction::kForward) {
    if (edge.tail != from) return std::nullopt;
    return edge.head;
  }
  if (edge.head != from) return std::nullopt;
  return edge.tail;
}

MultiGraph MultiGraph::without_edge(EdgeId e) const {
  if (e >= edges_.size()) throw IndexError("edge id out of range");
  std::vector<Edge> kept;
  kept.reserve(edges_.size() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i != e) kept.push_back(edges_[i]);
  }
  return MultiGraph(vertex_count_, std::move(kept));
}

void bfs_distances_into(const MultiGraph& g, VertexId source, std::vector<Hops>& dist,
                        std::vector<VertexId>& queue) {
  dist.assign(g.vertex_count(), DistanceTable::kInfinite);
  queue.clear();
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const Hops next = dist[u] + 1;
    for (const Incidence& inc : g.incident(u)) {
      if (dist[inc.neighbor] == DistanceTable::kInfinite) {
        dist[inc.neighbor] = next;
        queue.push_back(inc.neighbor);
      }
    }
  }
}

DistanceTable bfs_distances(const MultiGraph& g, VertexId source) {
  if (source >= g.vertex_count()) throw IndexError("BFS source out of range");
  DistanceTable table;
  table.source = source;
  std::vector<VertexId> queue;
  bfs_distances_into(g, source, table.dist, queue);
  return table;
}

namespace {

constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

// Truncated BFS from root; returns the best closed-walk length below `bound`.
Hops cycle_candidate(const MultiGraph& g, VertexId root, Hops bound, std::vector<Hops>& dist,
                     std::vector<EdgeId>& parent_edge, std::vector<VertexId>& queue) {
  dist.assign(g.vertex_count(), DistanceTable::kInfinite);
  parent_edge.assign(g.vertex_count(), kNoEdge);
  queue.clear();
  dist[root] = 0;
  queue.push_back(root);
  Hops best = bound;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    // Every candidate closed through u has length >= 2 * dist[u].
    if (best != DistanceTable::kInfinite && 2 * static_cast<std::uint64_t>(dist[u]) >= best) break;
    for (const Incidence& inc : g.incident(u)) {
      if (inc.edge == parent_edge[u]) continue;
      if (dist[inc.neighbor] == DistanceTable::kInfinite) {
        dist[inc.neighbor] = dist[u] + 1;
        parent_edge[inc.neighbor] = inc.edge;
        queue.push_back(inc.neighbor);
      } else {
        best = std::min<Hops>(best, dist[u] + dist[inc.neighbor] + 1);
      }
    }
  }
  return best;
}

}  // namespace

std::optional<Hops> shortest_cycle_through(const MultiGraph& g, VertexId root, Hops bound) {
  if (root >= g.vertex_count()) throw IndexError("root out of range");
  for (const Incidence& inc : g.incident(root)) {
    if (inc.neighbor == root) return Hops{1};
  }
  std::vector<Hops> dist;
  std::vector<EdgeId> parent;
  std::vector<VertexId> queue;
  const Hops best = cycle_candidate(g, root, bound, dist, parent, queue);
  if (best >= bound) return std::nullopt;
  return best;
}

std::optional<Hops> girth(const MultiGraph& g) {
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) return Hops{1};
  }
  std::vector<Hops> dist;
  std::vector<EdgeId> parent;
  std::vector<VertexId> queue;
  Hops best = DistanceTable::kInfinite;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    best = cycle_candidate(g, v, best, dist, parent, queue);
  }
  if (best == DistanceTable::kInfinite) return std::nullopt;
  return best;
}

bool is_connected(const MultiGraph& g) {
  if (g.vertex_count() == 0) return true;
  const DistanceTable t = bfs_distances(g, 0);
  return std::all_of(t.dist.begin(), t.dist.end(),
                     [](Hops h) { return h != DistanceTable::kInfinite; });
}

std::vector<EdgeId> bridges(const MultiGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> order(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<EdgeId> found;

  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::uint32_t counter = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    order[root] = low[root] = counter++;
    stack.push_back({root, kNoEdge, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const Incidence& i = inc[f.next++];
        if (i.edge == f.via || i.neighbor == f.v) continue;
        if (order[i.neighbor] == kUnvisited) {
          order[i.neighbor] = low[i.neighbor] = counter++;
          stack.push_back({i.neighbor, i.edge, 0});
        } else {
          low[f.v] = std::min(low[f.v], order[i.neighbor]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame& parent = stack.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (low[done.v] > order[parent.v]) found.push_back(done.via);
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool is_two_edge_connected(const MultiGraph& g) {
  return is_connected(g) && bridges(g).empty();
}

VertexId path_end(const MultiGraph& g, const Path& p) {
  if (p.start >= g.vertex_count()) throw PathMismatch("path start out of range");
  VertexId at = p.start;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto next = g.traverse(at, p.steps[i].edge, p.steps[i].dir);
    if (!next) throw PathMismatch("path step " + std::to_string(i) + " does not continue the path");
    at = *next;
  }
  return at;
}

Path bfs_path(const MultiGraph& g, VertexId from, VertexId to) {
  if (from >= g.vertex_count() || to >= g.vertex_count()) throw IndexError("vertex out of range");
  std::vector<Incidence> via(g.vertex_count(), Incidence{kNoEdge, 0, Direction::kForward});
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue{from};
  seen[from] = true;
  for (std::size_t head = 0; head < queue.size() && !seen[to]; ++head) {
    const VertexId u = queue[head];
    for (const Incidence& inc : g.incident(u)) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      via[inc.neighbor] = {inc.edge, u, inc.dir};
      queue.push_back(inc.neighbor);
    }
  }
  if (!seen[to]) throw NotConnected("no path between the requested vertices");
  Path p{from, {}};
  for (VertexId v = to; v != from; v = via[v].neighbor) {
    p.steps.push_back({via[v].edge, via[v].dir});
  }
  std::reverse(p.steps.begin(), p.steps.end());
  return p;
}

std::vector<std::int64_t> signed_counts(const MultiGraph& g, const Path& p) {
  path_end(g, p);
  std::vector<std::int64_t> counts(g.edge_count(), 0);
  for (const PathStep& s : p.steps) counts[s.edge] += sign(s.dir);
  return counts;
}

MultiGraph cayley_zm_power(std::uint32_t n, std::uint32_t m, std::uint64_t size_cap) {
  if (n < 1) throw RangeError("Cayley seed needs at least one generator");
  if (m < 2) throw RangeError("modulus must be at least 2");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (count > size_cap / m) throw SizeCapExceeded("m^n exceeds the size cap");
    count *= m;
  }
  // Place value of coordinate i; coordinate 0 is the most significant.
  std::vector<std::uint64_t> place(n, 1);
  for (std::uint32_t i = n - 1; i-- > 0;) place[i] = place[i + 1] * m;

  std::vector<Edge> edges;
  edges.reserve(count * n);
  for (std::uint64_t v = 0; v < count; ++v) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint64_t digit = (v / place[i]) % m;
      if (m == 2 && digit != 0) continue;
      const std::uint64_t w = v - digit * place[i] + ((digit + 1) % m) * place[i];
      edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>(w), i});
    }
  }
  return MultiGraph(count, std::move(edges));
}

}  // namespace zmcover
