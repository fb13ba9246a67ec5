#include "zmcover/trees.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "zmcover/errors.hpp"
#include "zmcover/parallel.hpp"
#include "zmcover/random.hpp"

namespace zmcover {

namespace {

// Union-find with undo, for backtracking enumeration.
class RollbackDsu {
 public:
  explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  VertexId find(VertexId v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }

  void undo() {
    const VertexId b = history_.back();
    history_.pop_back();
    const VertexId a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::size_t> size_;
  std::vector<VertexId> history_;
};

void require_nonempty_connected(const MultiGraph& g) {
  if (g.vertex_count() == 0) throw NotConnected("graph has no vertices");
  if (!is_connected(g)) throw NotConnected("graph is not connected");
}

}  // namespace

SpanningTree SpanningTree::from_edges(const MultiGraph& g, std::vector<EdgeId> tree_edges) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw NotSpanningTree("graph has no vertices");
  std::sort(tree_edges.begin(), tree_edges.end());
  if (std::adjacent_find(tree_edges.begin(), tree_edges.end()) != tree_edges.end()) {
    throw NotSpanningTree("repeated edge in tree");
  }
  if (tree_edges.size() != n - 1) {
    throw NotSpanningTree("a spanning tree needs |V| - 1 = " + std::to_string(n - 1) + " edges");
  }
  RollbackDsu dsu(n);
  for (EdgeId e : tree_edges) {
    if (e >= g.edge_count()) throw NotSpanningTree("tree edge id out of range");
    const Edge& edge = g.edge(e);
    if (!dsu.unite(edge.tail, edge.head)) throw NotSpanningTree("tree edges contain a cycle");
  }

  SpanningTree t;
  t.in_tree_.assign(g.edge_count(), false);
  for (EdgeId e : tree_edges) t.in_tree_[e] = true;
  t.tree_edges_ = std::move(tree_edges);
  t.cotree_pos_.assign(g.edge_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!t.in_tree_[e]) {
      t.cotree_pos_[e] = static_cast<std::int32_t>(t.cotree_.size());
      t.cotree_.push_back(e);
    }
  }

  t.parent_.assign(n, ParentLink{0, 0});
  std::vector<bool> seen(n, false);
  std::vector<VertexId> queue{0};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (const Incidence& inc : g.incident(u)) {
      if (!t.in_tree_[inc.edge] || seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      t.parent_[inc.neighbor] = {u, inc.edge};
      queue.push_back(inc.neighbor);
    }
  }
  return t;
}

SpanningTree some_spanning_tree(const MultiGraph& g) {
  require_nonempty_connected(g);
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue{0};
  std::vector<EdgeId> chosen;
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (const Incidence& inc : g.incident(u)) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      chosen.push_back(inc.edge);
      queue.push_back(inc.neighbor);
    }
  }
  return SpanningTree::from_edges(g, std::move(chosen));
}

BigInt count_spanning_trees(const MultiGraph& g) {
  require_nonempty_connected(g);
  const std::size_t k = g.vertex_count() - 1;
  if (k == 0) return 1;

  // Reduced Laplacian: drop row and column of vertex 0.
  std::vector<std::vector<BigInt>> a(k, std::vector<BigInt>(k, 0));
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const auto add = [&](VertexId r, VertexId c, int v) {
      if (r != 0 && c != 0) a[r - 1][c - 1] += v;
    };
    add(e.tail, e.tail, 1);
    add(e.head, e.head, 1);
    add(e.tail, e.head, -1);
    add(e.head, e.tail, -1);
  }

  BigInt previous = 1;
  bool negate = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i][i] == 0) {
      std::size_t pivot = i + 1;
      while (pivot < k && a[pivot][i] == 0) ++pivot;
      if (pivot == k) return 0;
      std::swap(a[i], a[pivot]);
      negate = !negate;
    }
    for (std::size_t r = i + 1; r < k; ++r) {
      for (std::size_t c = i + 1; c < k; ++c) {
        a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / previous;
      }
      a[r][i] = 0;
    }
    previous = a[i][i];
  }
  return negate ? BigInt(-a[k - 1][k - 1]) : a[k - 1][k - 1];
}

BigInt count_trees_avoiding(const MultiGraph& g, EdgeId e) {
  if (e >= g.edge_count()) throw IndexError("edge id out of range");
  require_nonempty_connected(g);
  if (g.edge(e).is_loop()) return count_spanning_trees(g);
  const MultiGraph rest = g.without_edge(e);
  if (!is_connected(rest)) return 0;
  return count_spanning_trees(rest);
}

bool TreeCounts::constant_over_all_edges() const {
  return std::all_of(avoiding.begin(), avoiding.end(),
                     [&](const BigInt& n) { return n == avoiding.front(); });
}

TreeCounts tree_counts(const MultiGraph& g, unsigned threads) {
  TreeCounts counts;
  counts.total = count_spanning_trees(g);
  counts.avoiding.resize(g.edge_count());
  parallel_for(g.edge_count(), threads, [&](std::size_t e, std::size_t) {
    counts.avoiding[e] = count_trees_avoiding(g, static_cast<EdgeId>(e));
  });

  std::optional<BigInt> seen;
  counts.constant = true;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop()) continue;
    if (!seen) {
      seen = counts.avoiding[e];
    } else if (*seen != counts.avoiding[e]) {
      counts.constant = false;
      break;
    }
  }
  if (counts.constant) counts.common = seen ? *seen : counts.total;
  return counts;
}

namespace {

class TreeEnumerator {
 public:
  TreeEnumerator(const MultiGraph& g, const std::function<void(const SpanningTree&)>& visit)
      : g_(g), visit_(visit), dsu_(g.vertex_count()) {}

  void run() { descend(0); }

 private:
  // Whether the chosen edges plus every edge from `from` on still connect g.
  bool completable(std::size_t from) const {
    RollbackDsu probe(g_.vertex_count());
    std::size_t merged = 0;
    for (EdgeId e : chosen_) merged += probe.unite(g_.edge(e).tail, g_.edge(e).head);
    for (std::size_t e = from; e < g_.edge_count(); ++e) {
      merged += probe.unite(g_.edge(static_cast<EdgeId>(e)).tail,
                            g_.edge(static_cast<EdgeId>(e)).head);
    }
    return merged + 1 == g_.vertex_count();
  }

  void descend(std::size_t next) {
    if (chosen_.size() + 1 == g_.vertex_count()) {
      visit_(SpanningTree::from_edges(g_, chosen_));
      return;
    }
    if (next == g_.edge_count()) return;
    const auto id = static_cast<EdgeId>(next);
    const Edge& e = g_.edge(id);
    if (!e.is_loop() && dsu_.unite(e.tail, e.head)) {
      chosen_.push_back(id);
      descend(next + 1);
      chosen_.pop_back();
      dsu_.undo();
    }
    if (completable(next + 1)) descend(next + 1);
  }

  const MultiGraph& g_;
  const std::function<void(const SpanningTree&)>& visit_;
  RollbackDsu dsu_;
  std::vector<EdgeId> chosen_;
};

}  // namespace

void for_each_spanning_tree(const MultiGraph& g, std::uint64_t cap,
                            const std::function<void(const SpanningTree&)>& visit) {
  const BigInt tau = count_spanning_trees(g);
  if (tau > cap) {
    throw CapExceeded("graph has " + tau.str() + " spanning trees, above the cap of " +
                      std::to_string(cap));
  }
  TreeEnumerator(g, visit).run();
}

std::vector<SpanningTree> enumerate_spanning_trees(const MultiGraph& g, std::uint64_t cap) {
  std::vector<SpanningTree> trees;
  for_each_spanning_tree(g, cap, [&](const SpanningTree& t) { trees.push_back(t); });
  return trees;
}

SpanningTree sample_uniform_tree(const MultiGraph& g, std::uint64_t seed) {
  require_nonempty_connected(g);
  SeededRng rng(seed);
  const std::size_t n = g.vertex_count();
  std::vector<bool> in_tree(n, false);
  std::vector<Incidence> exit(n, Incidence{0, 0, Direction::kForward});
  std::vector<EdgeId> chosen;
  chosen.reserve(n - 1);
  in_tree[0] = true;
  for (VertexId start = 0; start < n; ++start) {
    // Random walk until the tree is hit; overwriting exits erases loops.
    for (VertexId u = start; !in_tree[u];) {
      const auto inc = g.incident(u);
      exit[u] = inc[rng.below(inc.size())];
      u = exit[u].neighbor;
    }
    for (VertexId u = start; !in_tree[u]; u = exit[u].neighbor) {
      in_tree[u] = true;
      chosen.push_back(exit[u].edge);
    }
  }
  return SpanningTree::from_edges(g, std::move(chosen));
}

}  // namespace zmcover
