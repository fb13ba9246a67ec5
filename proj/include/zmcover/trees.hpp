#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "zmcover/multigraph.hpp"
#include "zmcover/numeric.hpp"

namespace zmcover {

inline constexpr std::uint64_t kDefaultTreeCap = 200'000;

// A maximal spanning tree together with its complement. The cotree, in
// ascending edge id, is the ordered set of free generators of pi_1; loops are
// always cotree edges.
class SpanningTree {
 public:
  struct ParentLink {
    VertexId vertex;
    EdgeId edge;
  };

  // Validates that `tree_edges` spans g without cycles; throws NotSpanningTree.
  static SpanningTree from_edges(const MultiGraph& g, std::vector<EdgeId> tree_edges);

  std::span<const EdgeId> tree_edges() const { return tree_edges_; }
  std::span<const EdgeId> cotree() const { return cotree_; }
  std::size_t rank() const { return cotree_.size(); }
  std::size_t edge_count() const { return in_tree_.size(); }
  bool contains(EdgeId e) const { return in_tree_[e]; }

  // Index of e in the cotree, or nullopt for tree edges.
  std::optional<std::size_t> cotree_position(EdgeId e) const {
    if (cotree_pos_[e] < 0) return std::nullopt;
    return static_cast<std::size_t>(cotree_pos_[e]);
  }

  // Parent of v when the tree is rooted at vertex 0; nullopt for the root.
  std::optional<ParentLink> parent(VertexId v) const {
    if (v == 0) return std::nullopt;
    return parent_[v];
  }

  friend bool operator==(const SpanningTree& a, const SpanningTree& b) {
    return a.tree_edges_ == b.tree_edges_ && a.in_tree_.size() == b.in_tree_.size();
  }

 private:
  std::vector<EdgeId> tree_edges_;
  std::vector<EdgeId> cotree_;
  std::vector<bool> in_tree_;
  std::vector<std::int32_t> cotree_pos_;
  std::vector<ParentLink> parent_;
};

// BFS tree from vertex 0; each vertex is claimed by the lowest-id edge from
// the first-dequeued neighbour. Throws NotConnected.
SpanningTree some_spanning_tree(const MultiGraph& g);

// tau(g) by the Matrix-Tree theorem with fraction-free (Bareiss) elimination.
BigInt count_spanning_trees(const MultiGraph& g);

// N_e: spanning trees of g that avoid e.
BigInt count_trees_avoiding(const MultiGraph& g, EdgeId e);

struct TreeCounts {
  BigInt total;
  std::vector<BigInt> avoiding;
  // All N_e over non-loop edges agree.
  bool constant = false;
  // Common value when `constant`; tau(g) when g has no non-loop edge.
  std::optional<BigInt> common;

  // True when N_e agrees over every edge, loops included. This is what the
  // tree-average identity actually needs.
  bool constant_over_all_edges() const;
};

TreeCounts tree_counts(const MultiGraph& g, unsigned threads = 1);

// Calls visit for every spanning tree exactly once in a fixed backtracking
// order (edges considered by ascending id, inclusion branch first). Throws
// CapExceeded when tau(g) > cap.
void for_each_spanning_tree(const MultiGraph& g, std::uint64_t cap,
                            const std::function<void(const SpanningTree&)>& visit);

std::vector<SpanningTree> enumerate_spanning_trees(const MultiGraph& g,
                                                   std::uint64_t cap = kDefaultTreeCap);

// Exactly uniform spanning tree via Wilson's loop-erased random walks rooted
// at vertex 0. Deterministic given seed.
SpanningTree sample_uniform_tree(const MultiGraph& g, std::uint64_t seed);

}  // namespace zmcover
