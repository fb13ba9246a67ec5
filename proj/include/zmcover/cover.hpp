#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "zmcover/multigraph.hpp"
#include "zmcover/trees.hpp"

namespace zmcover {

using Residue = std::uint16_t;
inline constexpr std::uint32_t kMaxModulus = 1u << 15;

// Element of Z_m^r: the deck-group coordinate of a cloud.
struct CloudLabel {
  std::vector<Residue> coords;
  friend bool operator==(const CloudLabel&, const CloudLabel&) = default;
};

// An element of Z_m E(X) or Z_m V(X), tagged so the two cannot be mixed.
template <class Tag>
class ChainModM {
 public:
  ChainModM(std::uint32_t m, std::size_t length) : m_(m), coeffs_(length, 0) {}

  static ChainModM from_counts(std::uint32_t m, std::span<const std::int64_t> counts) {
    ChainModM chain(m, counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) chain.add(i, counts[i]);
    return chain;
  }

  std::uint32_t modulus() const { return m_; }
  std::size_t size() const { return coeffs_.size(); }
  Residue operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const Residue> coeffs() const { return coeffs_; }

  void add(std::size_t i, std::int64_t delta) {
    const auto m = static_cast<std::int64_t>(m_);
    coeffs_[i] = static_cast<Residue>((((coeffs_[i] + delta) % m) + m) % m);
  }

  ChainModM negated() const {
    ChainModM out(m_, coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.add(i, -static_cast<std::int64_t>(coeffs_[i]));
    return out;
  }

  // min(c, m - c): the cyclic length of coefficient i.
  std::uint32_t folded(std::size_t i) const {
    const std::uint32_t c = coeffs_[i];
    return c <= m_ - c ? c : m_ - c;
  }

  std::uint64_t folded_weight() const {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) sum += folded(i);
    return sum;
  }

  bool is_zero() const {
    for (Residue c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const ChainModM&, const ChainModM&) = default;

 private:
  std::uint32_t m_;
  std::vector<Residue> coeffs_;
};

struct EdgeChainTag;
struct VertexChainTag;
using EdgeChainModM = ChainModM<EdgeChainTag>;
using VertexChainModM = ChainModM<VertexChainTag>;

// The Z_m-homology cover of a base graph. Vertex (v, k) has index
// v * m^r + rank(k) and edge (e, k) has index e * m^r + rank(k), where rank is
// the little-endian mixed-radix value of k in construction-cotree order.
class CoverGraph {
 public:
  const MultiGraph& base() const { return *base_; }
  const std::shared_ptr<const MultiGraph>& base_ptr() const { return base_; }
  const MultiGraph& graph() const { return *graph_; }
  const std::shared_ptr<const MultiGraph>& graph_ptr() const { return graph_; }
  std::uint32_t modulus() const { return m_; }
  const SpanningTree& construction_tree() const { return tree_; }
  std::size_t rank() const { return tree_.rank(); }
  std::uint64_t fiber_size() const { return fiber_; }

  VertexId vertex(VertexId base_vertex, std::uint64_t label_rank) const {
    return static_cast<VertexId>(base_vertex * fiber_ + label_rank);
  }
  EdgeId edge(EdgeId base_edge, std::uint64_t label_rank) const {
    return static_cast<EdgeId>(base_edge * fiber_ + label_rank);
  }
  VertexId project_vertex(VertexId x) const;
  EdgeId project_edge(EdgeId x) const;
  std::uint64_t vertex_label_rank(VertexId x) const { return x % fiber_; }
  std::uint64_t edge_label_rank(EdgeId x) const { return x % fiber_; }

  std::uint64_t encode_label(const CloudLabel& k) const;
  CloudLabel decode_label(std::uint64_t rank) const;

  // rank(k + delta * e_coordinate)
  std::uint64_t shift_label(std::uint64_t rank, std::size_t coordinate, std::int64_t delta) const;
  std::uint64_t add_labels(std::uint64_t a, std::uint64_t b) const;

  // Deck translation by the group element with the given rank.
  VertexId translate_vertex(VertexId x, std::uint64_t by) const;
  EdgeId translate_edge(EdgeId x, std::uint64_t by) const;

 private:
  friend CoverGraph build_zm_cover(std::shared_ptr<const MultiGraph>, std::uint32_t,
                                   std::optional<SpanningTree>, std::uint64_t);
  CoverGraph(std::shared_ptr<const MultiGraph> base, std::uint32_t m, SpanningTree tree);

  std::shared_ptr<const MultiGraph> base_;
  std::shared_ptr<const MultiGraph> graph_;
  std::uint32_t m_;
  SpanningTree tree_;
  std::uint64_t fiber_ = 1;
  std::vector<std::uint64_t> place_;
};

// Requires a 2-edge-connected base with at least one cycle and
// |V| * m^r <= size_cap. The tree defaults to some_spanning_tree(base).
CoverGraph build_zm_cover(std::shared_ptr<const MultiGraph> base, std::uint32_t m,
                          std::optional<SpanningTree> tree = std::nullopt,
                          std::uint64_t size_cap = kDefaultSizeCap);
CoverGraph build_zm_cover(const MultiGraph& base, std::uint32_t m,
                          std::optional<SpanningTree> tree = std::nullopt,
                          std::uint64_t size_cap = kDefaultSizeCap);

VertexId project(const CoverGraph& c, VertexId cover_vertex);
EdgeId project_edge(const CoverGraph& c, EdgeId cover_edge);

struct LiftedPath {
  Path path;
  VertexId end;
};

// The unique lift of a base path starting at `start`; throws PathMismatch.
LiftedPath lift_path(const CoverGraph& c, const Path& base_path, VertexId start);

// Mod-m signed counts of base edges along a path from the basepoint
// (base vertex 0, label 0) to every cover vertex. Stored flat, one row of
// |E(base)| residues per cover vertex.
class CoverPotential {
 public:
  explicit CoverPotential(const CoverGraph& c);

  std::size_t width() const { return width_; }
  std::uint32_t modulus() const { return m_; }
  std::span<const Residue> at(VertexId x) const { return {data_.data() + x * width_, width_}; }
  EdgeChainModM chain(VertexId x) const;
  // phi(., x, y) as a signed residue chain: potential(y) - potential(x).
  EdgeChainModM phi(VertexId x, VertexId y) const;

 private:
  std::uint32_t m_;
  std::size_t width_;
  std::vector<Residue> data_;
};

// Cloud of every cover vertex with respect to tree t of the base: the
// t-cotree coordinates of the potential. For t = construction tree this is
// the construction label. Throws NotSpanningTree.
std::vector<CloudLabel> cloud_map(const CoverGraph& c, const SpanningTree& t);
std::vector<CloudLabel> cloud_map(const CoverGraph& c, const CoverPotential& potential,
                                  const SpanningTree& t);

// Signed mod-m traversal counts of base edges along a cover path. The value
// for edge e is (#forward - #backward) mod m; min(c, m - c) equals
// min{phi, m - phi} for either sign convention of phi.
EdgeChainModM phi_along(const CoverGraph& c, const Path& cover_path);

// phi_along over the BFS path from x to y. Path-independent.
EdgeChainModM phi_profile(const CoverGraph& c, VertexId x, VertexId y);

VertexChainModM boundary_mod_m(const MultiGraph& g, const EdgeChainModM& chain);

EdgeChainModM path_chain(const MultiGraph& g, const Path& p, std::uint32_t m);
bool is_m_congruent(const MultiGraph& g, const Path& p1, const Path& p2, std::uint32_t m);
bool has_m_repeated_edge(const MultiGraph& g, const Path& p, std::uint32_t m);

// Cover document: the cover's graph document plus "base", "m" and "cotree".
nlohmann::ordered_json cover_to_json(const CoverGraph& c);
CoverGraph cover_from_json(const nlohmann::json& doc, std::uint64_t size_cap = kDefaultSizeCap);

}  // namespace zmcover
