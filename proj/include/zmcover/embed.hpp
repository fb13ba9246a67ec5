#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zmcover/cover.hpp"
#include "zmcover/metrics.hpp"
#include "zmcover/numeric.hpp"

namespace zmcover {

// Names the coordinate ranges of an embedding: one block per base edge for
// the production embedding, one per (tree, cotree position) for psi.
struct BlockLayout {
  struct Block {
    std::string kind;
    std::uint64_t key;
    std::uint64_t offset;
    std::uint64_t width;
  };
  std::uint32_t modulus = 0;
  std::uint64_t dimension = 0;
  std::vector<Block> blocks;
};

// Sparse l1 vector with half-integer coordinates, stored doubled. Every
// coordinate is additionally scaled by 1 / weight_denominator when norms are
// evaluated, so stored entries stay integral.
class HalfIntVector {
 public:
  using Entry = std::pair<std::uint64_t, std::int64_t>;

  HalfIntVector() = default;
  explicit HalfIntVector(std::vector<Entry> doubled_entries,
                         std::shared_ptr<const BlockLayout> layout = nullptr,
                         std::uint64_t weight_denominator = 1);

  std::span<const Entry> entries() const { return entries_; }
  const std::shared_ptr<const BlockLayout>& layout() const { return layout_; }
  std::uint64_t weight_denominator() const { return weight_; }

  Rational coordinate(std::uint64_t index) const;
  Rational l1_norm() const;

  // Compares values only; the layout is descriptive.
  friend bool operator==(const HalfIntVector& a, const HalfIntVector& b) {
    return a.weight_ == b.weight_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  std::shared_ptr<const BlockLayout> layout_;
  std::uint64_t weight_ = 1;
};

// Sum of |doubled differences|, ignoring weights.
std::uint64_t doubled_l1_distance(const HalfIntVector& a, const HalfIntVector& b);
// Exact weighted l1 distance; both vectors must share the weight.
Rational l1_distance(const HalfIntVector& a, const HalfIntVector& b);

// Arc-cut embedding of the cycle Z_m: coordinate t is 1/2 when k lies in the
// arc {t, ..., t + floor(m/2) - 1} mod m. Isometric for the cycle metric.
HalfIntVector cycle_cut_embed(std::uint32_t k, std::uint32_t m);

// Production embedding Psi: block e holds cycle_cut_embed(phi(e, basepoint, x)).
// ||Psi(x) - Psi(y)||_1 = d_Q(x, y).
class CoverEmbedding {
 public:
  explicit CoverEmbedding(const CoverGraph& c);

  std::uint32_t modulus() const { return m_; }
  const std::shared_ptr<const BlockLayout>& layout() const { return layout_; }
  std::size_t vertex_count() const { return vertex_count_; }

  // Sorted coordinates whose true value is 1/2; all others are 0.
  std::span<const std::uint32_t> support(VertexId x) const {
    return {support_.data() + x * per_vertex_, per_vertex_};
  }
  HalfIntVector point(VertexId x) const;
  // ||2 Psi(x) - 2 Psi(y)||_1, i.e. twice the l1 distance.
  std::uint64_t doubled_distance(VertexId x, VertexId y) const;

 private:
  std::uint32_t m_;
  std::size_t vertex_count_;
  std::size_t per_vertex_;
  std::vector<std::uint32_t> support_;
  std::shared_ptr<const BlockLayout> layout_;
};

HalfIntVector embed_point_l1(const CoverGraph& c, VertexId x);

// The tree-averaged embedding psi(x) = (1/N) (+)_T phi(C^T_x) with phi the
// per-coordinate arc-cut embedding. Needs constant N_e (NonConstantNe) and
// the complete list of spanning trees (CapExceeded otherwise).
class PsiEmbedding {
 public:
  PsiEmbedding(const CoverGraph& c, std::uint64_t tree_cap = kDefaultTreeCap);
  PsiEmbedding(const CoverGraph& c, std::span<const SpanningTree> trees);

  HalfIntVector point(VertexId x) const;
  std::uint64_t normalizer() const { return normalizer_; }
  std::size_t tree_count() const { return cotrees_.size(); }

 private:
  void init(const CoverGraph& c, std::span<const SpanningTree> trees);

  std::uint32_t m_ = 0;
  std::uint64_t normalizer_ = 1;
  std::size_t rank_ = 0;
  std::vector<std::vector<EdgeId>> cotrees_;
  std::shared_ptr<const CoverPotential> potential_;
  std::shared_ptr<const BlockLayout> layout_;
};

HalfIntVector embed_point_psi(const CoverGraph& c, VertexId x, std::span<const SpanningTree> trees);

// Binary vector in l2: the set of coordinates equal to 1.
struct BinaryVector {
  std::vector<std::uint64_t> ones;
  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;
};

// Doubles {0, 1/2}-valued coordinates to {0, 1}; throws NonBinaryCoordinates
// for anything else (including weighted vectors).
BinaryVector l1_to_l2(const HalfIntVector& v);
std::uint64_t squared_l2_distance(const BinaryVector& a, const BinaryVector& b);

// Coarse disjoint union of covers sharing m. Component n uses its own block of
// coordinates plus one shared offset coordinate whose value is
// sum_{i<n} (max(diam_i, diam_{i+1}) + i).
struct FamilyComponent {
  std::shared_ptr<const CoverGraph> cover;
  std::shared_ptr<const CoverEmbedding> embedding;
  std::uint64_t coordinate_base = 0;
  std::uint64_t offset_value = 0;
  Hops diameter = 0;
  // False when the diameter is the 2 * eccentricity(0) upper bound.
  bool diameter_exact = true;
};

class EmbeddedFamily {
 public:
  std::span<const FamilyComponent> components() const { return components_; }
  std::span<const Rational> spacing() const { return spacing_; }
  std::uint64_t offset_coordinate() const { return offset_coordinate_; }

  HalfIntVector point(std::size_t component, VertexId x) const;
  Rational distance(std::size_t ca, VertexId x, std::size_t cb, VertexId y) const;

 private:
  friend EmbeddedFamily assemble_family(std::vector<std::shared_ptr<const CoverGraph>>,
                                        std::uint64_t, unsigned);
  std::vector<FamilyComponent> components_;
  std::vector<Rational> spacing_;
  std::uint64_t offset_coordinate_ = 0;
};

EmbeddedFamily assemble_family(std::vector<std::shared_ptr<const CoverGraph>> covers,
                               std::uint64_t size_cap = kDefaultSizeCap, unsigned threads = 1);

// Graph diameter: exact up to kAllPairsVertexLimit vertices, otherwise the
// upper bound 2 * eccentricity(0). The flag reports which.
std::pair<Hops, bool> diameter_or_bound(const MultiGraph& g, unsigned threads = 1);

// d_Q (or squared l2 of the binary images) against d over the chosen pairs.
CompressionProfile compression_profile(const CoverGraph& c, const PairSource& pairs,
                                       ProfileMode mode, unsigned threads = 1);
// Within-component pairs of every component, rows merged.
CompressionProfile compression_profile(const EmbeddedFamily& family, const PairSource& pairs,
                                       ProfileMode mode, unsigned threads = 1);

}  // namespace zmcover
