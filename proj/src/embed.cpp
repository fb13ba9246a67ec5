#include "zmcover/embed.hpp"

#include <algorithm>

#include "zmcover/errors.hpp"
#include "zmcover/parallel.hpp"

namespace zmcover {

HalfIntVector::HalfIntVector(std::vector<Entry> doubled_entries,
                             std::shared_ptr<const BlockLayout> layout,
                             std::uint64_t weight_denominator)
    : entries_(std::move(doubled_entries)), layout_(std::move(layout)), weight_(weight_denominator) {
  if (weight_ == 0) throw RangeError("weight denominator must be positive");
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first) throw RangeError("duplicate coordinate");
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

Rational HalfIntVector::coordinate(std::uint64_t index) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{index, INT64_MIN});
  if (it == entries_.end() || it->first != index) return 0;
  return Rational(it->second, 2 * BigInt(weight_));
}

Rational HalfIntVector::l1_norm() const {
  BigInt sum = 0;
  for (const auto& [coord, value] : entries_) sum += value < 0 ? -value : value;
  return Rational(sum, 2 * BigInt(weight_));
}

std::uint64_t doubled_l1_distance(const HalfIntVector& a, const HalfIntVector& b) {
  const auto ea = a.entries();
  const auto eb = b.entries();
  std::uint64_t sum = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto mag = [](std::int64_t v) { return static_cast<std::uint64_t>(v < 0 ? -v : v); };
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
      sum += mag(ea[i++].second);
    } else if (i == ea.size() || eb[j].first < ea[i].first) {
      sum += mag(eb[j++].second);
    } else {
      sum += mag(ea[i++].second - eb[j++].second);
    }
  }
  return sum;
}

Rational l1_distance(const HalfIntVector& a, const HalfIntVector& b) {
  if (a.weight_denominator() != b.weight_denominator()) {
    throw RangeError("vectors carry different weights");
  }
  return Rational(BigInt(doubled_l1_distance(a, b)), 2 * BigInt(a.weight_denominator()));
}

namespace {

// Coordinates t of the arc-cut embedding of k that equal 1/2, ascending.
void arc_support(std::uint32_t k, std::uint32_t m, std::uint64_t base, std::vector<std::uint32_t>& out) {
  const std::uint32_t arc = m / 2;
  const std::size_t first = out.size();
  for (std::uint32_t s = 0; s < arc; ++s) {
    out.push_back(static_cast<std::uint32_t>(base + (k + m - s) % m));
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

std::shared_ptr<const BlockLayout> per_edge_layout(std::uint32_t m, std::size_t edges) {
  auto layout = std::make_shared<BlockLayout>();
  layout->modulus = m;
  layout->dimension = static_cast<std::uint64_t>(edges) * m;
  for (std::size_t e = 0; e < edges; ++e) layout->blocks.push_back({"edge", e, e * m, m});
  return layout;
}

std::uint64_t symmetric_difference(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t common = 0;
  while (i < a.size() && j < b.size()) {
    const std::uint32_t u = a[i];
    const std::uint32_t v = b[j];
    common += u == v;
    i += u <= v;
    j += v <= u;
  }
  return a.size() + b.size() - 2 * common;
}

}  // namespace

HalfIntVector cycle_cut_embed(std::uint32_t k, std::uint32_t m) {
  if (m < 2) throw RangeError("cycle length must be at least 2");
  if (k >= m) throw RangeError("residue must lie in [0, m)");
  std::vector<std::uint32_t> support;
  arc_support(k, m, 0, support);
  std::vector<HalfIntVector::Entry> entries;
  for (std::uint32_t t : support) entries.emplace_back(t, 1);
  return HalfIntVector(std::move(entries));
}

CoverEmbedding::CoverEmbedding(const CoverGraph& c)
    : m_(c.modulus()),
      vertex_count_(c.graph().vertex_count()),
      per_vertex_(c.base().edge_count() * (c.modulus() / 2)),
      layout_(per_edge_layout(c.modulus(), c.base().edge_count())) {
  if (layout_->dimension > UINT32_MAX) throw SizeCapExceeded("embedding dimension exceeds 32 bits");
  const CoverPotential potential(c);
  support_.reserve(vertex_count_ * per_vertex_);
  for (VertexId x = 0; x < vertex_count_; ++x) {
    const auto row = potential.at(x);
    for (std::size_t e = 0; e < row.size(); ++e) arc_support(row[e], m_, e * m_, support_);
  }
}

HalfIntVector CoverEmbedding::point(VertexId x) const {
  if (x >= vertex_count_) throw IndexError("cover vertex out of range");
  std::vector<HalfIntVector::Entry> entries;
  entries.reserve(per_vertex_);
  for (std::uint32_t t : support(x)) entries.emplace_back(t, 1);
  return HalfIntVector(std::move(entries), layout_);
}

std::uint64_t CoverEmbedding::doubled_distance(VertexId x, VertexId y) const {
  return symmetric_difference(support(x), support(y));
}

HalfIntVector embed_point_l1(const CoverGraph& c, VertexId x) {
  const EdgeChainModM phi = phi_profile(c, 0, x);
  const std::uint32_t m = c.modulus();
  std::vector<std::uint32_t> support;
  for (std::size_t e = 0; e < phi.size(); ++e) arc_support(phi[e], m, e * m, support);
  std::vector<HalfIntVector::Entry> entries;
  for (std::uint32_t t : support) entries.emplace_back(t, 1);
  return HalfIntVector(std::move(entries), per_edge_layout(m, c.base().edge_count()));
}

PsiEmbedding::PsiEmbedding(const CoverGraph& c, std::uint64_t tree_cap) {
  const auto trees = enumerate_spanning_trees(c.base(), tree_cap);
  init(c, trees);
}

PsiEmbedding::PsiEmbedding(const CoverGraph& c, std::span<const SpanningTree> trees) { init(c, trees); }

void PsiEmbedding::init(const CoverGraph& c, std::span<const SpanningTree> trees) {
  const TreeCounts counts = tree_counts(c.base());
  if (!counts.constant_over_all_edges()) throw NonConstantNe("psi needs N_e independent of e");
  if (counts.total != trees.size()) {
    throw CapExceeded("psi needs every spanning tree; got " + std::to_string(trees.size()) + " of " +
                      counts.total.str());
  }
  m_ = c.modulus();
  normalizer_ = static_cast<std::uint64_t>(counts.avoiding.front());
  rank_ = static_cast<std::size_t>(c.base().cycle_rank());
  for (const SpanningTree& t : trees) {
    const SpanningTree checked =
        SpanningTree::from_edges(c.base(), {t.tree_edges().begin(), t.tree_edges().end()});
    cotrees_.emplace_back(checked.cotree().begin(), checked.cotree().end());
  }
  potential_ = std::make_shared<const CoverPotential>(c);
  auto layout = std::make_shared<BlockLayout>();
  layout->modulus = m_;
  layout->dimension = cotrees_.size() * rank_ * m_;
  for (std::size_t j = 0; j < cotrees_.size(); ++j) {
    for (std::size_t i = 0; i < rank_; ++i) {
      layout->blocks.push_back({"tree_cotree", j * rank_ + i, (j * rank_ + i) * m_, m_});
    }
  }
  layout_ = std::move(layout);
}

HalfIntVector PsiEmbedding::point(VertexId x) const {
  const auto row = potential_->at(x);
  std::vector<std::uint32_t> support;
  for (std::size_t j = 0; j < cotrees_.size(); ++j) {
    for (std::size_t i = 0; i < cotrees_[j].size(); ++i) {
      arc_support(row[cotrees_[j][i]], m_, (j * rank_ + i) * m_, support);
    }
  }
  std::vector<HalfIntVector::Entry> entries;
  entries.reserve(support.size());
  for (std::uint32_t t : support) entries.emplace_back(t, 1);
  return HalfIntVector(std::move(entries), layout_, normalizer_);
}

HalfIntVector embed_point_psi(const CoverGraph& c, VertexId x, std::span<const SpanningTree> trees) {
  if (x >= c.graph().vertex_count()) throw IndexError("cover vertex out of range");
  return PsiEmbedding(c, trees).point(x);
}

BinaryVector l1_to_l2(const HalfIntVector& v) {
  if (v.weight_denominator() != 1) throw NonBinaryCoordinates("weighted vectors are not binary");
  BinaryVector out;
  out.ones.reserve(v.entries().size());
  for (const auto& [coord, doubled] : v.entries()) {
    if (doubled != 1) throw NonBinaryCoordinates("coordinate outside {0, 1/2}");
    out.ones.push_back(coord);
  }
  return out;
}

std::uint64_t squared_l2_distance(const BinaryVector& a, const BinaryVector& b) {
  std::uint64_t common = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.ones.size() && j < b.ones.size()) {
    if (a.ones[i] < b.ones[j]) {
      ++i;
    } else if (b.ones[j] < a.ones[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return a.ones.size() + b.ones.size() - 2 * common;
}

std::pair<Hops, bool> diameter_or_bound(const MultiGraph& g, unsigned threads) {
  if (g.vertex_count() == 0) return {0, true};
  if (g.vertex_count() > kAllPairsVertexLimit) {
    const DistanceTable t = bfs_distances(g, 0);
    const Hops ecc = *std::max_element(t.dist.begin(), t.dist.end());
    if (ecc == DistanceTable::kInfinite) throw NotConnected("diameter of a disconnected graph");
    return {2 * ecc, false};
  }
  std::vector<Hops> ecc(g.vertex_count(), 0);
  const std::size_t workers = std::max(1u, threads);
  std::vector<std::vector<Hops>> dist(workers);
  std::vector<std::vector<VertexId>> queue(workers);
  parallel_for(g.vertex_count(), threads, [&](std::size_t v, std::size_t w) {
    bfs_distances_into(g, static_cast<VertexId>(v), dist[w], queue[w]);
    ecc[v] = *std::max_element(dist[w].begin(), dist[w].end());
  });
  const Hops diameter = *std::max_element(ecc.begin(), ecc.end());
  if (diameter == DistanceTable::kInfinite) throw NotConnected("diameter of a disconnected graph");
  return {diameter, true};
}

EmbeddedFamily assemble_family(std::vector<std::shared_ptr<const CoverGraph>> covers,
                               std::uint64_t size_cap, unsigned threads) {
  EmbeddedFamily family;
  std::uint64_t total_vertices = 0;
  std::uint64_t next_coordinate = 0;
  for (const auto& c : covers) {
    if (c->modulus() != covers.front()->modulus()) throw RangeError("family members must share m");
    total_vertices += c->graph().vertex_count();
    if (total_vertices > size_cap) throw SizeCapExceeded("family exceeds the size cap");
    FamilyComponent comp;
    comp.cover = c;
    comp.embedding = std::make_shared<const CoverEmbedding>(*c);
    comp.coordinate_base = next_coordinate;
    next_coordinate += comp.embedding->layout()->dimension;
    const auto [diameter, exact] = diameter_or_bound(c->graph(), threads);
    comp.diameter = diameter;
    comp.diameter_exact = exact;
    family.components_.push_back(std::move(comp));
  }
  family.offset_coordinate_ = next_coordinate;
  std::uint64_t offset = 0;
  for (std::size_t n = 0; n < family.components_.size(); ++n) {
    family.components_[n].offset_value = offset;
    if (n + 1 < family.components_.size()) {
      const std::uint64_t gap =
          std::max(family.components_[n].diameter, family.components_[n + 1].diameter) + n;
      family.spacing_.emplace_back(gap);
      offset += gap;
    }
  }
  return family;
}

HalfIntVector EmbeddedFamily::point(std::size_t component, VertexId x) const {
  const FamilyComponent& comp = components_.at(component);
  std::vector<HalfIntVector::Entry> entries;
  for (std::uint32_t t : comp.embedding->support(x)) entries.emplace_back(comp.coordinate_base + t, 1);
  if (comp.offset_value != 0) {
    entries.emplace_back(offset_coordinate_, static_cast<std::int64_t>(2 * comp.offset_value));
  }
  return HalfIntVector(std::move(entries));
}

Rational EmbeddedFamily::distance(std::size_t ca, VertexId x, std::size_t cb, VertexId y) const {
  return l1_distance(point(ca, x), point(cb, y));
}

CompressionProfile compression_profile(const CoverGraph& c, const PairSource& pairs,
                                       ProfileMode mode, unsigned threads) {
  const auto sources = select_sources(c.graph().vertex_count(), pairs);
  const std::size_t workers = std::max(1u, threads);
  std::vector<SweepWorkspace> spaces(workers);
  std::vector<SourceSweep> sweeps(workers);
  std::shared_ptr<const CoverEmbedding> embedding;
  if (mode == ProfileMode::kL2VsD) embedding = std::make_shared<const CoverEmbedding>(c);

  return compression_profile(
      c.graph().vertex_count(), sources, mode,
      [&](VertexId source, std::size_t worker, std::vector<Hops>& d, std::vector<std::int64_t>& value) {
        SourceSweep& s = sweeps[worker];
        spaces[worker].run(c, source, s);
        d = s.d;
        for (VertexId y = 0; y < d.size(); ++y) {
          value[y] = embedding ? static_cast<std::int64_t>(embedding->doubled_distance(source, y))
                               : static_cast<std::int64_t>(s.dq[y]);
        }
      },
      threads);
}

CompressionProfile compression_profile(const EmbeddedFamily& family, const PairSource& pairs,
                                       ProfileMode mode, unsigned threads) {
  CompressionProfile merged;
  merged.mode = mode;
  for (const FamilyComponent& comp : family.components()) {
    const CompressionProfile part = compression_profile(*comp.cover, pairs, mode, threads);
    for (const ProfileRow& row : part.rows) {
      auto it = std::find_if(merged.rows.begin(), merged.rows.end(),
                             [&](const ProfileRow& r) { return r.t == row.t; });
      if (it == merged.rows.end()) {
        merged.rows.push_back(row);
      } else {
        it->pairs += row.pairs;
        it->min_val = std::min(it->min_val, row.min_val);
        it->max_val = std::max(it->max_val, row.max_val);
      }
    }
  }
  std::sort(merged.rows.begin(), merged.rows.end(),
            [](const ProfileRow& a, const ProfileRow& b) { return a.t < b.t; });
  return merged;
}

}  // namespace zmcover
