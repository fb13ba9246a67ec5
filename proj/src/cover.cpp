#include "zmcover/cover.hpp"

#include <string>

#include "zmcover/errors.hpp"
#include "zmcover/graph_io.hpp"

namespace zmcover {

CoverGraph::CoverGraph(std::shared_ptr<const MultiGraph> base, std::uint32_t m, SpanningTree tree)
    : base_(std::move(base)), m_(m), tree_(std::move(tree)) {
  place_.reserve(tree_.rank());
  for (std::size_t i = 0; i < tree_.rank(); ++i) {
    place_.push_back(fiber_);
    fiber_ *= m_;
  }
}

VertexId CoverGraph::project_vertex(VertexId x) const {
  if (x >= graph_->vertex_count()) throw IndexError("cover vertex out of range");
  return static_cast<VertexId>(x / fiber_);
}

EdgeId CoverGraph::project_edge(EdgeId x) const {
  if (x >= graph_->edge_count()) throw IndexError("cover edge out of range");
  return static_cast<EdgeId>(x / fiber_);
}

std::uint64_t CoverGraph::encode_label(const CloudLabel& k) const {
  if (k.coords.size() != place_.size()) throw LengthMismatch("label length differs from rank");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < place_.size(); ++i) {
    if (k.coords[i] >= m_) throw RangeError("label coordinate not reduced mod m");
    rank += k.coords[i] * place_[i];
  }
  return rank;
}

CloudLabel CoverGraph::decode_label(std::uint64_t rank) const {
  CloudLabel k;
  k.coords.resize(place_.size());
  for (std::size_t i = 0; i < place_.size(); ++i) {
    k.coords[i] = static_cast<Residue>(rank % m_);
    rank /= m_;
  }
  return k;
}

std::uint64_t CoverGraph::shift_label(std::uint64_t rank, std::size_t coordinate,
                                      std::int64_t delta) const {
  const std::uint64_t p = place_[coordinate];
  const std::uint64_t digit = (rank / p) % m_;
  const auto m = static_cast<std::int64_t>(m_);
  const auto moved = static_cast<std::uint64_t>(((static_cast<std::int64_t>(digit) + delta) % m + m) % m);
  return rank - digit * p + moved * p;
}

std::uint64_t CoverGraph::add_labels(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t out = 0;
  for (std::uint64_t p : place_) {
    out += (((a / p) % m_ + (b / p) % m_) % m_) * p;
  }
  return out;
}

VertexId CoverGraph::translate_vertex(VertexId x, std::uint64_t by) const {
  return vertex(project_vertex(x), add_labels(vertex_label_rank(x), by));
}

EdgeId CoverGraph::translate_edge(EdgeId x, std::uint64_t by) const {
  return edge(project_edge(x), add_labels(edge_label_rank(x), by));
}

CoverGraph build_zm_cover(std::shared_ptr<const MultiGraph> base, std::uint32_t m,
                          std::optional<SpanningTree> tree, std::uint64_t size_cap) {
  if (m < 2 || m > kMaxModulus) throw RangeError("modulus out of range");
  if (!is_two_edge_connected(*base)) throw NotTwoEdgeConnected("base graph has a bridge or is disconnected");
  if (base->vertex_count() == 0 || base->cycle_rank() <= 0) {
    throw NotTwoEdgeConnected("base graph is a forest; its cover would be trivial");
  }
  SpanningTree t = tree ? std::move(*tree) : some_spanning_tree(*base);
  if (t.edge_count() != base->edge_count()) throw NotSpanningTree("tree belongs to another graph");

  std::uint64_t vertices = base->vertex_count();
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (vertices > size_cap / m) {
      throw SizeCapExceeded("cover would have more than " + std::to_string(size_cap) + " vertices");
    }
    vertices *= m;
  }

  CoverGraph c(std::move(base), m, std::move(t));
  const MultiGraph& b = *c.base_;
  std::vector<Edge> edges;
  edges.reserve(b.edge_count() * c.fiber_);
  for (EdgeId e = 0; e < b.edge_count(); ++e) {
    const Edge& be = b.edge(e);
    const auto position = c.tree_.cotree_position(e);
    for (std::uint64_t k = 0; k < c.fiber_; ++k) {
      const std::uint64_t head_label = position ? c.shift_label(k, *position, 1) : k;
      edges.push_back({c.vertex(be.tail, k), c.vertex(be.head, head_label), be.label});
    }
  }
  c.graph_ = std::make_shared<const MultiGraph>(vertices, std::move(edges));
  return c;
}

CoverGraph build_zm_cover(const MultiGraph& base, std::uint32_t m, std::optional<SpanningTree> tree,
                          std::uint64_t size_cap) {
  return build_zm_cover(std::make_shared<const MultiGraph>(base), m, std::move(tree), size_cap);
}

VertexId project(const CoverGraph& c, VertexId cover_vertex) { return c.project_vertex(cover_vertex); }

EdgeId project_edge(const CoverGraph& c, EdgeId cover_edge) { return c.project_edge(cover_edge); }

LiftedPath lift_path(const CoverGraph& c, const Path& base_path, VertexId start) {
  if (start >= c.graph().vertex_count()) throw PathMismatch("start vertex out of range");
  if (c.project_vertex(start) != base_path.start) {
    throw PathMismatch("start vertex does not lie over the path origin");
  }
  path_end(c.base(), base_path);

  LiftedPath lifted{{start, {}}, start};
  lifted.path.steps.reserve(base_path.steps.size());
  VertexId at = start;
  for (const PathStep& s : base_path.steps) {
    const Edge& be = c.base().edge(s.edge);
    const auto position = c.construction_tree().cotree_position(s.edge);
    const std::uint64_t k = c.vertex_label_rank(at);
    if (s.dir == Direction::kForward) {
      const std::uint64_t next = position ? c.shift_label(k, *position, 1) : k;
      lifted.path.steps.push_back({c.edge(s.edge, k), s.dir});
      at = c.vertex(be.head, next);
    } else {
      const std::uint64_t from = position ? c.shift_label(k, *position, -1) : k;
      lifted.path.steps.push_back({c.edge(s.edge, from), s.dir});
      at = c.vertex(be.tail, from);
    }
  }
  lifted.end = at;
  return lifted;
}

CoverPotential::CoverPotential(const CoverGraph& c)
    : m_(c.modulus()), width_(c.base().edge_count()) {
  const MultiGraph& g = c.graph();
  data_.assign(g.vertex_count() * width_, 0);
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue{0};
  queue.reserve(g.vertex_count());
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    for (const Incidence& inc : g.incident(u)) {
      if (seen[inc.neighbor]) continue;
      seen[inc.neighbor] = true;
      queue.push_back(inc.neighbor);
      Residue* row = data_.data() + inc.neighbor * width_;
      std::copy_n(data_.data() + u * width_, width_, row);
      const std::size_t e = c.project_edge(inc.edge);
      row[e] = static_cast<Residue>(inc.dir == Direction::kForward ? (row[e] + 1) % m_
                                                                   : (row[e] + m_ - 1) % m_);
    }
  }
}

EdgeChainModM CoverPotential::chain(VertexId x) const {
  EdgeChainModM out(m_, width_);
  const auto row = at(x);
  for (std::size_t e = 0; e < width_; ++e) out.add(e, row[e]);
  return out;
}

EdgeChainModM CoverPotential::phi(VertexId x, VertexId y) const {
  EdgeChainModM out(m_, width_);
  const auto from = at(x);
  const auto to = at(y);
  for (std::size_t e = 0; e < width_; ++e) {
    out.add(e, static_cast<std::int64_t>(to[e]) - static_cast<std::int64_t>(from[e]));
  }
  return out;
}

std::vector<CloudLabel> cloud_map(const CoverGraph& c, const CoverPotential& potential,
                                  const SpanningTree& t) {
  const SpanningTree checked =
      SpanningTree::from_edges(c.base(), {t.tree_edges().begin(), t.tree_edges().end()});
  const auto cotree = checked.cotree();
  std::vector<CloudLabel> labels(c.graph().vertex_count());
  for (VertexId x = 0; x < labels.size(); ++x) {
    const auto row = potential.at(x);
    labels[x].coords.reserve(cotree.size());
    for (EdgeId e : cotree) labels[x].coords.push_back(row[e]);
  }
  return labels;
}

std::vector<CloudLabel> cloud_map(const CoverGraph& c, const SpanningTree& t) {
  return cloud_map(c, CoverPotential(c), t);
}

EdgeChainModM phi_along(const CoverGraph& c, const Path& cover_path) {
  path_end(c.graph(), cover_path);
  EdgeChainModM chain(c.modulus(), c.base().edge_count());
  for (const PathStep& s : cover_path.steps) chain.add(c.project_edge(s.edge), sign(s.dir));
  return chain;
}

EdgeChainModM phi_profile(const CoverGraph& c, VertexId x, VertexId y) {
  if (x >= c.graph().vertex_count() || y >= c.graph().vertex_count()) {
    throw IndexError("cover vertex out of range");
  }
  return phi_along(c, bfs_path(c.graph(), x, y));
}

VertexChainModM boundary_mod_m(const MultiGraph& g, const EdgeChainModM& chain) {
  if (chain.size() != g.edge_count()) throw LengthMismatch("chain length differs from |E|");
  VertexChainModM out(chain.modulus(), g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.add(g.edge(e).head, chain[e]);
    out.add(g.edge(e).tail, -static_cast<std::int64_t>(chain[e]));
  }
  return out;
}

EdgeChainModM path_chain(const MultiGraph& g, const Path& p, std::uint32_t m) {
  return EdgeChainModM::from_counts(m, signed_counts(g, p));
}

bool is_m_congruent(const MultiGraph& g, const Path& p1, const Path& p2, std::uint32_t m) {
  if (p1.start != p2.start || path_end(g, p1) != path_end(g, p2)) {
    throw EndpointMismatch("paths do not share both endpoints");
  }
  return path_chain(g, p1, m) == path_chain(g, p2, m);
}

bool has_m_repeated_edge(const MultiGraph& g, const Path& p, std::uint32_t m) {
  const auto counts = signed_counts(g, p);
  const auto mm = static_cast<std::int64_t>(m);
  for (std::int64_t c : counts) {
    if (c != 0 && c % mm == 0) return true;
  }
  return false;
}

nlohmann::ordered_json cover_to_json(const CoverGraph& c) {
  nlohmann::ordered_json doc = graph_to_json(c.graph());
  doc["base"] = graph_to_json(c.base());
  doc["m"] = c.modulus();
  doc["cotree"] = std::vector<EdgeId>(c.construction_tree().cotree().begin(),
                                      c.construction_tree().cotree().end());
  return doc;
}

CoverGraph cover_from_json(const nlohmann::json& doc, std::uint64_t size_cap) {
  if (!doc.is_object() || !doc.contains("base") || !doc.contains("m") || !doc.contains("cotree")) {
    throw ParseError("cover document needs \"base\", \"m\" and \"cotree\"");
  }
  const MultiGraph base = graph_from_json(doc["base"]);
  if (!doc["m"].is_number_unsigned()) throw ParseError("\"m\" must be a positive integer");
  const auto m = doc["m"].get<std::uint32_t>();
  std::vector<bool> in_cotree(base.edge_count(), false);
  for (const auto& v : doc["cotree"]) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= base.edge_count()) {
      throw ParseError("cotree entries must be base edge ids");
    }
    in_cotree[v.get<std::size_t>()] = true;
  }
  std::vector<EdgeId> tree_edges;
  for (EdgeId e = 0; e < base.edge_count(); ++e) {
    if (!in_cotree[e]) tree_edges.push_back(e);
  }
  CoverGraph c = build_zm_cover(base, m, SpanningTree::from_edges(base, tree_edges), size_cap);
  if (doc.contains("vertices") && doc.contains("edges")) {
    if (!(graph_from_json(doc) == c.graph())) {
      throw ParseError("cover edges disagree with the construction from base, m and cotree");
    }
  }
  return c;
}

}  // namespace zmcover
