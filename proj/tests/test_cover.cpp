#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "zmcover/cover.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/families.hpp"
#include "zmcover/graph_io.hpp"

using namespace zmcover;

namespace {

bool regular(const MultiGraph& g, std::size_t degree) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != degree) return false;
  }
  return true;
}

std::set<std::pair<VertexId, VertexId>> oriented_edges(const MultiGraph& g) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (const Edge& e : g.edges()) out.insert({e.tail, e.head});
  return out;
}

}  // namespace

TEST_CASE("the cover of C_5 for m = 3 is C_15") {
  const CoverGraph c = build_zm_cover(cycle_graph(5), 3);
  CHECK(c.graph().vertex_count() == 15);
  CHECK(c.graph().edge_count() == 15);
  CHECK(oracle::connected(c.graph()));
  CHECK(regular(c.graph(), 2));
  CHECK(oracle::girth(c.graph()) == 15);
  CHECK(c.rank() == 1);
  CHECK(c.fiber_size() == 3);
}

TEST_CASE("the cover of the doubled edge for m = 3 is C_6") {
  const CoverGraph c = build_zm_cover(doubled_edge(), 3);
  CHECK(c.graph().vertex_count() == 6);
  CHECK(oracle::connected(c.graph()));
  CHECK(regular(c.graph(), 2));
  CHECK(oracle::girth(c.graph()) == 6);
}

TEST_CASE("K_4 cover: sizes, regularity and index layout") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  CHECK(c.rank() == 3);
  CHECK(c.graph().vertex_count() == 108);
  CHECK(c.graph().edge_count() == 162);
  CHECK(regular(c.graph(), 3));
  CHECK(oracle::connected(c.graph()));
  CHECK(oracle::girth(c.graph()) > 3);
  for (VertexId v = 0; v < 4; ++v) {
    for (std::uint64_t k = 0; k < c.fiber_size(); ++k) {
      const VertexId x = c.vertex(v, k);
      CHECK(x == v * 27 + k);
      CHECK(project(c, x) == v);
      CHECK(c.encode_label(c.decode_label(k)) == k);
    }
  }
  for (EdgeId e = 0; e < c.graph().edge_count(); ++e) {
    const Edge& ce = c.graph().edge(e);
    const Edge& be = c.base().edge(project_edge(c, e));
    CHECK(project(c, ce.tail) == be.tail);
    CHECK(project(c, ce.head) == be.head);
  }
}

TEST_CASE("covers of loops and parallel edges") {
  const CoverGraph rose = build_zm_cover(rose_graph(2), 3);
  CHECK(rose.graph().vertex_count() == 9);
  CHECK(regular(rose.graph(), 4));
  CHECK(oracle::girth(rose.graph()) == 3);
  const MultiGraph mixed = make_graph(2, {{0, 1}, {0, 1}, {1, 1}});
  const CoverGraph c = build_zm_cover(mixed, 2);
  CHECK(c.graph().vertex_count() == 8);
  CHECK(oracle::connected(c.graph()));
}

TEST_CASE("cover construction rejects bad input") {
  CHECK_THROWS_AS(build_zm_cover(cycle_graph(4), 1), RangeError);
  CHECK_THROWS_AS(build_zm_cover(path_graph(3), 3), NotTwoEdgeConnected);
  CHECK_THROWS_AS(build_zm_cover(make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}), 3), NotTwoEdgeConnected);
  CHECK_THROWS_AS(build_zm_cover(make_graph(3, {{0, 1}, {1, 0}}), 3), NotTwoEdgeConnected);
  CHECK_THROWS_AS(build_zm_cover(petersen_graph(), 3, std::nullopt, 5000), SizeCapExceeded);
  CHECK_THROWS_AS(build_zm_cover(cycle_graph(4), 3, SpanningTree::from_edges(cycle_graph(3), {0, 1})),
                  NotSpanningTree);
}

TEST_CASE("lifts project back and agree with a scan of cover incidences") {
  const CoverGraph c = build_zm_cover(petersen_graph(), 3);
  SeededRng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Path p = oracle::random_walk(c.base(), static_cast<VertexId>(rng.below(10)), rng.below(20), rng);
    const VertexId start = c.vertex(p.start, rng.below(c.fiber_size()));
    const LiftedPath lift = lift_path(c, p, start);
    CHECK(lift.end == oracle::lift_end(c, p, start));
    CHECK(path_end(c.graph(), lift.path) == lift.end);
    CHECK(project(c, lift.end) == oracle::walk_end(c.base(), p));
    REQUIRE(lift.path.steps.size() == p.steps.size());
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      CHECK(project_edge(c, lift.path.steps[i].edge) == p.steps[i].edge);
      CHECK(lift.path.steps[i].dir == p.steps[i].dir);
    }
  }
  CHECK_THROWS_AS(lift_path(c, Path{0, {}}, c.vertex(1, 0)), PathMismatch);
}

TEST_CASE("phi is path independent") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  SeededRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const VertexId x = static_cast<VertexId>(rng.below(108));
    const VertexId y = static_cast<VertexId>(rng.below(108));
    Path detour = oracle::random_walk(c.graph(), x, rng.below(15), rng);
    const Path rest = bfs_path(c.graph(), path_end(c.graph(), detour), y);
    detour.steps.insert(detour.steps.end(), rest.steps.begin(), rest.steps.end());
    const EdgeChainModM along = phi_along(c, detour);
    CHECK(along == phi_profile(c, x, y));
    const auto want = oracle::phi(c, x, y);
    for (std::size_t e = 0; e < want.size(); ++e) CHECK(along[e] == want[e]);
    CHECK(CoverPotential(c).phi(x, y) == along);
  }
}

TEST_CASE("deck translations are automorphisms over the identity") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  const auto edges = oriented_edges(c.graph());
  for (std::uint64_t k = 0; k < c.fiber_size(); ++k) {
    for (EdgeId e = 0; e < c.graph().edge_count(); ++e) {
      const Edge& ce = c.graph().edge(e);
      const EdgeId moved = c.translate_edge(e, k);
      CHECK(project_edge(c, moved) == project_edge(c, e));
      CHECK(c.graph().edge(moved).tail == c.translate_vertex(ce.tail, k));
      CHECK(c.graph().edge(moved).head == c.translate_vertex(ce.head, k));
      CHECK(edges.count({c.translate_vertex(ce.tail, k), c.translate_vertex(ce.head, k)}) == 1);
    }
  }
}

TEST_CASE("clouds collapse the cover onto the Cayley graph of Z_m^r") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  const auto own = cloud_map(c, c.construction_tree());
  for (VertexId x = 0; x < c.graph().vertex_count(); ++x) {
    CHECK(own[x] == c.decode_label(c.vertex_label_rank(x)));
  }
  for (const auto& tree_edges : oracle::spanning_trees(c.base())) {
    const SpanningTree t = SpanningTree::from_edges(c.base(), tree_edges);
    const auto clouds = cloud_map(c, t);
    std::set<std::vector<Residue>> distinct;
    for (const auto& label : clouds) distinct.insert(label.coords);
    CHECK(distinct.size() == c.fiber_size());
    for (EdgeId e = 0; e < c.graph().edge_count(); ++e) {
      const Edge& ce = c.graph().edge(e);
      CloudLabel expect = clouds[ce.tail];
      if (const auto j = t.cotree_position(project_edge(c, e))) expect.coords[*j] = (expect.coords[*j] + 1) % 3;
      CHECK(clouds[ce.head] == expect);
    }
  }
}

TEST_CASE("chains: boundaries, congruence and repeated edges") {
  const MultiGraph g = complete_graph(4);
  SeededRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Path p = oracle::random_walk(g, static_cast<VertexId>(rng.below(4)), rng.below(10), rng);
    const VertexChainModM b = boundary_mod_m(g, path_chain(g, p, 3));
    VertexChainModM want(3, 4);
    want.add(oracle::walk_end(g, p), 1);
    want.add(p.start, -1);
    CHECK(b == want);
  }
  const Path tri{0, {{0, Direction::kForward}, {3, Direction::kForward}, {1, Direction::kBackward}}};
  Path thrice = tri;
  for (int i = 0; i < 2; ++i) thrice.steps.insert(thrice.steps.end(), tri.steps.begin(), tri.steps.end());
  CHECK(is_m_congruent(g, Path{0, {}}, thrice, 3));
  CHECK_FALSE(is_m_congruent(g, Path{0, {}}, tri, 3));
  CHECK(has_m_repeated_edge(g, thrice, 3));
  CHECK_FALSE(has_m_repeated_edge(g, tri, 3));
  CHECK_THROWS_AS(is_m_congruent(g, Path{0, {}}, Path{1, {}}, 3), EndpointMismatch);
  CHECK_THROWS_AS(boundary_mod_m(g, EdgeChainModM(3, 2)), LengthMismatch);
}

TEST_CASE("cover documents round-trip and detect tampering") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3, SpanningTree::from_edges(complete_graph(4), {0, 3, 5}));
  const auto doc = nlohmann::json::parse(cover_to_json(c).dump());
  const CoverGraph back = cover_from_json(doc);
  CHECK(back.graph() == c.graph());
  CHECK(back.construction_tree() == c.construction_tree());
  auto bad = doc;
  bad["edges"][0][1] = (bad["edges"][0][1].get<int>() + 1) % 108;
  CHECK_THROWS_AS(cover_from_json(bad), ParseError);
  CHECK_THROWS_AS(cover_from_json(nlohmann::json::object()), ParseError);
}
