#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/families.hpp"
#include "zmcover/graph_io.hpp"
#include "zmcover/multigraph.hpp"

using namespace zmcover;

TEST_CASE("incidences follow ascending edge ids and loops appear twice") {
  const MultiGraph g = make_graph(2, {{0, 1}, {1, 1}, {0, 1}});
  REQUIRE(g.incident(0).size() == 2);
  CHECK(g.incident(0)[0].edge == 0);
  CHECK(g.incident(0)[1].edge == 2);
  REQUIRE(g.degree(1) == 4);
  int loop_halves = 0;
  for (const Incidence& inc : g.incident(1)) loop_halves += inc.edge == 1;
  CHECK(loop_halves == 2);
  CHECK(g.traverse(0, 0, Direction::kForward) == 1u);
  CHECK(g.traverse(1, 0, Direction::kBackward) == 0u);
  CHECK_FALSE(g.traverse(0, 0, Direction::kBackward).has_value());
  CHECK(g.cycle_rank() == 2);
  CHECK_THROWS_AS(make_graph(2, {{0, 2}}), IndexError);
}

TEST_CASE("girth matches the edge-deletion oracle on random multigraphs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const MultiGraph g = random_connected(2 + seed % 9, seed % 7, seed);
    const auto got = girth(g);
    const std::uint32_t want = oracle::girth(g);
    if (want == oracle::kInf) {
      CHECK_FALSE(got.has_value());
    } else {
      CHECK(got == want);
    }
  }
}

TEST_CASE("girth of named families") {
  CHECK(girth(cycle_graph(8)) == 8u);
  CHECK(girth(doubled_edge()) == 2u);
  CHECK(girth(rose_graph(2)) == 1u);
  CHECK(girth(complete_graph(4)) == 3u);
  CHECK(girth(petersen_graph()) == 5u);
  CHECK_FALSE(girth(path_graph(5)).has_value());
}

TEST_CASE("bfs distances agree with the oracle and are symmetric") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MultiGraph g = random_connected(12, 6, 100 + seed);
    std::vector<std::vector<std::uint32_t>> d;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      d.push_back(bfs_distances(g, s).dist);
      CHECK(d.back() == oracle::distances(g, s));
    }
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
      for (VertexId b = 0; b < g.vertex_count(); ++b) {
        CHECK(d[a][b] == d[b][a]);
        for (VertexId c = 0; c < g.vertex_count(); ++c) CHECK(d[a][c] <= d[a][b] + d[b][c]);
      }
    }
  }
}

TEST_CASE("unreachable vertices report no distance") {
  const MultiGraph g = make_graph(3, {{0, 1}});
  const DistanceTable t = bfs_distances(g, 0);
  CHECK(t.at(1) == 1u);
  CHECK_FALSE(t.at(2).has_value());
  CHECK_FALSE(is_connected(g));
}

TEST_CASE("bridges are exactly the edges whose removal disconnects") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MultiGraph g = random_connected(3 + seed % 8, seed % 5, 500 + seed);
    std::vector<EdgeId> want;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!oracle::connected(g.without_edge(e))) want.push_back(e);
    }
    auto got = bridges(g);
    std::sort(got.begin(), got.end());
    CHECK(got == want);
    CHECK(is_two_edge_connected(g) == want.empty());
  }
}

TEST_CASE("paths: endpoints, signed counts and mismatches") {
  const MultiGraph g = cycle_graph(4);
  const Path p{0, {{0, Direction::kForward}, {1, Direction::kForward}, {1, Direction::kBackward}}};
  CHECK(path_end(g, p) == 1u);
  CHECK(signed_counts(g, p) == std::vector<std::int64_t>{1, 0, 0, 0});
  const Path broken{0, {{1, Direction::kForward}}};
  CHECK_THROWS_AS(path_end(g, broken), PathMismatch);
  const Path shortest = bfs_path(g, 0, 2);
  CHECK(shortest.steps.size() == 2);
  CHECK(path_end(g, shortest) == 2u);
}

TEST_CASE("Cayley graphs of Z_m^n") {
  const MultiGraph z3 = cayley_zm_power(2, 3);
  CHECK(z3.vertex_count() == 9);
  CHECK(z3.edge_count() == 18);
  for (VertexId v = 0; v < 9; ++v) CHECK(z3.degree(v) == 4);
  CHECK(girth(z3) == 3u);

  const MultiGraph z2 = cayley_zm_power(2, 2);
  CHECK(z2.vertex_count() == 4);
  CHECK(z2.edge_count() == 4);
  CHECK(oracle::girth(z2) == 4);

  const MultiGraph cube = cayley_zm_power(3, 2);
  CHECK(cube.edge_count() == 12);
  CHECK(girth(cube) == 4u);
  for (const Edge& e : cube.edges()) CHECK(e.label.has_value());

  CHECK_THROWS_AS(cayley_zm_power(30, 3, 1000), SizeCapExceeded);
}

TEST_CASE("graph documents round-trip and reject malformed input") {
  std::vector<Edge> edges{{0, 1, 4u}, {1, 1, std::nullopt}, {1, 0, 2u}};
  const MultiGraph g(2, edges);
  const MultiGraph back = graph_from_json(nlohmann::json::parse(graph_to_json(g).dump()));
  CHECK(back == g);
  CHECK(parse_graph(R"({"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]]})") == cycle_graph(3));
  CHECK_THROWS_AS(parse_graph("{"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2, "edges": [[0]]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2, "edges": [[0, 5]]})"), IndexError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices": 2, "edges": [[0, 1]], "labels": []})"), ParseError);
  CHECK_THROWS_AS(load_graph_file("/nonexistent/graph.json"), IoError);
}
