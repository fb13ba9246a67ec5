#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/families.hpp"
#include "zmcover/trees.hpp"

using namespace zmcover;

namespace {

// g / e: merge the endpoints of e and drop e itself.
MultiGraph contract(const MultiGraph& g, EdgeId e) {
  const VertexId keep = g.edge(e).tail;
  const VertexId gone = g.edge(e).head;
  const auto rename = [&](VertexId v) {
    const VertexId w = v == gone ? keep : v;
    return w > gone ? w - 1 : w;
  };
  std::vector<Edge> edges;
  for (EdgeId f = 0; f < g.edge_count(); ++f) {
    if (f != e) edges.push_back({rename(g.edge(f).tail), rename(g.edge(f).head), std::nullopt});
  }
  return MultiGraph(g.vertex_count() - 1, std::move(edges));
}

std::vector<std::uint64_t> oracle_avoiding(const MultiGraph& g, const std::vector<std::vector<EdgeId>>& trees) {
  std::vector<std::uint64_t> out(g.edge_count(), trees.size());
  for (const auto& t : trees) {
    for (EdgeId e : t) --out[e];
  }
  return out;
}

}  // namespace

TEST_CASE("K_4 has 16 spanning trees, each edge avoided by 8") {
  const MultiGraph k4 = complete_graph(4);
  const auto trees = oracle::spanning_trees(k4);
  CHECK(trees.size() == 16);
  CHECK(count_spanning_trees(k4) == 16);
  const TreeCounts counts = tree_counts(k4);
  CHECK(counts.total == 16);
  for (std::uint64_t n : oracle_avoiding(k4, trees)) CHECK(n == 8);
  for (const BigInt& n : counts.avoiding) CHECK(n == 8);
  CHECK(counts.constant);
  CHECK(counts.constant_over_all_edges());
  CHECK(*counts.common == 8);
}

TEST_CASE("Matrix-Tree counts match enumeration on random multigraphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const MultiGraph g = random_connected(2 + seed % 6, 1 + seed % 5, 900 + seed);
    const auto trees = oracle::spanning_trees(g);
    const TreeCounts counts = tree_counts(g, 2);
    CHECK(counts.total == trees.size());
    const auto avoiding = oracle_avoiding(g, trees);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      CHECK(counts.avoiding[e] == avoiding[e]);
      CHECK(count_trees_avoiding(g, e) == avoiding[e]);
    }
    std::uint64_t enumerated = 0;
    for_each_spanning_tree(g, 1'000'000, [&](const SpanningTree&) { ++enumerated; });
    CHECK(enumerated == trees.size());
  }
}

TEST_CASE("deletion-contraction and the edge-sum identity") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const MultiGraph g = random_connected(3 + seed % 6, 2 + seed % 4, 1300 + seed);
    const BigInt tau = count_spanning_trees(g);
    BigInt excess = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const BigInt avoid = count_trees_avoiding(g, e);
      excess += tau - avoid;
      if (g.edge(e).is_loop()) {
        CHECK(avoid == tau);
        continue;
      }
      const MultiGraph minus = g.without_edge(e);
      const BigInt deleted = is_connected(minus) ? count_spanning_trees(minus) : BigInt(0);
      CHECK(tau == deleted + count_spanning_trees(contract(g, e)));
    }
    CHECK(excess == BigInt(g.vertex_count() - 1) * tau);
  }
}

TEST_CASE("loops break constancy over all edges") {
  const MultiGraph g = make_graph(2, {{0, 1}, {0, 1}, {0, 0}});
  const TreeCounts counts = tree_counts(g);
  CHECK(counts.total == 2);
  CHECK(counts.constant);
  CHECK_FALSE(counts.constant_over_all_edges());
}

TEST_CASE("large trees counts stay exact") {
  // tau(K_n) = n^(n-2)
  BigInt want = 1;
  for (int i = 0; i < 28; ++i) want *= 30;
  CHECK(count_spanning_trees(complete_graph(30)) == want);
}

TEST_CASE("spanning tree validation and structure") {
  const MultiGraph k4 = complete_graph(4);
  const SpanningTree t = SpanningTree::from_edges(k4, {0, 1, 2});
  CHECK(t.rank() == 3);
  CHECK(t.cotree().size() == 3);
  CHECK(t.cotree_position(3) == 0u);
  CHECK_FALSE(t.cotree_position(0).has_value());
  CHECK(t.parent(1)->vertex == 0u);
  CHECK_FALSE(t.parent(0).has_value());
  CHECK_THROWS_AS(SpanningTree::from_edges(k4, {0, 1}), NotSpanningTree);
  CHECK_THROWS_AS(SpanningTree::from_edges(k4, {0, 1, 3}), NotSpanningTree);
  CHECK_THROWS_AS(SpanningTree::from_edges(k4, {0, 0, 1}), NotSpanningTree);
  CHECK_THROWS_AS(SpanningTree::from_edges(k4, {0, 1, 9}), NotSpanningTree);
  CHECK_THROWS_AS(count_spanning_trees(make_graph(3, {{0, 1}})), NotConnected);
}

TEST_CASE("the BFS tree of a listed cycle claims edges by first discovery") {
  const SpanningTree t = some_spanning_tree(cycle_graph(3));
  CHECK(std::vector<EdgeId>(t.tree_edges().begin(), t.tree_edges().end()) == std::vector<EdgeId>{0, 2});
  const SpanningTree u = some_spanning_tree(make_graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(std::vector<EdgeId>(u.tree_edges().begin(), u.tree_edges().end()) == std::vector<EdgeId>{0, 1});
}

TEST_CASE("enumeration respects the cap") {
  CHECK_THROWS_AS(enumerate_spanning_trees(petersen_graph(), 100), CapExceeded);
  CHECK(enumerate_spanning_trees(petersen_graph(), 2000).size() == 2000);
}

TEST_CASE("Wilson sampling is uniform (chi-square, p = 0.001)") {
  const auto chi_square = [](const MultiGraph& g, std::size_t draws) {
    std::map<std::vector<EdgeId>, std::size_t> seen;
    for (const auto& t : oracle::spanning_trees(g)) seen[t] = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      const SpanningTree t = sample_uniform_tree(g, 77 + i);
      std::vector<EdgeId> key(t.tree_edges().begin(), t.tree_edges().end());
      REQUIRE(seen.count(key) == 1);
      ++seen[key];
    }
    const double expected = static_cast<double>(draws) / static_cast<double>(seen.size());
    double stat = 0;
    for (const auto& [tree, count] : seen) stat += (count - expected) * (count - expected) / expected;
    return stat;
  };
  CHECK(chi_square(cycle_graph(3), 3000) < 13.8155);         // df = 2
  CHECK(chi_square(complete_graph(4), 8000) < 37.6973);      // df = 15
  CHECK(sample_uniform_tree(petersen_graph(), 5) == sample_uniform_tree(petersen_graph(), 5));
}
