#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "zmcover/embed.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/families.hpp"
#include "zmcover/metrics.hpp"

using namespace zmcover;

TEST_CASE("cyclic and cloud distances") {
  for (std::uint32_t m = 2; m <= 16; ++m) {
    for (std::uint32_t a = 0; a < m; ++a) {
      for (std::uint32_t b = 0; b < m; ++b) CHECK(cyclic_distance(a, b, m) == oracle::cyclic(a, b, m));
    }
  }
  CHECK(d_t_distance({{0, 1, 4}}, {{4, 1, 0}}, 5) == 2);
  CHECK_THROWS_AS(d_t_distance({{0}}, {{0, 1}}, 3), LengthMismatch);
}

TEST_CASE("worked values on small covers") {
  const CoverGraph c6 = build_zm_cover(doubled_edge(), 3);
  const VertexId a = c6.vertex(0, 0);
  const VertexId b = c6.vertex(1, 2);
  CHECK(bfs_distances(c6.graph(), a).dist[b] == 3);
  CHECK(d_q(c6, a, b) == 2);

  const CoverGraph c15 = build_zm_cover(cycle_graph(5), 3);
  const SourceSweep s = sweep_from(c15, 0);
  for (VertexId y = 0; y < 15; ++y) {
    if (s.d[y] == 7) CHECK(s.dq[y] == 5);
    if (s.d[y] < 5) CHECK(s.dq[y] == s.d[y]);
  }
}

TEST_CASE("d_Q agrees with the path-walk oracle") {
  for (const MultiGraph& base : {complete_graph(4), petersen_graph(), doubled_edge()}) {
    const CoverGraph c = build_zm_cover(base, 3);
    const auto sources = select_sources(c.graph().vertex_count(), {PairSource::Kind::kSampled, 6, 9});
    for (VertexId x : sources) {
      const SourceSweep s = sweep_from(c, x);
      CHECK(s.d == oracle::distances(c.graph(), x));
      const auto want = oracle::dq_from(c, x);
      for (VertexId y = 0; y < want.size(); ++y) CHECK(s.dq[y] == want[y]);
      for (VertexId y = 0; y < want.size(); y += 97) CHECK(d_q(c, x, y) == oracle::dq(c, x, y));
    }
  }
}

TEST_CASE("d_Q is a pseudometric bounded by d") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  std::vector<SourceSweep> all;
  for (VertexId x = 0; x < 108; ++x) all.push_back(sweep_from(c, x));
  for (VertexId x = 0; x < 108; ++x) {
    for (VertexId y = 0; y < 108; ++y) {
      CHECK(all[x].dq[y] == all[y].dq[x]);
      CHECK(all[x].dq[y] <= all[x].d[y]);
    }
  }
  for (VertexId x = 0; x < 108; x += 7) {
    for (VertexId y = 0; y < 108; y += 5) {
      for (VertexId z = 0; z < 108; z += 3) CHECK(all[x].dq[z] <= all[x].dq[y] + all[y].dq[z]);
    }
  }
}

TEST_CASE("comparison with the base girth") {
  for (const MultiGraph& base : {complete_graph(4), cycle_graph(5), doubled_edge()}) {
    const CoverGraph c = build_zm_cover(base, 3);
    const CompareReport rep = verify_compare(c, {PairSource::Kind::kAllPairs}, 2);
    const auto n = c.graph().vertex_count();
    CHECK(rep.checked == n * n);
    CHECK(rep.ok());
    CHECK(rep.base_girth == oracle::girth(base));
  }
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  const CompareReport bad = verify_compare(c, {PairSource::Kind::kAllPairs}, 1, 1);
  CHECK(bad.upper_bound_violations > 0);
  CHECK(bad.first.size() == kMaxReportedViolations);
}

TEST_CASE("seeded source selection") {
  const auto a = select_sources(1000, {PairSource::Kind::kSampled, 50, 4});
  CHECK(a == select_sources(1000, {PairSource::Kind::kSampled, 50, 4}));
  CHECK(a != select_sources(1000, {PairSource::Kind::kSampled, 50, 5}));
  CHECK(std::set<VertexId>(a.begin(), a.end()).size() == 50);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(select_sources(10, {PairSource::Kind::kSampled, 50, 4}).size() == 10);
  CHECK(select_sources(30000, {PairSource::Kind::kAuto, 7, 4}).size() == 7);
}

TEST_CASE("tree average equals d_Q when N_e is constant") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  const TreeAverager avg(c, {});
  CHECK(avg.trees_used() == 16);
  CHECK(avg.normalizer() == 8);
  CHECK_FALSE(avg.sampled());
  for (VertexId x = 0; x < 108; x += 3) {
    const auto want = oracle::dq_from(c, x);
    for (VertexId y = 0; y < 108; ++y) CHECK(avg.value(x, y) == Rational(want[y]));
  }
  CHECK(d_q_tree_average(c, 0, 50, {}) == Rational(d_q(c, 0, 50)));
}

TEST_CASE("sampled tree average estimates d_Q") {
  const CoverGraph c = build_zm_cover(complete_graph(4), 3);
  const TreeAverager est(c, {TreeSourceSpec::Kind::kSample, 0, 4000, 21});
  CHECK(est.sampled());
  for (VertexId y = 1; y < 108; y += 11) {
    const double want = static_cast<double>(d_q(c, 0, y));
    const double got = static_cast<double>(est.value(0, y));
    CHECK(std::abs(got - want) <= 0.1 * want + 0.1);
  }
}

TEST_CASE("tree average preconditions") {
  const MultiGraph lopsided = make_graph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}});
  const CoverGraph c = build_zm_cover(lopsided, 3);
  CHECK_THROWS_AS(d_q_tree_average(c, 0, 1, {}), NonConstantNe);
  const CoverGraph p = build_zm_cover(petersen_graph(), 3);
  CHECK_THROWS_AS(TreeAverager(p, {TreeSourceSpec::Kind::kEnumerate, 100}), CapExceeded);
  CHECK_THROWS_AS(d_q_tree_average(p, 0, 999999, {}), IndexError);
}

TEST_CASE("compression profile of C_15 over C_5") {
  const CoverGraph c = build_zm_cover(cycle_graph(5), 3);
  const CompressionProfile dq = compression_profile(c, {PairSource::Kind::kAllPairs}, ProfileMode::kDqVsD);
  REQUIRE(dq.rows.size() == 7);
  const std::vector<std::int64_t> want{1, 2, 3, 4, 5, 5, 5};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(dq.rows[i].t == i + 1);
    CHECK(dq.rows[i].pairs == 30);
    CHECK(dq.rows[i].min_val == want[i]);
    CHECK(dq.rows[i].max_val == want[i]);
  }
  const CompressionProfile l2 = compression_profile(c, {PairSource::Kind::kAllPairs}, ProfileMode::kL2VsD, 3);
  for (std::size_t i = 0; i < 7; ++i) CHECK(l2.rows[i].max_val == 2 * want[i]);
  const std::string csv = profile_to_csv(dq);
  CHECK(csv.rfind("t,pairs,min,max\n1,30,1/1,1/1\n", 0) == 0);
}

TEST_CASE("profiles do not depend on the worker count") {
  const CoverGraph c = build_zm_cover(petersen_graph(), 3);
  const PairSource pairs{PairSource::Kind::kSampled, 20, 8};
  const auto one = compression_profile(c, pairs, ProfileMode::kDqVsD, 1);
  const auto four = compression_profile(c, pairs, ProfileMode::kDqVsD, 4);
  CHECK(profile_to_csv(one) == profile_to_csv(four));
  const auto r1 = verify_compare(c, pairs, 1);
  const auto r4 = verify_compare(c, pairs, 4);
  CHECK(r1.checked == r4.checked);
  CHECK(r1.ok());
  CHECK(r4.ok());
}
