#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/families.hpp"
#include "zmcover/harness.hpp"
#include "zmcover/metrics.hpp"

using namespace zmcover;

namespace {

SuiteConfig small_suite() {
  SuiteConfig cfg;
  cfg.graphs = {"doubled_edge", "k4", "c5"};
  return cfg;
}

MultiGraph relabeled(const MultiGraph& g, std::uint64_t seed) {
  std::vector<VertexId> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), VertexId{0});
  SeededRng rng(seed);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.head], perm[e.tail], std::nullopt});
  std::reverse(edges.begin(), edges.end());
  return MultiGraph(g.vertex_count(), std::move(edges));
}

}  // namespace

TEST_CASE("the default checks pass on small covers") {
  const VerificationReport report = run_suite(small_suite());
  CHECK(report.pass);
  CHECK(report.records.size() == 3 * all_checks().size());
  for (const CheckRecord& r : report.records) {
    CHECK_MESSAGE(r.status == "pass", r.check << " " << r.instance << ": " << r.note);
    CHECK(r.checked > 0);
  }
}

TEST_CASE("every fault is flagged by its own check") {
  const std::vector<std::pair<Fault, Check>> pairs{
      {Fault::kDqPlusOne, Check::kCompare},   {Fault::kLiftShift, Check::kCongLifts},
      {Fault::kEmbedFlip, Check::kIsometry},  {Fault::kL2Shift, Check::kL2},
      {Fault::kTreeAvgSkew, Check::kTreeAvg}, {Fault::kGirthFlat, Check::kGirthGrowth},
      {Fault::kNeSkew, Check::kNeConstant},
  };
  for (const auto& [fault, check] : pairs) {
    SuiteConfig cfg;
    cfg.graphs = {"k4"};
    cfg.fault = fault;
    const VerificationReport report = run_suite(cfg);
    CHECK_FALSE(report.pass);
    for (const CheckRecord& r : report.records) {
      const bool target = r.check == check_name(check);
      CHECK_MESSAGE((r.status == "fail") == target, fault_name(fault) << " -> " << r.check);
      if (target) {
        CHECK(r.violations > 0);
        CHECK(!r.details.empty());
        CHECK(r.details.size() <= kMaxReportedViolations);
      }
    }
  }
}

TEST_CASE("an empty check set gives an empty passing report") {
  SuiteConfig cfg;
  cfg.checks.clear();
  const VerificationReport report = run_suite(cfg);
  CHECK(report.pass);
  CHECK(report.records.empty());
  CHECK(report_to_json(report)["overall"] == "pass");
}

TEST_CASE("reports are identical across worker counts") {
  SuiteConfig cfg = small_suite();
  cfg.graphs.push_back("tower:2:2:3");
  cfg.threads = 1;
  const std::string one = report_to_json(run_suite(cfg)).dump();
  cfg.threads = 5;
  const std::string five = report_to_json(run_suite(cfg)).dump();
  CHECK(one == five);
  CHECK(one.find("\"threads\"") == std::string::npos);
  cfg.seed = 2;
  CHECK(report_to_json(run_suite(cfg)).dump() != one);
}

TEST_CASE("instances that cannot be covered fail the suite with diagnostics") {
  SuiteConfig cfg;
  cfg.graphs = {"cycle:4", "complete:2"};
  const VerificationReport report = run_suite(cfg);
  CHECK_FALSE(report.pass);
  REQUIRE(!report.records.empty());
  CHECK(report.records.front().status == "error");
  CHECK(report.records.front().instance == "complete:2");
  CHECK(report_summary(report).find("overall: fail") != std::string::npos);
}

TEST_CASE("input names") {
  CHECK(named_graph("cycle:7") == cycle_graph(7));
  CHECK(named_graph("complete:5") == complete_graph(5));
  CHECK(named_graph("cayley:2:3") == cayley_zm_power(2, 3));
  CHECK(named_graph("rose:3") == rose_graph(3));
  CHECK_THROWS_AS(named_graph("cycle"), ParseError);
  CHECK_THROWS_AS(named_graph("cycle:x"), ParseError);
  CHECK_THROWS_AS(named_graph("moebius"), ParseError);
  CHECK_THROWS_AS(named_graph("/nonexistent.json"), IoError);
  const auto tower = resolve_input("tower:2:3:2", 7, kDefaultSizeCap);
  REQUIRE(tower.size() == 2);
  CHECK(tower[0].name == "tower:2:3:2/level1");
  CHECK(tower[0].cover->graph().vertex_count() == 9);
  CHECK(tower[1].cover->graph().vertex_count() == 531441);
  CHECK(resolve_input("tower:2:2:3", 3, kDefaultSizeCap).size() == 2);
  CHECK(parse_check("girth_growth") == Check::kGirthGrowth);
  CHECK_FALSE(parse_check("nope").has_value());
  CHECK(parse_fault("ne_skew") == Fault::kNeSkew);
}

TEST_CASE("fingerprints") {
  const MultiGraph k4 = complete_graph(4);
  const CoverGraph a = build_zm_cover(k4, 3, SpanningTree::from_edges(k4, {0, 1, 2}));
  const CoverGraph b = build_zm_cover(k4, 3, SpanningTree::from_edges(k4, {0, 3, 5}));
  CHECK_FALSE(a.graph() == b.graph());
  CHECK(fingerprint(a.graph()) == fingerprint(b.graph(), 3));

  const MultiGraph k33 = make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  CHECK_FALSE(fingerprint(cycle_graph(6)) == fingerprint(k33));

  const MultiGraph p = petersen_graph();
  for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(fingerprint(relabeled(p, seed)) == fingerprint(p));
  CHECK_FALSE(fingerprint(p) == fingerprint(relabeled(cycle_graph(10), 1)));
}
