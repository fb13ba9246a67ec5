#include "zmcover/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "zmcover/boxspace.hpp"
#include "zmcover/embed.hpp"
#include "zmcover/errors.hpp"
#include "zmcover/families.hpp"
#include "zmcover/graph_io.hpp"
#include "zmcover/metrics.hpp"
#include "zmcover/parallel.hpp"
#include "zmcover/random.hpp"

namespace zmcover {

namespace {

constexpr std::array<std::pair<Check, std::string_view>, 7> kCheckNames{{
    {Check::kCompare, "compare"},
    {Check::kCongLifts, "conglifts"},
    {Check::kIsometry, "isometry"},
    {Check::kTreeAvg, "treeavg"},
    {Check::kL2, "l2"},
    {Check::kGirthGrowth, "girth_growth"},
    {Check::kNeConstant, "ne_constant"},
}};

constexpr std::array<std::pair<Fault, std::string_view>, 8> kFaultNames{{
    {Fault::kNone, "none"},
    {Fault::kDqPlusOne, "dq_plus_one"},
    {Fault::kLiftShift, "lift_shift"},
    {Fault::kEmbedFlip, "embed_flip"},
    {Fault::kL2Shift, "l2_shift"},
    {Fault::kTreeAvgSkew, "treeavg_skew"},
    {Fault::kGirthFlat, "girth_flat"},
    {Fault::kNeSkew, "ne_skew"},
}};

// Exact tree averages over all pairs are computed while V^2 * tau stays below
// this; otherwise a seeded sample of pairs is used.
constexpr double kTreeAvgAllPairsBudget = 1e8;
constexpr std::size_t kTreeAvgSources = 20;
constexpr std::size_t kTreeAvgTargets = 100;
// psi images are materialized only while V * tau * r stays below this.
constexpr double kPsiBudget = 4e6;

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t from = 0;
  while (true) {
    const std::size_t at = s.find(sep, from);
    parts.push_back(s.substr(from, at - from));
    if (at == std::string_view::npos) break;
    from = at + 1;
  }
  return parts;
}

std::uint32_t parse_u32(std::string_view text, std::string_view what) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

// Collects results of one source (or one trial block) for ordered merging.
struct Partial {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<nlohmann::ordered_json> details;

  void flag(nlohmann::ordered_json detail) {
    ++violations;
    if (details.size() < kMaxReportedViolations) details.push_back(std::move(detail));
  }
};

void merge_into(CheckRecord& record, const std::vector<Partial>& parts) {
  for (const Partial& p : parts) {
    record.checked += p.checked;
    record.violations += p.violations;
    for (const auto& d : p.details) {
      if (record.details.size() < kMaxReportedViolations) record.details.push_back(d);
    }
  }
}

nlohmann::ordered_json pair_detail(VertexId x, VertexId y, Hops d, const std::string& expected,
                                   const std::string& got) {
  nlohmann::ordered_json j;
  j["x"] = x;
  j["y"] = y;
  j["d"] = d;
  j["expected"] = expected;
  j["got"] = got;
  return j;
}

CheckRecord check_compare(const Subject& s, const SuiteConfig& cfg, std::uint64_t seed,
                          unsigned threads) {
  CheckRecord r;
  const PairSource pairs{PairSource::Kind::kAuto, cfg.samples, seed};
  const CompareReport rep =
      verify_compare(*s.cover, pairs, threads, cfg.fault == Fault::kDqPlusOne ? 1 : 0);
  r.checked = rep.checked;
  r.violations = rep.violations();
  for (const PairViolation& v : rep.first) {
    nlohmann::ordered_json j;
    j["x"] = v.x;
    j["y"] = v.y;
    j["d"] = v.d;
    j["dq"] = v.dq;
    j["kind"] = v.kind;
    r.details.push_back(std::move(j));
  }
  std::ostringstream note;
  note << "base girth " << (rep.base_girth == DistanceTable::kInfinite ? std::string("inf")
                                                                      : std::to_string(rep.base_girth));
  note << "; iff " << rep.iff_violations << ", equality " << rep.equality_violations
       << ", upper bound " << rep.upper_bound_violations;
  r.note = note.str();
  return r;
}

Path random_walk(const MultiGraph& g, VertexId start, std::size_t length, SeededRng& rng) {
  Path p{start, {}};
  VertexId v = start;
  for (std::size_t i = 0; i < length; ++i) {
    const auto inc = g.incident(v);
    const Incidence& step = inc[rng.below(inc.size())];
    p.steps.push_back({step.edge, step.dir});
    v = step.neighbor;
  }
  return p;
}

// Random closed walk at v: a short random walk to a random edge, across it, then back
// without it, so the walk closes a cycle through that edge.
std::vector<PathStep> closed_walk(const MultiGraph& g, VertexId v, SeededRng& rng) {
  Path out = random_walk(g, v, rng.below(4), rng);
  const EdgeId e = static_cast<EdgeId>(rng.below(g.edge_count()));
  const Direction dir = rng.below(2) == 0 ? Direction::kForward : Direction::kBackward;
  const VertexId from = dir == Direction::kForward ? g.edge(e).tail : g.edge(e).head;
  const Path to = bfs_path(g, path_end(g, out), from);
  out.steps.insert(out.steps.end(), to.steps.begin(), to.steps.end());
  out.steps.push_back({e, dir});
  const Path back = bfs_path(g.without_edge(e), path_end(g, out), v);
  for (PathStep step : back.steps) {
    if (step.edge >= e) ++step.edge;
    out.steps.push_back(step);
  }
  return out.steps;
}

VertexId vertex_at(const MultiGraph& g, const Path& p, std::size_t position) {
  VertexId v = p.start;
  for (std::size_t i = 0; i < position; ++i) v = *g.traverse(v, p.steps[i].edge, p.steps[i].dir);
  return v;
}

Path spliced(const Path& p, std::size_t position, const std::vector<PathStep>& insert) {
  Path out{p.start, {}};
  out.steps.reserve(p.steps.size() + insert.size());
  out.steps.insert(out.steps.end(), p.steps.begin(), p.steps.begin() + static_cast<std::ptrdiff_t>(position));
  out.steps.insert(out.steps.end(), insert.begin(), insert.end());
  out.steps.insert(out.steps.end(), p.steps.begin() + static_cast<std::ptrdiff_t>(position), p.steps.end());
  return out;
}

CheckRecord check_conglifts(const Subject& s, const SuiteConfig& cfg, std::uint64_t seed) {
  CheckRecord r;
  const CoverGraph& c = *s.cover;
  const MultiGraph& g = c.base();
  const std::uint32_t m = c.modulus();
  SeededRng rng(seed);
  Partial part;
  std::uint64_t congruent = 0;
  std::uint64_t distinct = 0;
  std::uint64_t noncongruent = 0;
  const std::uint64_t max_attempts = 40 * kCongLiftTarget;
  static constexpr std::array<const char*, 4> kKinds{"loop_once", "backtrack", "m_fold_loop",
                                                     "swapped_loops"};

  for (std::uint64_t attempt = 0;
       attempt < max_attempts && (congruent < kCongLiftTarget || noncongruent < kCongLiftTarget);
       ++attempt) {
    const Path base = random_walk(g, static_cast<VertexId>(rng.below(g.vertex_count())),
                                  rng.below(12), rng);
    const std::size_t position = rng.below(base.steps.size() + 1);
    const VertexId v = vertex_at(g, base, position);
    const std::size_t kind = attempt % 2 == 0 ? 0 : 1 + (attempt / 2) % 3;
    Path p1 = base;
    Path p2;
    if (kind == 0) {
      p2 = spliced(base, position, closed_walk(g, v, rng));
    } else if (kind == 1) {
      const auto inc = g.incident(v);
      const Incidence& step = inc[rng.below(inc.size())];
      p2 = spliced(base, position, {{step.edge, step.dir}, {step.edge, reversed(step.dir)}});
    } else if (kind == 2) {
      const auto loop = closed_walk(g, v, rng);
      std::vector<PathStep> repeated;
      for (std::uint32_t i = 0; i < m; ++i) repeated.insert(repeated.end(), loop.begin(), loop.end());
      p2 = spliced(base, position, repeated);
    } else {
      auto a = closed_walk(g, v, rng);
      const auto b = closed_walk(g, v, rng);
      auto ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      auto ba = b;
      ba.insert(ba.end(), a.begin(), a.end());
      p1 = spliced(base, position, ab);
      p2 = spliced(base, position, ba);
    }

    const bool is_congruent = is_m_congruent(g, p1, p2, m);
    const VertexId start = c.vertex(p1.start, rng.below(c.fiber_size()));
    VertexId end1 = lift_path(c, p1, start).end;
    const VertexId end2 = lift_path(c, p2, start).end;
    if (cfg.fault == Fault::kLiftShift) end1 = c.translate_vertex(end1, c.shift_label(0, 0, 1));
    const bool same = end1 == end2;
    ++part.checked;
    if (is_congruent) {
      ++congruent;
    } else {
      ++noncongruent;
      if (!same) ++distinct;
    }
    if (same != is_congruent) {
      nlohmann::ordered_json j;
      j["kind"] = kKinds[kind];
      j["congruent"] = is_congruent;
      j["same_endpoint"] = same;
      j["lengths"] = {p1.steps.size(), p2.steps.size()};
      part.flag(std::move(j));
    }
  }
  if (congruent < kCongLiftTarget || noncongruent < kCongLiftTarget) {
    nlohmann::ordered_json j;
    j["kind"] = "insufficient_trials";
    part.flag(std::move(j));
  }
  if (distinct == 0) {
    nlohmann::ordered_json j;
    j["kind"] = "no_separated_noncongruent_pair";
    part.flag(std::move(j));
  }
  merge_into(r, {part});
  r.note = std::to_string(congruent) + " congruent, " + std::to_string(noncongruent) +
           " non-congruent (" + std::to_string(distinct) + " with distinct lift endpoints)";
  return r;
}

CheckRecord check_isometry(const Subject& s, const SuiteConfig& cfg, std::uint64_t seed,
                           unsigned threads) {
  CheckRecord r;
  const CoverGraph& c = *s.cover;
  const CoverEmbedding embedding(c);
  const auto sources =
      select_sources(c.graph().vertex_count(), {PairSource::Kind::kAuto, cfg.samples, seed});
  std::vector<Partial> parts(sources.size());
  const std::size_t workers = std::max(1u, threads);
  std::vector<SweepWorkspace> spaces(workers);
  std::vector<SourceSweep> sweeps(workers);
  const bool flip = cfg.fault == Fault::kEmbedFlip;
  parallel_for(sources.size(), threads, [&](std::size_t i, std::size_t w) {
    const VertexId x = sources[i];
    spaces[w].run(c, x, sweeps[w]);
    const SourceSweep& sw = sweeps[w];
    const auto sx = embedding.support(x);
    const bool x_has_zero = !sx.empty() && sx.front() == 0;
    for (VertexId y = 0; y < sw.d.size(); ++y) {
      std::uint64_t doubled = embedding.doubled_distance(x, y);
      if (flip) {
        const auto sy = embedding.support(y);
        const bool y_has_zero = !sy.empty() && sy.front() == 0;
        doubled = x_has_zero == y_has_zero ? doubled + 1 : doubled - 1;
      }
      ++parts[i].checked;
      if (doubled != 2ull * sw.dq[y]) {
        parts[i].flag(pair_detail(x, y, sw.d[y], std::to_string(sw.dq[y]),
                                  to_fraction_string(Rational(doubled, 2))));
      }
    }
  });
  merge_into(r, parts);
  r.note = "l1 distance of production images against edge-sum d_Q";
  return r;
}

CheckRecord check_l2(const Subject& s, const SuiteConfig& cfg, std::uint64_t seed, unsigned threads) {
  CheckRecord r;
  const CoverGraph& c = *s.cover;
  const CoverEmbedding embedding(c);
  const auto sources =
      select_sources(c.graph().vertex_count(), {PairSource::Kind::kAuto, cfg.samples, seed});
  const std::size_t n = c.graph().vertex_count();
  // Images are cached for every vertex on covers small enough to visit all pairs.
  std::vector<BinaryVector> images(n <= kAllPairsVertexLimit ? n : 0);
  parallel_for(images.size(), threads, [&](std::size_t x, std::size_t) {
    images[x] = l1_to_l2(embedding.point(static_cast<VertexId>(x)));
  });
  const auto image = [&](VertexId x) {
    return images.empty() ? l1_to_l2(embedding.point(x)) : images[x];
  };
  std::vector<Partial> parts(sources.size());
  const std::size_t workers = std::max(1u, threads);
  std::vector<SweepWorkspace> spaces(workers);
  std::vector<SourceSweep> sweeps(workers);
  parallel_for(sources.size(), threads, [&](std::size_t i, std::size_t w) {
    const VertexId x = sources[i];
    spaces[w].run(c, x, sweeps[w]);
    const SourceSweep& sw = sweeps[w];
    BinaryVector bx = image(x);
    if (cfg.fault == Fault::kL2Shift) bx.ones.push_back(embedding.layout()->dimension);
    for (VertexId y = 0; y < sw.d.size(); ++y) {
      const std::uint64_t sq =
          images.empty() ? squared_l2_distance(bx, image(y)) : squared_l2_distance(bx, images[y]);
      ++parts[i].checked;
      if (sq != 2ull * sw.dq[y]) {
        parts[i].flag(pair_detail(x, y, sw.d[y], std::to_string(2ull * sw.dq[y]), std::to_string(sq)));
      }
    }
  });
  merge_into(r, parts);
  r.note = "squared l2 distance of binary images against 2 d_Q";
  return r;
}

CheckRecord check_treeavg(const Subject& s, const SuiteConfig& cfg, std::uint64_t seed,
                          unsigned threads) {
  CheckRecord r;
  const CoverGraph& c = *s.cover;
  const TreeCounts counts = tree_counts(c.base(), threads);
  if (!counts.constant_over_all_edges()) {
    r.status = "skipped";
    r.note = "N_e is not constant over the edges; the tree average is not d_Q";
    return r;
  }
  if (counts.total > cfg.tree_cap) {
    r.status = "skipped";
    r.note = "tau = " + counts.total.str() + " exceeds the tree cap";
    return r;
  }
  const TreeAverager averager(c, {TreeSourceSpec::Kind::kEnumerate, cfg.tree_cap});
  const BigInt normalizer = averager.normalizer() + (cfg.fault == Fault::kTreeAvgSkew ? 1 : 0);
  const std::size_t n = c.graph().vertex_count();
  const double tau = static_cast<double>(counts.total);
  const bool all_pairs = static_cast<double>(n) * static_cast<double>(n) * tau <= kTreeAvgAllPairsBudget;

  std::vector<VertexId> sources;
  std::vector<std::vector<VertexId>> targets;
  SeededRng rng(seed);
  if (all_pairs) {
    sources = select_sources(n, {PairSource::Kind::kAllPairs, 0, seed});
  } else {
    sources = select_sources(n, {PairSource::Kind::kSampled, kTreeAvgSources, seed});
  }
  targets.resize(sources.size());
  for (auto& t : targets) {
    if (all_pairs) {
      t.resize(n);
      for (VertexId y = 0; y < n; ++y) t[y] = y;
    } else {
      for (std::size_t j = 0; j < kTreeAvgTargets; ++j) t.push_back(static_cast<VertexId>(rng.below(n)));
    }
  }

  std::unique_ptr<PsiEmbedding> psi;
  std::vector<HalfIntVector> psi_points;
  const double psi_cost = static_cast<double>(n) * tau * static_cast<double>(c.rank());
  if (psi_cost <= kPsiBudget) {
    psi = std::make_unique<PsiEmbedding>(c, cfg.tree_cap);
    psi_points.resize(n);
    parallel_for(n, threads, [&](std::size_t x, std::size_t) {
      psi_points[x] = psi->point(static_cast<VertexId>(x));
    });
  }

  std::vector<Partial> parts(sources.size());
  const std::size_t workers = std::max(1u, threads);
  std::vector<SweepWorkspace> spaces(workers);
  std::vector<SourceSweep> sweeps(workers);
  parallel_for(sources.size(), threads, [&](std::size_t i, std::size_t w) {
    const VertexId x = sources[i];
    spaces[w].run(c, x, sweeps[w]);
    const SourceSweep& sw = sweeps[w];
    for (VertexId y : targets[i]) {
      const Rational expected(sw.dq[y]);
      const Rational average(BigInt(averager.tree_sum(x, y)), normalizer);
      ++parts[i].checked;
      if (average != expected) {
        parts[i].flag(pair_detail(x, y, sw.d[y], to_fraction_string(expected), to_fraction_string(average)));
      }
      if (psi) {
        const Rational dist = l1_distance(psi_points[x], psi_points[y]);
        ++parts[i].checked;
        if (dist != expected) {
          auto detail = pair_detail(x, y, sw.d[y], to_fraction_string(expected), to_fraction_string(dist));
          detail["via"] = "psi";
          parts[i].flag(std::move(detail));
        }
      }
    }
  });
  merge_into(r, parts);
  r.note = "tau = " + counts.total.str() + ", N = " + averager.normalizer().str() +
           (all_pairs ? "; all pairs" : "; sampled pairs") +
           (psi ? "; psi images compared" : "; psi images skipped (too large)");
  return r;
}

CheckRecord check_girth_growth(const Subject& s, const SuiteConfig& cfg) {
  CheckRecord r;
  const auto base = girth(s.cover->base());
  const std::optional<Hops> cover = s.cover_girth_hint ? s.cover_girth_hint : girth(s.cover->graph());
  const Hops inf = DistanceTable::kInfinite;
  const Hops b = base.value_or(inf);
  Hops g = cover.value_or(inf);
  if (cfg.fault == Fault::kGirthFlat) g = b;
  r.checked = 1;
  const auto show = [&](Hops h) { return h == inf ? std::string("inf") : std::to_string(h); };
  if (!(g > b)) {
    r.violations = 1;
    nlohmann::ordered_json j;
    j["base_girth"] = show(b);
    j["cover_girth"] = show(g);
    r.details.push_back(std::move(j));
  }
  r.note = "girth " + show(b) + " -> " + show(g);
  return r;
}

CheckRecord check_ne_constant(const Subject& s, const SuiteConfig& cfg, unsigned threads) {
  CheckRecord r;
  const MultiGraph& g = s.cover->base();
  TreeCounts counts = tree_counts(g, threads);
  if (cfg.fault == Fault::kNeSkew && !counts.avoiding.empty()) counts.avoiding.back() += 1;
  Partial part;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    ++part.checked;
    if (counts.avoiding[e] != counts.avoiding.front()) {
      nlohmann::ordered_json j;
      j["edge"] = e;
      j["n_e"] = counts.avoiding[e].str();
      j["n_0"] = counts.avoiding.front().str();
      part.flag(std::move(j));
    }
  }
  std::string oracle = "enumeration cross-check skipped (tau above the tree cap)";
  if (counts.total <= cfg.tree_cap) {
    std::vector<std::uint64_t> avoiding(g.edge_count(), 0);
    std::uint64_t total = 0;
    for_each_spanning_tree(g, cfg.tree_cap, [&](const SpanningTree& t) {
      ++total;
      for (EdgeId e : t.cotree()) ++avoiding[e];
    });
    ++part.checked;
    if (BigInt(total) != counts.total) {
      nlohmann::ordered_json j;
      j["kind"] = "tau_mismatch";
      j["matrix_tree"] = counts.total.str();
      j["enumerated"] = total;
      part.flag(std::move(j));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      ++part.checked;
      if (BigInt(avoiding[e]) != counts.avoiding[e]) {
        nlohmann::ordered_json j;
        j["kind"] = "n_e_mismatch";
        j["edge"] = e;
        j["matrix_tree"] = counts.avoiding[e].str();
        j["enumerated"] = avoiding[e];
        part.flag(std::move(j));
      }
    }
    oracle = "matches enumeration of " + std::to_string(total) + " trees";
  }
  merge_into(r, {part});
  r.note = "tau = " + counts.total.str() + "; " + oracle;
  return r;
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t instance, Check check) {
  SeededRng rng(seed + 0x9E3779B97F4A7C15ull * (instance * 16 + static_cast<std::size_t>(check) + 1));
  return rng.next();
}

}  // namespace

std::string_view check_name(Check c) {
  for (const auto& [check, name] : kCheckNames) {
    if (check == c) return name;
  }
  return "unknown";
}

std::optional<Check> parse_check(std::string_view name) {
  for (const auto& [check, n] : kCheckNames) {
    if (n == name) return check;
  }
  return std::nullopt;
}

std::vector<Check> all_checks() {
  std::vector<Check> out;
  for (const auto& entry : kCheckNames) out.push_back(entry.first);
  return out;
}

std::string_view fault_name(Fault f) {
  for (const auto& [fault, name] : kFaultNames) {
    if (fault == f) return name;
  }
  return "unknown";
}

std::optional<Fault> parse_fault(std::string_view name) {
  for (const auto& [fault, n] : kFaultNames) {
    if (n == name) return fault;
  }
  return std::nullopt;
}

MultiGraph named_graph(std::string_view name) {
  if (name.ends_with(".json")) return load_graph_file(std::string(name));
  const auto parts = split(name, ':');
  const std::string_view head = parts.front();
  const auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) throw ParseError("'" + std::string(name) + "' takes " + std::to_string(k) + " argument(s)");
  };
  if (head == "doubled_edge") return arity(0), doubled_edge();
  if (head == "k4") return arity(0), complete_graph(4);
  if (head == "c5") return arity(0), cycle_graph(5);
  if (head == "petersen") return arity(0), petersen_graph();
  if (head == "cycle") return arity(1), cycle_graph(parse_u32(parts[1], "cycle length"));
  if (head == "complete") return arity(1), complete_graph(parse_u32(parts[1], "vertex count"));
  if (head == "rose") return arity(1), rose_graph(parse_u32(parts[1], "loop count"));
  if (head == "cayley") {
    arity(2);
    return cayley_zm_power(parse_u32(parts[1], "rank"), parse_u32(parts[2], "modulus"));
  }
  throw ParseError("unknown graph '" + std::string(name) + "'");
}

std::vector<Subject> resolve_input(std::string_view name, std::uint32_t m, std::uint64_t size_cap) {
  const auto parts = split(name, ':');
  if (parts.front() != "tower") {
    auto cover = std::make_shared<const CoverGraph>(
        build_zm_cover(std::make_shared<const MultiGraph>(named_graph(name)), m, std::nullopt, size_cap));
    return {{std::string(name), std::move(cover), std::nullopt}};
  }
  if (parts.size() != 4) throw ParseError("tower input is tower:rank:m:levels");
  const std::uint32_t rank = parse_u32(parts[1], "rank");
  const std::uint32_t tm = parse_u32(parts[2], "modulus");
  const Tower tower = build_tower(rank, tm, parse_u32(parts[3], "levels"), size_cap);
  std::vector<Subject> out;
  if (tm >= 3 && !tower.levels.empty()) {
    auto cover = std::make_shared<const CoverGraph>(build_zm_cover(rose_graph(rank), tm, std::nullopt, size_cap));
    out.push_back({std::string(name) + "/level1", std::move(cover), tower.levels.front().girth});
  }
  for (const TowerLevel& level : tower.levels) {
    if (!level.cover) continue;
    out.push_back({std::string(name) + "/level" + std::to_string(level.level), level.cover, level.girth});
  }
  return out;
}

CheckRecord run_check(Check check, const Subject& subject, const SuiteConfig& cfg,
                      std::uint64_t seed, unsigned threads) {
  CheckRecord r;
  try {
    switch (check) {
      case Check::kCompare: r = check_compare(subject, cfg, seed, threads); break;
      case Check::kCongLifts: r = check_conglifts(subject, cfg, seed); break;
      case Check::kIsometry: r = check_isometry(subject, cfg, seed, threads); break;
      case Check::kTreeAvg: r = check_treeavg(subject, cfg, seed, threads); break;
      case Check::kL2: r = check_l2(subject, cfg, seed, threads); break;
      case Check::kGirthGrowth: r = check_girth_growth(subject, cfg); break;
      case Check::kNeConstant: r = check_ne_constant(subject, cfg, threads); break;
    }
    if (r.status.empty()) r.status = r.violations == 0 ? "pass" : "fail";
  } catch (const Error& e) {
    r = CheckRecord{};
    r.status = "error";
    r.note = e.what();
  }
  r.check = std::string(check_name(check));
  r.instance = subject.name;
  return r;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
  VerificationReport report;
  nlohmann::ordered_json config;
  config["graphs"] = cfg.graphs;
  config["m"] = cfg.m;
  config["seed"] = cfg.seed;
  config["samples"] = cfg.samples;
  config["size_cap"] = cfg.size_cap;
  config["tree_cap"] = cfg.tree_cap;
  config["checks"] = nlohmann::ordered_json::array();
  for (Check c : cfg.checks) config["checks"].push_back(check_name(c));
  config["fault"] = fault_name(cfg.fault);
  report.config = std::move(config);
  if (cfg.checks.empty()) return report;

  std::vector<Subject> subjects;
  for (const std::string& name : cfg.graphs) {
    try {
      for (Subject& s : resolve_input(name, cfg.m, cfg.size_cap)) subjects.push_back(std::move(s));
    } catch (const NotTwoEdgeConnected& e) {
      report.records.push_back({"resolve", name, "error", 0, 0, nlohmann::ordered_json::array(), e.what()});
    } catch (const NotConnected& e) {
      report.records.push_back({"resolve", name, "error", 0, 0, nlohmann::ordered_json::array(), e.what()});
    } catch (const RangeError& e) {
      report.records.push_back({"resolve", name, "error", 0, 0, nlohmann::ordered_json::array(), e.what()});
    }
  }

  const std::size_t tasks = subjects.size() * cfg.checks.size();
  const unsigned inner = std::max(1u, static_cast<unsigned>(cfg.threads / std::max<std::size_t>(tasks, 1)));
  std::vector<CheckRecord> records(tasks);
  parallel_for(tasks, cfg.threads, [&](std::size_t t, std::size_t) {
    const std::size_t i = t / cfg.checks.size();
    const Check check = cfg.checks[t % cfg.checks.size()];
    records[t] = run_check(check, subjects[i], cfg, derive_seed(cfg.seed, i, check), inner);
  });
  for (CheckRecord& r : records) report.records.push_back(std::move(r));
  for (const CheckRecord& r : report.records) {
    if (r.status == "fail" || r.status == "error") report.pass = false;
  }
  return report;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["config"] = report.config;
  doc["records"] = nlohmann::ordered_json::array();
  for (const CheckRecord& r : report.records) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["instance"] = r.instance;
    j["status"] = r.status;
    j["checked"] = r.checked;
    j["violations"] = r.violations;
    j["details"] = r.details;
    j["note"] = r.note;
    doc["records"].push_back(std::move(j));
  }
  doc["overall"] = report.pass ? "pass" : "fail";
  return doc;
}

std::string report_summary(const VerificationReport& report) {
  std::ostringstream out;
  for (const CheckRecord& r : report.records) {
    std::string status = r.status;
    std::transform(status.begin(), status.end(), status.begin(), [](unsigned char ch) {
      return static_cast<char>(std::toupper(ch));
    });
    out << status << ' ' << r.check << ' ' << r.instance << " checked=" << r.checked
        << " violations=" << r.violations;
    if (!r.note.empty()) out << " (" << r.note << ')';
    out << '\n';
  }
  out << "overall: " << (report.pass ? "pass" : "fail") << '\n';
  return out.str();
}

Fingerprint fingerprint(const MultiGraph& g, unsigned threads) {
  Fingerprint f;
  f.vertices = g.vertex_count();
  f.edges = g.edge_count();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    f.degrees.push_back(static_cast<std::uint32_t>(g.incident(v).size()));
  }
  std::sort(f.degrees.begin(), f.degrees.end());
  f.girth = girth(g);
  const std::size_t sources =
      g.vertex_count() <= kAllPairsVertexLimit ? g.vertex_count() : std::min<std::size_t>(64, g.vertex_count());
  f.histograms.resize(sources);
  const std::size_t workers = std::max(1u, threads);
  std::vector<std::vector<Hops>> dist(workers);
  std::vector<std::vector<VertexId>> queue(workers);
  parallel_for(sources, threads, [&](std::size_t s, std::size_t w) {
    bfs_distances_into(g, static_cast<VertexId>(s), dist[w], queue[w]);
    auto& h = f.histograms[s];
    std::uint64_t unreachable = 0;
    for (Hops d : dist[w]) {
      if (d == DistanceTable::kInfinite) {
        ++unreachable;
        continue;
      }
      if (h.size() <= d) h.resize(d + 1, 0);
      ++h[d];
    }
    h.push_back(unreachable);
  });
  std::sort(f.histograms.begin(), f.histograms.end());
  return f;
}

}  // namespace zmcover
