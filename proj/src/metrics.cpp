#include "zmcover/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "zmcover/errors.hpp"
#include "zmcover/parallel.hpp"
#include "zmcover/random.hpp"

namespace zmcover {

std::uint32_t cyclic_distance(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
  const std::uint32_t forward = (a % m + m - b % m) % m;
  return std::min(forward, m - forward);
}

std::uint64_t d_t_distance(const CloudLabel& a, const CloudLabel& b, std::uint32_t m) {
  if (a.coords.size() != b.coords.size()) throw LengthMismatch("cloud labels differ in length");
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) sum += cyclic_distance(a.coords[i], b.coords[i], m);
  return sum;
}

std::uint64_t d_q(const CoverGraph& c, VertexId x, VertexId y) {
  return phi_profile(c, x, y).folded_weight();
}

void SweepWorkspace::run(const CoverGraph& c, VertexId source, SourceSweep& out) {
  const MultiGraph& g = c.graph();
  if (source >= g.vertex_count()) throw IndexError("sweep source out of range");
  const std::size_t n = g.vertex_count();
  const std::size_t w = c.base().edge_count();
  const std::uint32_t m = c.modulus();
  const std::uint64_t fiber = c.fiber_size();

  out.source = source;
  out.d.assign(n, DistanceTable::kInfinite);
  out.dq.assign(n, 0);
  profiles_.resize(n * w);
  std::fill_n(profiles_.data() + source * w, w, Residue{0});
  queue_.clear();
  queue_.reserve(n);
  queue_.push_back(source);
  out.d[source] = 0;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const VertexId u = queue_[head];
    const Residue* from = profiles_.data() + u * w;
    for (const Incidence& inc : g.incident(u)) {
      const VertexId v = inc.neighbor;
      if (out.d[v] != DistanceTable::kInfinite) continue;
      out.d[v] = out.d[u] + 1;
      queue_.push_back(v);
      Residue* row = profiles_.data() + v * w;
      std::copy_n(from, w, row);
      const std::size_t e = inc.edge / fiber;
      row[e] = static_cast<Residue>(inc.dir == Direction::kForward ? (row[e] + 1) % m
                                                                   : (row[e] + m - 1) % m);
      std::uint32_t total = 0;
      for (std::size_t i = 0; i < w; ++i) total += std::min<std::uint32_t>(row[i], m - row[i]);
      out.dq[v] = total;
    }
  }
}

SourceSweep sweep_from(const CoverGraph& c, VertexId source) {
  SweepWorkspace ws;
  SourceSweep out;
  ws.run(c, source, out);
  return out;
}

std::vector<VertexId> select_sources(std::size_t vertex_count, const PairSource& pairs) {
  const bool all = pairs.kind == PairSource::Kind::kAllPairs ||
                   (pairs.kind == PairSource::Kind::kAuto && vertex_count <= kAllPairsVertexLimit) ||
                   pairs.samples >= vertex_count;
  std::vector<VertexId> ids(vertex_count);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  if (all) return ids;
  // Partial Fisher-Yates: the first `samples` slots become a uniform sample.
  SeededRng rng(pairs.seed);
  for (std::size_t i = 0; i < pairs.samples; ++i) {
    const std::size_t j = i + rng.below(vertex_count - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(pairs.samples);
  std::sort(ids.begin(), ids.end());
  return ids;
}

TreeAverager::TreeAverager(const CoverGraph& c, const TreeSourceSpec& spec)
    : m_(c.modulus()), potential_(c) {
  const TreeCounts counts = tree_counts(c.base());
  if (!counts.constant_over_all_edges()) {
    throw NonConstantNe("N_e differs between edges; the tree average is not d_Q");
  }
  normalizer_ = counts.avoiding.front();
  total_ = counts.total;
  const auto keep = [&](const SpanningTree& t) {
    cotrees_.emplace_back(t.cotree().begin(), t.cotree().end());
  };
  if (spec.kind == TreeSourceSpec::Kind::kEnumerate) {
    for_each_spanning_tree(c.base(), spec.cap, keep);
  } else {
    sampled_ = true;
    SeededRng rng(spec.seed);
    for (std::size_t i = 0; i < spec.samples; ++i) keep(sample_uniform_tree(c.base(), rng.next()));
  }
}

std::uint64_t TreeAverager::tree_sum(VertexId x, VertexId y) const {
  const auto px = potential_.at(x);
  const auto py = potential_.at(y);
  std::vector<std::uint32_t> folded(px.size());
  for (std::size_t e = 0; e < px.size(); ++e) folded[e] = cyclic_distance(py[e], px[e], m_);
  std::uint64_t sum = 0;
  for (const auto& cotree : cotrees_) {
    for (EdgeId e : cotree) sum += folded[e];
  }
  return sum;
}

Rational TreeAverager::value(VertexId x, VertexId y) const {
  const BigInt sum = tree_sum(x, y);
  if (!sampled_) return Rational(sum, normalizer_);
  if (cotrees_.empty()) return 0;
  return Rational(sum * total_, normalizer_ * cotrees_.size());
}

Rational d_q_tree_average(const CoverGraph& c, VertexId x, VertexId y, const TreeSourceSpec& spec) {
  if (x >= c.graph().vertex_count() || y >= c.graph().vertex_count()) {
    throw IndexError("cover vertex out of range");
  }
  return TreeAverager(c, spec).value(x, y);
}

CompareReport verify_compare(const CoverGraph& c, const PairSource& pairs, unsigned threads,
                             std::int64_t dq_bias) {
  const auto g = girth(c.base());
  const std::int64_t base_girth = g ? static_cast<std::int64_t>(*g) : INT64_MAX;
  const auto sources = select_sources(c.graph().vertex_count(), pairs);
  const std::size_t workers = std::max(1u, threads);
  std::vector<SweepWorkspace> spaces(workers);
  std::vector<SourceSweep> sweeps(workers);
  std::vector<CompareReport> partial(sources.size());

  parallel_for(sources.size(), threads, [&](std::size_t i, std::size_t worker) {
    SourceSweep& s = sweeps[worker];
    spaces[worker].run(c, sources[i], s);
    CompareReport& r = partial[i];
    for (VertexId y = 0; y < s.d.size(); ++y) {
      const auto d = static_cast<std::int64_t>(s.d[y]);
      const std::int64_t dq = static_cast<std::int64_t>(s.dq[y]) + dq_bias;
      ++r.checked;
      const auto note = [&](const char* kind) {
        if (r.first.size() < kMaxReportedViolations) {
          r.first.push_back({sources[i], y, s.d[y], static_cast<std::uint64_t>(std::max<std::int64_t>(dq, 0)), kind});
        }
      };
      if (dq > d) {
        ++r.upper_bound_violations;
        note("dq_exceeds_d");
      }
      if ((dq < base_girth) != (d < base_girth)) {
        ++r.iff_violations;
        note("girth_iff");
      }
      if (d < base_girth && dq != d) {
        ++r.equality_violations;
        note("below_girth_inequality");
      }
    }
  });

  CompareReport total;
  total.base_girth = g ? *g : DistanceTable::kInfinite;
  for (const auto& p : partial) {
    total.checked += p.checked;
    total.iff_violations += p.iff_violations;
    total.equality_violations += p.equality_violations;
    total.upper_bound_violations += p.upper_bound_violations;
    for (const auto& v : p.first) {
      if (total.first.size() < kMaxReportedViolations) total.first.push_back(v);
    }
  }
  return total;
}

namespace {

struct RowAccumulator {
  std::uint64_t pairs = 0;
  std::int64_t min_val = INT64_MAX;
  std::int64_t max_val = INT64_MIN;

  void add(std::int64_t v) {
    ++pairs;
    min_val = std::min(min_val, v);
    max_val = std::max(max_val, v);
  }
  void merge(const RowAccumulator& o) {
    pairs += o.pairs;
    min_val = std::min(min_val, o.min_val);
    max_val = std::max(max_val, o.max_val);
  }
};

}  // namespace

CompressionProfile compression_profile(std::size_t vertex_count, std::span<const VertexId> sources,
                                       ProfileMode mode, const SweepFunction& sweep,
                                       unsigned threads) {
  const std::size_t workers = std::max(1u, threads);
  std::vector<std::vector<Hops>> d(workers);
  std::vector<std::vector<std::int64_t>> values(workers);
  std::vector<std::vector<RowAccumulator>> partial(sources.size());

  parallel_for(sources.size(), threads, [&](std::size_t i, std::size_t worker) {
    auto& dist = d[worker];
    auto& value = values[worker];
    dist.assign(vertex_count, DistanceTable::kInfinite);
    value.assign(vertex_count, 0);
    sweep(sources[i], worker, dist, value);
    auto& rows = partial[i];
    for (VertexId y = 0; y < vertex_count; ++y) {
      if (y == sources[i] || dist[y] == DistanceTable::kInfinite) continue;
      if (rows.size() <= dist[y]) rows.resize(dist[y] + 1);
      rows[dist[y]].add(value[y]);
    }
  });

  std::vector<RowAccumulator> merged;
  for (const auto& rows : partial) {
    if (merged.size() < rows.size()) merged.resize(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) merged[t].merge(rows[t]);
  }
  CompressionProfile profile;
  profile.mode = mode;
  for (std::size_t t = 0; t < merged.size(); ++t) {
    if (merged[t].pairs == 0) continue;
    profile.rows.push_back({static_cast<Hops>(t), merged[t].pairs, Rational(merged[t].min_val),
                            Rational(merged[t].max_val)});
  }
  return profile;
}

std::string profile_to_csv(const CompressionProfile& profile) {
  std::ostringstream out;
  out << "t,pairs,min,max\n";
  for (const ProfileRow& row : profile.rows) {
    out << row.t << ',' << row.pairs << ',' << to_fraction_string(row.min_val) << ','
        << to_fraction_string(row.max_val) << '\n';
  }
  return out.str();
}

}  // namespace zmcover
