#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zmcover/cover.hpp"
#include "zmcover/numeric.hpp"
#include "zmcover/trees.hpp"

namespace zmcover {

// Covers up to this many vertices are verified over all ordered pairs.
inline constexpr std::size_t kAllPairsVertexLimit = 20'000;
inline constexpr std::size_t kDefaultSampleSources = 100;

// min((a - b) mod m, (b - a) mod m)
std::uint32_t cyclic_distance(std::uint32_t a, std::uint32_t b, std::uint32_t m);

// Word metric on Z_m^r with one generator per factor.
std::uint64_t d_t_distance(const CloudLabel& a, const CloudLabel& b, std::uint32_t m);

// Sum over base edges of min{phi, m - phi}, phi taken along a BFS path.
std::uint64_t d_q(const CoverGraph& c, VertexId x, VertexId y);

// Distances d and d_Q from one source to every cover vertex. d_Q is
// accumulated along the BFS tree of the source, independently of the
// basepoint potential.
struct SourceSweep {
  VertexId source = 0;
  std::vector<Hops> d;
  std::vector<std::uint32_t> dq;
};

class SweepWorkspace {
 public:
  void run(const CoverGraph& c, VertexId source, SourceSweep& out);

 private:
  std::vector<Residue> profiles_;
  std::vector<VertexId> queue_;
};

SourceSweep sweep_from(const CoverGraph& c, VertexId source);

// Which ordered pairs a verification visits: every pair, or every target of
// `samples` seeded BFS sources. kAuto picks all pairs up to
// kAllPairsVertexLimit vertices.
struct PairSource {
  enum class Kind { kAuto, kAllPairs, kSampled };
  Kind kind = Kind::kAuto;
  std::size_t samples = kDefaultSampleSources;
  std::uint64_t seed = 0;
};

// Sources chosen for the given vertex count, in a deterministic order.
std::vector<VertexId> select_sources(std::size_t vertex_count, const PairSource& pairs);

struct TreeSourceSpec {
  enum class Kind { kEnumerate, kSample };
  Kind kind = Kind::kEnumerate;
  std::uint64_t cap = kDefaultTreeCap;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

// (1/N) sum over spanning trees T of d_T(C^T_x, C^T_y). With enumerated trees
// the value is exact; with sampled trees it is (tau/N) times the sample mean.
class TreeAverager {
 public:
  TreeAverager(const CoverGraph& c, const TreeSourceSpec& spec);

  Rational value(VertexId x, VertexId y) const;
  // Sum over the trees in use of d_T(C^T_x, C^T_y).
  std::uint64_t tree_sum(VertexId x, VertexId y) const;

  std::size_t trees_used() const { return cotrees_.size(); }
  bool sampled() const { return sampled_; }
  const BigInt& normalizer() const { return normalizer_; }
  const BigInt& tree_total() const { return total_; }

 private:
  std::uint32_t m_;
  CoverPotential potential_;
  std::vector<std::vector<EdgeId>> cotrees_;
  BigInt normalizer_;
  BigInt total_;
  bool sampled_ = false;
};

// Throws NonConstantNe when N_e varies over edges, CapExceeded when
// enumeration is requested above the cap.
Rational d_q_tree_average(const CoverGraph& c, VertexId x, VertexId y, const TreeSourceSpec& spec);

struct PairViolation {
  VertexId x;
  VertexId y;
  Hops d;
  std::uint64_t dq;
  std::string kind;
};

struct CompareReport {
  std::uint64_t checked = 0;
  std::uint64_t iff_violations = 0;
  std::uint64_t equality_violations = 0;
  std::uint64_t upper_bound_violations = 0;
  Hops base_girth = 0;
  std::vector<PairViolation> first;

  std::uint64_t violations() const {
    return iff_violations + equality_violations + upper_bound_violations;
  }
  bool ok() const { return violations() == 0; }
};

inline constexpr std::size_t kMaxReportedViolations = 10;

// Checks d_Q <= d, d_Q < girth(base) iff d < girth(base), and d_Q = d below
// the girth. `dq_bias` is added to every d_Q (fault injection only).
CompareReport verify_compare(const CoverGraph& c, const PairSource& pairs, unsigned threads = 1,
                             std::int64_t dq_bias = 0);

enum class ProfileMode { kDqVsD, kL2VsD };

struct ProfileRow {
  Hops t;
  std::uint64_t pairs;
  Rational min_val;
  Rational max_val;
};

// Per graph distance t, extremes of the compared quantity over ordered pairs
// x != y with d(x, y) = t. In l2 mode the compared quantity is the squared
// Euclidean distance of the binary images, an exact integer.
struct CompressionProfile {
  ProfileMode mode = ProfileMode::kDqVsD;
  std::vector<ProfileRow> rows;
};

// Fills d (graph distance from source) and value (compared quantity) for
// every vertex; entries with d = infinity are ignored. `worker` is below
// max(threads, 1) and owned by the calling thread for the duration of the call.
using SweepFunction = std::function<void(VertexId source, std::size_t worker, std::vector<Hops>& d,
                                         std::vector<std::int64_t>& value)>;

CompressionProfile compression_profile(std::size_t vertex_count, std::span<const VertexId> sources,
                                       ProfileMode mode, const SweepFunction& sweep,
                                       unsigned threads = 1);

std::string profile_to_csv(const CompressionProfile& profile);

}  // namespace zmcover
