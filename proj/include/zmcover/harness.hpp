#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zmcover/cover.hpp"
#include "zmcover/multigraph.hpp"

namespace zmcover {

enum class Check { kCompare, kCongLifts, kIsometry, kTreeAvg, kL2, kGirthGrowth, kNeConstant };

// Deliberate corruptions used to show that each check can fail.
enum class Fault {
  kNone,
  kDqPlusOne,     // compare: every d_Q raised by one
  kLiftShift,     // conglifts: first lift endpoint moved by a deck translation
  kEmbedFlip,     // isometry: coordinate 0 of every source image flipped
  kL2Shift,       // l2: one extra unit coordinate in every source image
  kTreeAvgSkew,   // treeavg: normalizer N replaced by N + 1
  kGirthFlat,     // girth_growth: cover girth reported as the base girth
  kNeSkew,        // ne_constant: N_e of the last edge raised by one
};

std::string_view check_name(Check c);
std::optional<Check> parse_check(std::string_view name);
std::vector<Check> all_checks();
std::string_view fault_name(Fault f);
std::optional<Fault> parse_fault(std::string_view name);

inline constexpr std::size_t kCongLiftTarget = 1000;

struct SuiteConfig {
  // Named inputs: doubled_edge, k4, c5, petersen, cycle:N, complete:N,
  // cayley:n:m, rose:n, tower:rank:m:levels, or a path to a graph document.
  std::vector<std::string> graphs{"doubled_edge", "k4", "c5", "petersen"};
  std::uint32_t m = 3;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::uint64_t size_cap = kDefaultSizeCap;
  std::uint64_t tree_cap = kDefaultTreeCap;
  std::vector<Check> checks = all_checks();
  unsigned threads = 1;
  Fault fault = Fault::kNone;
};

// A cover under test together with its base.
struct Subject {
  std::string name;
  std::shared_ptr<const CoverGraph> cover;
  // Girth of the cover when known by a cheaper route (tower levels).
  std::optional<Hops> cover_girth_hint;
};

// Resolves one named input into the covers it stands for. A tower yields the
// cover of each level over the previous one, plus level 1 over the rose when
// m >= 3.
std::vector<Subject> resolve_input(std::string_view name, std::uint32_t m, std::uint64_t size_cap);

MultiGraph named_graph(std::string_view name);

struct CheckRecord {
  std::string check;
  std::string instance;
  std::string status;  // pass, fail, skipped, error
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  nlohmann::ordered_json details = nlohmann::ordered_json::array();
  std::string note;
};

struct VerificationReport {
  nlohmann::ordered_json config;
  std::vector<CheckRecord> records;
  bool pass = true;
};

CheckRecord run_check(Check check, const Subject& subject, const SuiteConfig& cfg,
                      std::uint64_t seed, unsigned threads);

// Never throws for mathematical violations; module errors become "error"
// records and fail the suite. Input resolution errors propagate.
VerificationReport run_suite(const SuiteConfig& cfg);

nlohmann::ordered_json report_to_json(const VerificationReport& report);
std::string report_summary(const VerificationReport& report);

// Isomorphism-invariant summary. Distance histograms are taken from every
// vertex up to kAllPairsVertexLimit vertices, otherwise from the 64 lowest
// vertex ids (invariant for vertex-transitive graphs).
struct Fingerprint {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::vector<std::uint32_t> degrees;
  std::optional<Hops> girth;
  std::vector<std::vector<std::uint64_t>> histograms;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const MultiGraph& g, unsigned threads = 1);

}  // namespace zmcover
