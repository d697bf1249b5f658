#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flagsphere/canonical.hpp"
#include "flagsphere/complex.hpp"
#include "flagsphere/localpic.hpp"

namespace flagsphere {

using Rng = std::mt19937_64;

struct SearchConfig {
  std::uint64_t iterations = 1'000'000;
  int subdivisions = 3;  // K
  int window_lo = 18;
  int window_hi = 30;
  std::int64_t gamma2_bias_threshold = 4;
  std::uint64_t picture_budget = kDefaultPictureBudget;
  std::uint64_t seed = 0;
  std::string catalog_path;  // empty: in-memory only
  std::string stats_path;    // empty: no CSV
  bool check_t10 = true;
  bool check_t12 = true;
  int workers = 1;
};

/// Throws InvalidInput unless lo >= 8, hi <= capacity, lo <= hi and K >= 1.
void validate_config(const SearchConfig& cfg);

/// Vertex count and gamma2 of the previous simplified complex, which steer
/// the number and choice of collapses.
struct WalkState {
  int vertices = 0;
  std::int64_t gamma2 = 0;
};

/// K random subdivisions followed by up to K' collapses of non-square edges.
Triangulation walk_step(const Triangulation& t, const SearchConfig& cfg, const WalkState& prev, Rng& rng);

/// Collapses random non-square edges until every edge lies in a square.
Triangulation simplify_to_squares(const Triangulation& t, Rng& rng);

enum class Verdict { Certified, NotFound, Timeout, Skipped };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& token);

struct CatalogRecord {
  std::string key;  // hex canonical form
  int n_vertices = 0;
  int n_edges = 0;
  std::int64_t gamma2 = 0;
  Verdict t10 = Verdict::Skipped;
  Verdict t12 = Verdict::Skipped;
  std::optional<Edge> t10_edge;  // certifying edge, canonical labels
  std::optional<Edge> t12_edge;
  std::uint64_t first_seen = 0;
  std::uint64_t hits = 0;

  [[nodiscard]] bool neither() const {
    return gamma2 > 0 && t10 != Verdict::Certified && t12 != Verdict::Certified;
  }
};

std::string format_record(const CatalogRecord& r);
/// Parses one record line and checks it against its canonical form.
CatalogRecord parse_record(const std::string& line);

inline constexpr const char* kCatalogHeader = "flagsphere-catalog v1";
inline constexpr const char* kStatsHeader = "flagsphere-stats v1";

/// Append-only record log with an in-memory index. New records are appended
/// immediately; hit counts are written by flush(), which rewrites the file
/// through a temporary and a rename.
class Catalog {
 public:
  Catalog() = default;
  /// Opens or creates the file at path; an empty path keeps everything in memory.
  static Catalog open(const std::string& path);

  [[nodiscard]] const CatalogRecord* find(const std::string& key) const;
  void insert(const CatalogRecord& r);
  void touch(const std::string& key);
  void flush();

  [[nodiscard]] const std::map<std::string, CatalogRecord>& records() const { return index_; }
  [[nodiscard]] std::size_t size() const { return index_.size(); }
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::string, CatalogRecord> index_;
  bool dirty_ = false;
};

/// Prepared T10 / T12 pictures for certification.
struct CertifierTargets {
  std::optional<PreparedTarget> t10;
  std::optional<PreparedTarget> t12;
};
CertifierTargets make_certifier_targets(const SearchConfig& cfg);

struct RecordOutcome {
  CatalogRecord record;
  bool is_new = false;
};

/// Canonicalises, certifies new gamma2 > 0 complexes against T10 then T12
/// (T12 only when T10 fails), and upserts. Throws AssertionFailed on gamma2 < 0.
RecordOutcome check_and_record(const Triangulation& t, Catalog& catalog, const SearchConfig& cfg,
                               const CertifierTargets& targets, std::uint64_t iteration);

struct RunSummary {
  std::uint64_t iterations = 0;
  std::uint64_t new_records = 0;
  std::map<int, std::uint64_t> distinct_by_vertices;  // this run's new records
  std::map<int, std::uint64_t> encounters_by_vertices;
  std::vector<std::string> neither;  // keys
  std::int64_t max_gamma2 = 0;
  std::vector<std::string> twelve_vertex;  // new 12-vertex records, for comparison with T12
};

/// Runs the walk from T10. Neither records are also written to warn, if given.
RunSummary run(const SearchConfig& cfg, Catalog& catalog, std::ostream* warn = nullptr);

}  // namespace flagsphere
