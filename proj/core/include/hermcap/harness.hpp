#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hermcap/hermitian.hpp"
#include "hermcap/search.hpp"

namespace hermcap {

/// Per-run seed: mix64(master ^ (0x9e3779b97f4a7c15 * (run_index + 1))).
/// Each stage is a bijection, so the map is injective in run_index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run_index);

/// Where each run's starting cap comes from.
struct SeedSpec {
  enum class Kind { Empty, SubOvoid, FromFile };

  Kind kind = Kind::Empty;
  std::size_t sub_ovoid_size = 0;  ///< SubOvoid: fresh random subset of the canonical ovoid per run
  std::string path;                ///< FromFile: source of `fixed`, kept for reporting
  std::vector<PointId> fixed;      ///< FromFile: same seed for every run

  static SeedSpec empty() { return {}; }
  static SeedSpec sub_ovoid(std::size_t n);
  static SeedSpec from_points(std::string path, std::vector<PointId> points);

  std::string describe() const;
};

struct RunRecord {
  std::size_t run_index = 0;
  std::uint64_t derived_seed = 0;
  Strategy strategy = Strategy::Random;
  std::size_t input_size = 0;
  std::size_t final_size = 0;
  bool is_ovoid = false;
  double wall_time_ms = 0;
};

/// Distribution of final cap sizes.
struct Histogram {
  unsigned q = 0;
  Strategy strategy = Strategy::Random;
  std::string seed_spec;
  std::size_t total_runs = 0;
  std::map<std::size_t, std::size_t> counts;  ///< final size -> runs

  double percent(std::size_t size) const;
  double mean() const;
  /// Smallest most frequent size; 0 when empty.
  std::size_t mode() const;
  double rate(std::size_t size) const { return percent(size) / 100.0; }

  static Histogram from_records(unsigned q, Strategy strategy, std::string seed_spec,
                                std::span<const RunRecord> records);
};

struct SpectrumOptions {
  std::size_t n_runs = 1;
  std::uint64_t master_seed = 0;
  unsigned jobs = 1;
  bool keep_caps = false;  ///< also return every final cap
};

struct SpectrumResult {
  Histogram histogram;
  std::vector<RunRecord> records;          ///< indexed by run_index
  std::vector<std::vector<PointId>> caps;  ///< filled when keep_caps is set
};

/// Runs n_runs independent completions on a pool of `jobs` threads. Every
/// run is determined by (master_seed, run_index), so results do not depend
/// on jobs. Throws ArgumentError for n_runs == 0 or an oversized sub-ovoid.
SpectrumResult run_spectrum(const SurfaceModel& model, const SeedSpec& seed, const SearchConfig& base,
                            const SpectrumOptions& options);

/// Sizes strictly between q^3 - q + 1 and q^3 + 1, with their counts.
struct GapReport {
  unsigned q = 0;
  std::map<std::size_t, std::size_t> flagged;

  bool consistent() const { return flagged.empty(); }
};

GapReport gap_check(unsigned q, std::span<const RunRecord> records);

enum class HistogramFormat { Csv, Json };

/// Throws UsageError for anything but "csv" or "json".
HistogramFormat parse_histogram_format(std::string_view name);

/// CSV: header `size,count,percent`, percent to one decimal. JSON keeps full precision.
/// Rows ascend by size.
std::string emit_histogram(const Histogram& h, HistogramFormat format);

struct HistogramRow {
  std::size_t size = 0;
  std::size_t count = 0;
  double percent = 0;

  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

/// Parses the CSV produced by emit_histogram. Throws ConfigError on malformed input.
std::vector<HistogramRow> parse_histogram_csv(std::string_view text);

/// One JSON object per line; wall_time_ms is included only when requested
/// because it is the one field that varies between identical runs.
std::string run_log_jsonl(std::span<const RunRecord> records, bool include_timing = false);

}  // namespace hermcap
