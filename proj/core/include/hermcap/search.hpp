#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hermcap/capstate.hpp"
#include "hermcap/hermitian.hpp"
#include "hermcap/rng.hpp"

namespace hermcap {

enum class Strategy {
  Random,        ///< uniform choice among uncovered points
  MinRelevance,  ///< uncovered point of minimal relevance
  Forward,       ///< one-step lookahead on the count of minimal-relevance points
  Backtrack,     ///< random completion, then point replacement to enlarge it
};

std::string_view to_string(Strategy s);
/// Accepts random, min-relevance, forward, backtrack. Throws UsageError otherwise.
Strategy parse_strategy(std::string_view name);

/// How forward search ranks candidates by the number of minimal-relevance
/// points they leave behind.
enum class ForwardTieMode {
  MaxCount,  ///< prefer many minimal-relevance points
  MinCount,  ///< prefer few
};

std::string_view to_string(ForwardTieMode m);
ForwardTieMode parse_tie_mode(std::string_view name);

struct SearchConfig {
  Strategy strategy = Strategy::Random;
  std::uint64_t rng_seed = 0;
  ForwardTieMode forward_tie_mode = ForwardTieMode::MaxCount;
  /// Maximum number of removals in one backtracking pass; 0 selects q.
  unsigned backtrack_max_depth = 0;
  /// Upper bound on candidates scanned per forward step (random subsample).
  std::optional<std::size_t> candidate_cap;
  bool record_trace = false;
};

struct TraceStep {
  PointId point;
  int relevance;           ///< r(point, C) at the moment it was chosen
  std::size_t cap_size;    ///< |C| before the addition
};

struct SearchOutcome {
  std::vector<PointId> final_cap;  ///< sorted
  bool is_ovoid = false;
  std::size_t iterations = 0;      ///< points added
  std::vector<TraceStep> trace;
};

/// Random completion. Throws CapViolation if the seed is not a cap.
SearchOutcome complete_random(const SurfaceModel& model, std::span<const PointId> seed,
                              const SearchConfig& config);
/// Greedy completion by minimal relevance, ties broken uniformly at random.
SearchOutcome complete_min_relevance(const SurfaceModel& model, std::span<const PointId> seed,
                                     const SearchConfig& config);
/// Completion driven by select_forward.
SearchOutcome complete_forward(const SurfaceModel& model, std::span<const PointId> seed,
                               const SearchConfig& config);

/// Chooses the next point for forward search, or nullopt if the cap is complete.
///
/// With r-(C) = 1 this is a uniformly random uncovered point of relevance 1.
/// Otherwise each uncovered candidate t is scored by the number of points of
/// minimal relevance with respect to C ∪ {t} (zero when C ∪ {t} is complete),
/// and the best score under tie_mode wins.
std::optional<PointId> select_forward(const CapState& cap, Rng& rng, ForwardTieMode tie_mode,
                                      std::optional<std::size_t> candidate_cap = std::nullopt);

/// Tries to enlarge a complete cap by removing high-relevance points outside
/// protected_seed and re-filling. Returns a complete cap containing the seed
/// that is at least as large as the input; the input itself when no
/// replacement pays off. Throws ArgumentError if the cap is not complete or
/// does not contain the seed.
SearchOutcome backtrack_enlarge(const SurfaceModel& model, std::span<const PointId> protected_seed,
                                std::span<const PointId> complete_cap, const SearchConfig& config);

/// Dispatches on config.strategy.
SearchOutcome complete(const SurfaceModel& model, std::span<const PointId> seed, const SearchConfig& config);

struct ThinResult {
  std::vector<PointId> kept;               ///< sorted
  std::vector<PointId> removed;            ///< sorted union of parts
  std::vector<std::vector<PointId>> parts; ///< parts[i] has q - i points
  std::vector<PointId> witnesses;          ///< off-ovoid point covered by each part
};

/// Removes q(q+1)/2 points from an ovoid so that every point off the ovoid
/// stays covered; the ovoid is then the unique completion of what is kept.
/// Throws ArgumentError if the input is not an ovoid.
ThinResult thin_ovoid(const SurfaceModel& model, std::span<const PointId> ovoid, Rng& rng);

/// Uniform random n-subset (sorted). Throws ArgumentError if n exceeds the input size.
std::vector<PointId> sample_subcap(std::span<const PointId> points, std::size_t n, Rng& rng);

}  // namespace hermcap
