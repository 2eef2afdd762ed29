#include "hermcap/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hermcap/errors.hpp"

namespace hermcap {

namespace {

constexpr double kWeightTolerance = 1e-9;

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.below(v.size())];
}

// Relevance of every uncovered point, kept current across additions:
// covering z lowers r(y) by one for each uncovered y in G_z.
class RelevanceTracker {
 public:
  explicit RelevanceTracker(const CapState& cap) : rel_(cap.model().size(), 0) {
    for (PointId y = 0; y < rel_.size(); ++y)
      if (!cap.covered(y)) rel_[y] = cap.relevance(y);
  }

  int operator[](PointId y) const { return rel_[y]; }

  void add(CapState& cap, PointId x) {
    const auto& model = cap.model();
    newly_.clear();
    for (PointId z : model.tangent_set(x))
      if (!cap.covered(z)) newly_.push_back(z);
    cap.add(x);
    for (PointId z : newly_) {
      for (PointId y : model.tangent_set(z))
        if (!cap.covered(y)) --rel_[y];
    }
  }

 private:
  std::vector<int> rel_;
  std::vector<PointId> newly_;
};

void record(SearchOutcome* out, const SearchConfig& config, PointId x, int relevance, std::size_t size) {
  if (config.record_trace) out->trace.push_back(TraceStep{x, relevance, size});
}

void run_random(CapState& cap, Rng& rng, const SearchConfig& config, SearchOutcome& out) {
  const std::size_t ovoid = cap.model().counts().ovoid_size;
  std::vector<PointId> open = cap.uncovered();
  while (!open.empty()) {
    const PointId x = pick(open, rng);
    if (config.record_trace) record(&out, config, x, cap.relevance(x), cap.size());
    cap.add(x);
    ++out.iterations;
    if (cap.size() == ovoid) break;
    std::erase_if(open, [&](PointId y) { return cap.covered(y); });
  }
}

void run_min_relevance(CapState& cap, Rng& rng, const SearchConfig& config, SearchOutcome& out) {
  RelevanceTracker rel(cap);
  std::vector<PointId> open = cap.uncovered();
  std::vector<PointId> best;
  while (!open.empty()) {
    int r_min = std::numeric_limits<int>::max();
    best.clear();
    for (PointId y : open) {
      if (rel[y] < r_min) {
        r_min = rel[y];
        best.clear();
      }
      if (rel[y] == r_min) best.push_back(y);
    }
    const PointId x = pick(best, rng);
    record(&out, config, x, r_min, cap.size());
    rel.add(cap, x);
    ++out.iterations;
    std::erase_if(open, [&](PointId y) { return cap.covered(y); });
  }
}

void extend_by_weight(CapState& cap, Rng& rng, const SearchConfig& config, SearchOutcome& out) {
  std::vector<PointId> best;
  while (!cap.is_complete()) {
    double w_min = std::numeric_limits<double>::infinity();
    best.clear();
    for (PointId y : cap.uncovered()) {
      const double w = cap.weight_if_added(y);
      if (w < w_min - kWeightTolerance) {
        w_min = w;
        best.clear();
        best.push_back(y);
      } else if (std::abs(w - w_min) <= kWeightTolerance) {
        best.push_back(y);
      }
    }
    const PointId x = pick(best, rng);
    record(&out, config, x, cap.relevance(x), cap.size());
    cap.add(x);
    ++out.iterations;
  }
}

bool large_cap(CapState& cap, const std::vector<std::uint8_t>& is_protected, unsigned depth, Rng& rng,
               const SearchConfig& config, SearchOutcome& out) {
  if (depth == 0) return false;
  int top = -1;
  std::vector<PointId> best;
  for (PointId t : cap.sorted_members()) {
    if (is_protected[t]) continue;
    const int r = cap.member_relevance(t);
    if (r > top) {
      top = r;
      best.clear();
    }
    if (r == top) best.push_back(t);
  }
  if (best.empty()) return false;

  const PointId p = pick(best, rng);
  cap.remove(p);

  int r_min = top;
  std::vector<PointId> replacements;
  for (PointId x : cap.uncovered()) {
    const int r = cap.relevance(x);
    if (r < r_min) {
      r_min = r;
      replacements.clear();
    }
    if (r == r_min && r < top) replacements.push_back(x);
  }
  if (!replacements.empty()) {
    const PointId x = pick(replacements, rng);
    record(&out, config, x, r_min, cap.size());
    cap.add(x);
    ++out.iterations;
    extend_by_weight(cap, rng, config, out);
    return true;
  }
  if (large_cap(cap, is_protected, depth - 1, rng, config, out)) {
    extend_by_weight(cap, rng, config, out);
    return true;
  }
  cap.add(p);
  return false;
}

SearchOutcome finish(const CapState& cap, SearchOutcome out) {
  out.final_cap = cap.sorted_members();
  out.is_ovoid = out.final_cap.size() == cap.model().counts().ovoid_size;
  return out;
}

void run_backtrack(CapState& cap, std::span<const PointId> seed, Rng& rng, const SearchConfig& config,
                   SearchOutcome& out) {
  const auto& model = cap.model();
  std::vector<std::uint8_t> is_protected(model.size(), 0);
  for (PointId s : seed) is_protected[s] = 1;
  const unsigned depth = config.backtrack_max_depth == 0 ? model.q() : config.backtrack_max_depth;

  const std::vector<PointId> before = cap.sorted_members();
  const std::size_t iterations_before = out.iterations;
  const std::size_t trace_before = out.trace.size();
  if (large_cap(cap, is_protected, depth, rng, config, out) && cap.size() >= before.size()) return;

  // No profitable replacement: hand back the input cap.
  cap = CapState(model, before);
  out.iterations = iterations_before;
  out.trace.resize(trace_before);
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Random: return "random";
    case Strategy::MinRelevance: return "min-relevance";
    case Strategy::Forward: return "forward";
    case Strategy::Backtrack: return "backtrack";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (auto s : {Strategy::Random, Strategy::MinRelevance, Strategy::Forward, Strategy::Backtrack})
    if (to_string(s) == name) return s;
  throw UsageError("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(ForwardTieMode m) {
  return m == ForwardTieMode::MaxCount ? "max-count" : "min-count";
}

ForwardTieMode parse_tie_mode(std::string_view name) {
  if (name == "max-count") return ForwardTieMode::MaxCount;
  if (name == "min-count") return ForwardTieMode::MinCount;
  throw UsageError("unknown forward tie mode '" + std::string(name) + "'");
}

SearchOutcome complete_random(const SurfaceModel& model, std::span<const PointId> seed,
                              const SearchConfig& config) {
  CapState cap(model, seed);
  Rng rng(config.rng_seed);
  SearchOutcome out;
  run_random(cap, rng, config, out);
  return finish(cap, std::move(out));
}

SearchOutcome complete_min_relevance(const SurfaceModel& model, std::span<const PointId> seed,
                                     const SearchConfig& config) {
  CapState cap(model, seed);
  Rng rng(config.rng_seed);
  SearchOutcome out;
  run_min_relevance(cap, rng, config, out);
  return finish(cap, std::move(out));
}

std::optional<PointId> select_forward(const CapState& cap, Rng& rng, ForwardTieMode tie_mode,
                                      std::optional<std::size_t> candidate_cap) {
  if (cap.is_complete()) return std::nullopt;
  const auto& model = cap.model();
  const std::size_t n = model.size();

  std::vector<PointId> open = cap.uncovered();
  std::vector<int> rel(n, 0);
  int r_minus = std::numeric_limits<int>::max();
  for (PointId y : open) {
    rel[y] = cap.relevance(y);
    r_minus = std::min(r_minus, rel[y]);
  }
  if (r_minus == 1) {
    std::vector<PointId> ones;
    for (PointId y : open)
      if (rel[y] == 1) ones.push_back(y);
    return pick(ones, rng);
  }

  std::vector<PointId> candidates = open;
  if (candidate_cap && candidates.size() > *candidate_cap)
    candidates = sample_subcap(candidates, *candidate_cap, rng);

  // hist[r] = number of uncovered points of relevance r with respect to C.
  std::vector<std::int64_t> hist(model.tangent_size() + 2, 0);
  for (PointId y : open) ++hist[rel[y]];

  std::vector<std::uint32_t> stamp(n, 0);   // == epoch: newly covered by t
  std::vector<std::uint32_t> dstamp(n, 0);  // == epoch: delta[y] is live
  std::vector<int> delta(n, 0);
  std::vector<PointId> newly, touched;
  std::vector<std::int64_t> h;
  std::uint32_t epoch = 0;

  std::vector<PointId> best;
  std::int64_t best_count = 0;
  for (PointId t : candidates) {
    ++epoch;
    newly.clear();
    touched.clear();
    for (PointId z : model.tangent_set(t)) {
      if (!cap.covered(z)) {
        newly.push_back(z);
        stamp[z] = epoch;
      }
    }
    for (PointId z : newly) {
      for (PointId y : model.tangent_set(z)) {
        if (cap.covered(y) || stamp[y] == epoch) continue;
        if (dstamp[y] != epoch) {
          dstamp[y] = epoch;
          delta[y] = 0;
          touched.push_back(y);
        }
        ++delta[y];
      }
    }
    h = hist;
    for (PointId z : newly) --h[rel[z]];
    for (PointId y : touched) {
      --h[rel[y]];
      ++h[rel[y] - delta[y]];
    }
    std::int64_t count = 0;
    for (std::size_t r = 1; r < h.size(); ++r) {
      if (h[r] > 0) {
        count = h[r];
        break;
      }
    }

    const bool better = best.empty() || (tie_mode == ForwardTieMode::MaxCount ? count > best_count
                                                                               : count < best_count);
    if (better) {
      best.clear();
      best_count = count;
    }
    if (count == best_count) best.push_back(t);
  }
  return pick(best, rng);
}

SearchOutcome complete_forward(const SurfaceModel& model, std::span<const PointId> seed,
                               const SearchConfig& config) {
  CapState cap(model, seed);
  Rng rng(config.rng_seed);
  SearchOutcome out;
  while (auto x = select_forward(cap, rng, config.forward_tie_mode, config.candidate_cap)) {
    record(&out, config, *x, cap.relevance(*x), cap.size());
    cap.add(*x);
    ++out.iterations;
  }
  return finish(cap, std::move(out));
}

SearchOutcome backtrack_enlarge(const SurfaceModel& model, std::span<const PointId> protected_seed,
                                std::span<const PointId> complete_cap, const SearchConfig& config) {
  CapState cap(model);
  try {
    cap = CapState(model, complete_cap);
  } catch (const CapViolation&) {
    throw ArgumentError("backtracking input is not a cap");
  }
  if (!cap.is_complete()) throw ArgumentError("backtracking input cap is not complete");
  for (PointId s : protected_seed)
    if (s >= model.size() || !cap.contains(s)) throw ArgumentError("protected seed is not contained in the cap");

  Rng rng(config.rng_seed);
  SearchOutcome out;
  run_backtrack(cap, protected_seed, rng, config, out);
  return finish(cap, std::move(out));
}

SearchOutcome complete(const SurfaceModel& model, std::span<const PointId> seed, const SearchConfig& config) {
  switch (config.strategy) {
    case Strategy::Random: return complete_random(model, seed, config);
    case Strategy::MinRelevance: return complete_min_relevance(model, seed, config);
    case Strategy::Forward: return complete_forward(model, seed, config);
    case Strategy::Backtrack: {
      CapState cap(model, seed);
      Rng rng(config.rng_seed);
      SearchOutcome out;
      run_random(cap, rng, config, out);
      run_backtrack(cap, seed, rng, config, out);
      return finish(cap, std::move(out));
    }
  }
  throw ArgumentError("unknown strategy");
}

ThinResult thin_ovoid(const SurfaceModel& model, std::span<const PointId> ovoid, Rng& rng) {
  const unsigned q = model.q();
  if (ovoid.size() != model.counts().ovoid_size) throw ArgumentError("input has the wrong size for an ovoid");
  CapState kept(model);
  try {
    kept = CapState(model, ovoid);
  } catch (const Error&) {
    throw ArgumentError("input is not a cap");
  }
  if (!kept.is_complete()) throw ArgumentError("input is not an ovoid");

  std::vector<std::uint8_t> on_ovoid(model.size(), 0);
  for (PointId x : ovoid) on_ovoid[x] = 1;
  std::vector<PointId> off;
  for (PointId y = 0; y < model.size(); ++y)
    if (!on_ovoid[y]) off.push_back(y);
  for (std::size_t i = off.size(); i > 1; --i) std::swap(off[i - 1], off[rng.below(i)]);

  // z may leave the kept set only if every off-ovoid point it covers stays covered.
  auto removable = [&](PointId z) {
    for (PointId y : model.tangent_set(z))
      if (!on_ovoid[y] && kept.coverage_mult(y) < 2) return false;
    return true;
  };

  ThinResult result;
  std::vector<std::uint8_t> used(model.size(), 0);
  for (unsigned i = 0; i < q; ++i) {
    const std::size_t need = q - i;
    bool placed = false;
    for (PointId p : off) {
      if (used[p]) continue;
      std::vector<PointId> coverers;
      for (PointId z : model.tangent_set(p))
        if (kept.contains(z)) coverers.push_back(z);
      if (coverers.size() < need + 1) continue;
      for (std::size_t j = coverers.size(); j > 1; --j) std::swap(coverers[j - 1], coverers[rng.below(j)]);

      std::vector<PointId> part;
      for (PointId z : coverers) {
        if (part.size() == need) break;
        if (removable(z)) {
          kept.remove(z);
          part.push_back(z);
        }
      }
      if (part.size() < need) {
        for (PointId z : part) kept.add(z);
        continue;
      }
      used[p] = 1;
      std::sort(part.begin(), part.end());
      result.parts.push_back(std::move(part));
      result.witnesses.push_back(p);
      placed = true;
      break;
    }
    if (!placed) throw DomainError("could not extend the removed set at step " + std::to_string(i));
  }

  result.kept = kept.sorted_members();
  for (const auto& part : result.parts) result.removed.insert(result.removed.end(), part.begin(), part.end());
  std::sort(result.removed.begin(), result.removed.end());
  return result;
}

std::vector<PointId> sample_subcap(std::span<const PointId> points, std::size_t n, Rng& rng) {
  if (n > points.size())
    throw ArgumentError("cannot sample " + std::to_string(n) + " of " + std::to_string(points.size()) + " points");
  std::vector<PointId> v(points.begin(), points.end());
  for (std::size_t i = 0; i < n; ++i) std::swap(v[i], v[i + rng.below(v.size() - i)]);
  v.resize(n);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace hermcap
