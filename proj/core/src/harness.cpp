#include "hermcap/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hermcap/errors.hpp"

namespace hermcap {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run_index) {
  return mix64(master ^ (0x9e3779b97f4a7c15ULL * (run_index + 1)));
}

SeedSpec SeedSpec::sub_ovoid(std::size_t n) {
  SeedSpec s;
  s.kind = Kind::SubOvoid;
  s.sub_ovoid_size = n;
  return s;
}

SeedSpec SeedSpec::from_points(std::string path, std::vector<PointId> points) {
  SeedSpec s;
  s.kind = Kind::FromFile;
  s.path = std::move(path);
  s.fixed = std::move(points);
  return s;
}

std::string SeedSpec::describe() const {
  switch (kind) {
    case Kind::Empty: return "empty";
    case Kind::SubOvoid: return "sub-ovoid(" + std::to_string(sub_ovoid_size) + ")";
    case Kind::FromFile: return "file(" + path + ")";
  }
  return "unknown";
}

double Histogram::percent(std::size_t size) const {
  if (total_runs == 0) return 0;
  const auto it = counts.find(size);
  return it == counts.end() ? 0.0 : 100.0 * static_cast<double>(it->second) / static_cast<double>(total_runs);
}

double Histogram::mean() const {
  if (total_runs == 0) return 0;
  double s = 0;
  for (const auto& [size, count] : counts) s += static_cast<double>(size) * static_cast<double>(count);
  return s / static_cast<double>(total_runs);
}

std::size_t Histogram::mode() const {
  std::size_t best = 0, best_count = 0;
  for (const auto& [size, count] : counts) {
    if (count > best_count) {
      best = size;
      best_count = count;
    }
  }
  return best;
}

Histogram Histogram::from_records(unsigned q, Strategy strategy, std::string seed_spec,
                                  std::span<const RunRecord> records) {
  Histogram h;
  h.q = q;
  h.strategy = strategy;
  h.seed_spec = std::move(seed_spec);
  h.total_runs = records.size();
  for (const auto& r : records) ++h.counts[r.final_size];
  return h;
}

SpectrumResult run_spectrum(const SurfaceModel& model, const SeedSpec& seed, const SearchConfig& base,
                            const SpectrumOptions& options) {
  if (options.n_runs == 0) throw ArgumentError("n_runs must be at least 1");
  std::vector<PointId> ovoid;
  if (seed.kind == SeedSpec::Kind::SubOvoid) {
    ovoid = model.classical_ovoid();
    if (seed.sub_ovoid_size > ovoid.size())
      throw ArgumentError("sub-ovoid size " + std::to_string(seed.sub_ovoid_size) + " exceeds the ovoid size " +
                          std::to_string(ovoid.size()));
  }

  SpectrumResult result;
  result.records.resize(options.n_runs);
  if (options.keep_caps) result.caps.resize(options.n_runs);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= options.n_runs) return;
      try {
        const auto start = std::chrono::steady_clock::now();
        RunRecord rec;
        rec.run_index = i;
        rec.derived_seed = derive_seed(options.master_seed, i);
        rec.strategy = base.strategy;

        Rng rng(rec.derived_seed);
        std::vector<PointId> input;
        switch (seed.kind) {
          case SeedSpec::Kind::Empty: break;
          case SeedSpec::Kind::SubOvoid: input = sample_subcap(ovoid, seed.sub_ovoid_size, rng); break;
          case SeedSpec::Kind::FromFile: input = seed.fixed; break;
        }
        SearchConfig config = base;
        config.rng_seed = rng.next();
        auto outcome = complete(model, input, config);

        rec.input_size = input.size();
        rec.final_size = outcome.final_cap.size();
        rec.is_ovoid = outcome.is_ovoid;
        rec.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        result.records[i] = rec;
        if (options.keep_caps) result.caps[i] = std::move(outcome.final_cap);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = options.n_runs;
        return;
      }
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.histogram = Histogram::from_records(model.q(), base.strategy, seed.describe(), result.records);
  return result;
}

GapReport gap_check(unsigned q, std::span<const RunRecord> records) {
  GapReport report;
  report.q = q;
  const std::size_t q3 = static_cast<std::size_t>(q) * q * q;
  for (const auto& r : records)
    if (r.final_size > q3 - q + 1 && r.final_size < q3 + 1) ++report.flagged[r.final_size];
  return report;
}

HistogramFormat parse_histogram_format(std::string_view name) {
  if (name == "csv") return HistogramFormat::Csv;
  if (name == "json") return HistogramFormat::Json;
  throw UsageError("unknown histogram format '" + std::string(name) + "'");
}

std::string emit_histogram(const Histogram& h, HistogramFormat format) {
  if (format == HistogramFormat::Csv) {
    std::string out = "size,count,percent\n";
    char buf[96];
    for (const auto& [size, count] : h.counts) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.1f\n", size, count, h.percent(size));
      out += buf;
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["q"] = h.q;
  j["strategy"] = std::string(to_string(h.strategy));
  j["seed_spec"] = h.seed_spec;
  j["total_runs"] = h.total_runs;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& [size, count] : h.counts) {
    nlohmann::ordered_json row;
    row["size"] = size;
    row["count"] = count;
    row["percent"] = h.percent(size);
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::vector<HistogramRow> parse_histogram_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "size,count,percent")
    throw ConfigError("histogram CSV must start with the header 'size,count,percent'");
  std::vector<HistogramRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    HistogramRow row;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%zu,%zu,%lf%c", &row.size, &row.count, &row.percent, &tail) != 3)
      throw ConfigError("malformed histogram row '" + line + "'");
    rows.push_back(row);
  }
  return rows;
}

std::string run_log_jsonl(std::span<const RunRecord> records, bool include_timing) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["run_index"] = r.run_index;
    j["derived_seed"] = r.derived_seed;
    j["strategy"] = std::string(to_string(r.strategy));
    j["input_size"] = r.input_size;
    j["final_size"] = r.final_size;
    j["is_ovoid"] = r.is_ovoid;
    if (include_timing) j["wall_time_ms"] = r.wall_time_ms;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace hermcap
