#include <doctest.h>

#include <cmath>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "hermcap/capstate.hpp"
#include "hermcap/errors.hpp"
#include "hermcap/harness.hpp"
#include "hermcap/rng.hpp"
#include "test_support.hpp"

using namespace hermcap;
using hermcap::testing::model;

TEST_CASE("mix64 matches the reference splitmix64 stream") {
  // First outputs of splitmix64 seeded with 0.
  constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  CHECK(mix64(gamma) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(2 * gamma) == 0x6e789e6aa1b965f4ULL);
  CHECK(mix64(3 * gamma) == 0x06c45d188009454fULL);
}

TEST_CASE("rng") {
  Rng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CHECK(Rng(0).next() != 0);
  std::array<int, 7> hits{};
  Rng r(11);
  for (int i = 0; i < 70000; ++i) ++hits[r.below(7)];
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  CHECK(r.below(1) == 0);
}

TEST_CASE("derive_seed") {
  constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  CHECK(derive_seed(7, 0) == mix64(7 ^ gamma));
  CHECK(derive_seed(7, 41) == mix64(7 ^ (gamma * 42)));
  CHECK(derive_seed(7, 41) == derive_seed(7, 41));

  for (std::uint64_t master : {0ULL, 1ULL, 0xdeadbeefULL}) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1'000'000);
    for (std::uint64_t i = 0; i < 1'000'000; ++i) seen.insert(derive_seed(master, i));
    CHECK(seen.size() == 1'000'000);
  }
  std::unordered_set<std::uint64_t> grid;
  for (std::uint64_t master = 0; master < 1000; ++master)
    for (std::uint64_t i = 0; i < 1000; ++i) grid.insert(derive_seed(master * 0x1234567ULL, i));
  CHECK(grid.size() == 1'000'000);
}

TEST_CASE("seed specs") {
  CHECK(SeedSpec::empty().describe() == "empty");
  CHECK(SeedSpec::sub_ovoid(69).describe() == "sub-ovoid(69)");
  CHECK(SeedSpec::from_points("a.json", {1, 2}).describe() == "file(a.json)");
}

TEST_CASE("spectrum is independent of the thread count") {
  const auto& m = model(3);
  SearchConfig config;
  config.strategy = Strategy::MinRelevance;
  SpectrumOptions options{.n_runs = 60, .master_seed = 9, .jobs = 1, .keep_caps = true};
  const auto one = run_spectrum(m, SeedSpec::sub_ovoid(10), config, options);
  options.jobs = 4;
  const auto four = run_spectrum(m, SeedSpec::sub_ovoid(10), config, options);
  CHECK(one.caps == four.caps);
  CHECK(one.histogram.counts == four.histogram.counts);
  CHECK(run_log_jsonl(one.records) == run_log_jsonl(four.records));
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    const auto& r = one.records[i];
    CHECK(r.run_index == i);
    CHECK(r.derived_seed == derive_seed(9, i));
    CHECK(r.input_size == 10);
    CHECK(r.final_size == one.caps[i].size());
    CHECK(CapState(m, one.caps[i]).is_complete());
  }
}

TEST_CASE("spectrum seeds") {
  const auto& m = model(2);
  SearchConfig config;
  const auto ovoid = m.classical_ovoid();
  const std::vector<PointId> fixed(ovoid.begin(), ovoid.begin() + 3);
  const auto res = run_spectrum(m, SeedSpec::from_points("x", fixed), config, {.n_runs = 20, .keep_caps = true});
  for (const auto& cap : res.caps) CHECK(std::includes(cap.begin(), cap.end(), fixed.begin(), fixed.end()));
  CHECK(res.histogram.seed_spec == "file(x)");

  CHECK_THROWS_AS(run_spectrum(m, SeedSpec::empty(), config, {.n_runs = 0}), ArgumentError);
  CHECK_THROWS_AS(run_spectrum(m, SeedSpec::sub_ovoid(10), config, {.n_runs = 1}), ArgumentError);
}

TEST_CASE("histogram statistics") {
  std::vector<RunRecord> records;
  for (std::size_t s : {84, 84, 85, 90, 126}) records.push_back({.final_size = s, .is_ovoid = s == 126});
  const auto h = Histogram::from_records(5, Strategy::Random, "empty", records);
  CHECK(h.total_runs == 5);
  CHECK(h.mode() == 84);
  CHECK(h.mean() == doctest::Approx(93.8));
  CHECK(h.percent(84) == doctest::Approx(40.0));
  CHECK(h.rate(126) == doctest::Approx(0.2));
  CHECK(h.percent(100) == 0);
  double sum = 0;
  for (auto [size, n] : h.counts) sum += h.percent(size);
  CHECK(sum == doctest::Approx(100.0));

  const auto blank = Histogram::from_records(5, Strategy::Random, "empty", {});
  CHECK(blank.mode() == 0);
  CHECK(blank.mean() == 0);
  CHECK(blank.percent(1) == 0);
}

TEST_CASE("gap check boundaries") {
  auto records_of = [](std::initializer_list<std::size_t> sizes) {
    std::vector<RunRecord> out;
    for (auto s : sizes) out.push_back({.final_size = s});
    return out;
  };
  // q=5: q^3-q+1 = 121, q^3+1 = 126.
  CHECK(gap_check(5, records_of({121, 126, 90})).consistent());
  const auto bad = gap_check(5, records_of({122, 125, 125}));
  CHECK_FALSE(bad.consistent());
  CHECK(bad.flagged == std::map<std::size_t, std::size_t>{{122, 1}, {125, 2}});
  // q=2: 7 and 9 are allowed, 8 is not.
  CHECK(gap_check(2, records_of({7, 9})).consistent());
  CHECK(gap_check(2, records_of({8})).flagged.size() == 1);
}

TEST_CASE("histogram CSV and JSON") {
  const auto empty = Histogram::from_records(5, Strategy::Random, "empty", {});
  CHECK(emit_histogram(empty, HistogramFormat::Csv) == "size,count,percent\n");
  CHECK(parse_histogram_csv(emit_histogram(empty, HistogramFormat::Csv)).empty());

  std::vector<RunRecord> one = {{.final_size = 126, .is_ovoid = true}};
  const auto single = Histogram::from_records(5, Strategy::Random, "empty", one);
  CHECK(emit_histogram(single, HistogramFormat::Csv) == "size,count,percent\n126,1,100.0\n");

  const auto json = nlohmann::json::parse(emit_histogram(single, HistogramFormat::Json));
  CHECK(json["q"] == 5);
  CHECK(json["total_runs"] == 1);

  CHECK(parse_histogram_format("csv") == HistogramFormat::Csv);
  CHECK(parse_histogram_format("json") == HistogramFormat::Json);
  CHECK_THROWS_AS(parse_histogram_format("xml"), UsageError);
  CHECK_THROWS_AS(parse_histogram_csv("size,count\n1,2\n"), ConfigError);
  CHECK_THROWS_AS(parse_histogram_csv("size,count,percent\n1,x,2\n"), ConfigError);
}

TEST_CASE("random completions from the empty cap at q=5") {
  const auto& m = model(5);
  SearchConfig config;
  const auto res = run_spectrum(m, SeedSpec::empty(), config, {.n_runs = 1000, .master_seed = 1});
  const auto& h = res.histogram;
  MESSAGE("mean " << h.mean() << " mode " << h.mode());
  CHECK(h.mean() >= 83.5);
  CHECK(h.mean() <= 85.5);
  CHECK(gap_check(5, res.records).consistent());

  const auto csv = emit_histogram(h, HistogramFormat::Csv);
  const auto rows = parse_histogram_csv(csv);
  REQUIRE(rows.size() == h.counts.size());
  std::size_t total = 0;
  double percent = 0;
  for (const auto& row : rows) {
    CHECK(h.counts.at(row.size) == row.count);
    CHECK(std::abs(row.percent - h.percent(row.size)) <= 0.05);
    total += row.count;
    percent += row.percent;
  }
  CHECK(total == 1000);
  CHECK(std::abs(percent - 100.0) <= 0.05 * rows.size());
}

TEST_CASE("run log lines") {
  std::vector<RunRecord> records = {{.run_index = 0, .derived_seed = 12, .input_size = 3, .final_size = 9,
                                     .is_ovoid = true, .wall_time_ms = 1.5}};
  const auto plain = run_log_jsonl(records);
  const auto timed = run_log_jsonl(records, true);
  CHECK(plain.find("wall_time_ms") == std::string::npos);
  CHECK(timed.find("wall_time_ms") != std::string::npos);
  const auto j = nlohmann::json::parse(plain.substr(0, plain.find('\n')));
  CHECK(j["final_size"] == 9);
  CHECK(j["is_ovoid"] == true);
  CHECK(j["strategy"] == "random");
}
