#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "hermcap/capstate.hpp"
#include "hermcap/errors.hpp"
#include "hermcap/harness.hpp"
#include "hermcap/search.hpp"
#include "test_support.hpp"

using namespace hermcap;
using hermcap::testing::model;

namespace {

constexpr Strategy kAll[] = {Strategy::Random, Strategy::MinRelevance, Strategy::Forward, Strategy::Backtrack};

SearchConfig config_for(Strategy s, std::uint64_t seed) {
  SearchConfig c;
  c.strategy = s;
  c.rng_seed = seed;
  return c;
}

bool conjugate_by_form(const SurfaceModel& m, PointId a, PointId b) {
  return hermitian_inner(m.field(), m.point(a), m.point(b)) == 0;
}

// Every complete cap containing the seed, by exhaustive extension in id order.
std::set<std::vector<PointId>> all_complete_caps(const SurfaceModel& m, std::vector<PointId> seed) {
  std::set<std::vector<PointId>> found;
  std::vector<PointId> cap = seed;
  auto extendable = [&](PointId y) {
    return std::none_of(cap.begin(), cap.end(), [&](PointId x) { return conjugate_by_form(m, x, y); });
  };
  std::function<void(PointId)> dfs = [&](PointId from) {
    bool complete = true;
    for (PointId y = 0; y < m.size() && complete; ++y) complete = !extendable(y);
    if (complete) {
      auto sorted = cap;
      std::sort(sorted.begin(), sorted.end());
      found.insert(sorted);
      return;
    }
    for (PointId y = from; y < m.size(); ++y) {
      if (!extendable(y)) continue;
      cap.push_back(y);
      dfs(y + 1);
      cap.pop_back();
    }
  };
  dfs(0);
  return found;
}

}  // namespace

TEST_CASE("strategy names") {
  for (Strategy s : kAll) CHECK(parse_strategy(to_string(s)) == s);
  CHECK(to_string(Strategy::MinRelevance) == "min-relevance");
  CHECK_THROWS_AS(parse_strategy("greedy"), UsageError);
  CHECK(parse_tie_mode("min-count") == ForwardTieMode::MinCount);
  CHECK_THROWS_AS(parse_tie_mode("tie"), UsageError);
}

TEST_CASE("an ovoid is returned unchanged") {
  for (unsigned q : {2u, 3u}) {
    const auto& m = model(q);
    const auto ovoid = m.classical_ovoid();
    for (Strategy s : kAll) {
      const auto out = complete(m, ovoid, config_for(s, 1));
      CHECK(out.final_cap == ovoid);
      CHECK(out.is_ovoid);
      CHECK(out.iterations == 0);
    }
  }
}

TEST_CASE("an ovoid missing at most q points is recovered") {
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& m = model(q);
    const auto ovoid = m.classical_ovoid();
    Rng rng(q);
    for (unsigned k = 1; k <= q; ++k) {
      const auto seed = sample_subcap(ovoid, ovoid.size() - k, rng);
      for (Strategy s : kAll) {
        const auto out = complete(m, seed, config_for(s, k));
        CHECK(out.final_cap == ovoid);
        CHECK(out.iterations == k);
      }
    }
  }
}

TEST_CASE("completions are complete caps within the size bounds") {
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& m = model(q);
    for (Strategy s : kAll) {
      if (q == 5 && s == Strategy::Forward) continue;
      for (std::uint64_t seed = 0; seed < (q == 5 ? 3u : 10u); ++seed) {
        const auto out = complete(m, {}, config_for(s, seed));
        const CapState cap(m, out.final_cap);
        CHECK(cap.is_complete());
        CHECK(out.final_cap.size() >= q * q + 1);
        CHECK(out.final_cap.size() <= q * q * q + 1);
        CHECK(out.is_ovoid == (out.final_cap.size() == q * q * q + 1));
        CHECK(std::is_sorted(out.final_cap.begin(), out.final_cap.end()));
        CHECK(complete(m, {}, config_for(s, seed)).final_cap == out.final_cap);
      }
    }
  }
}

TEST_CASE("random completion reaches only complete caps containing the seed") {
  const auto& m = model(2);
  const auto ovoid = m.classical_ovoid();
  const std::vector<PointId> seed = {ovoid[0], ovoid[5]};
  REQUIRE_FALSE(conjugate_by_form(m, seed[0], seed[1]));
  const auto oracle = all_complete_caps(m, seed);
  REQUIRE(!oracle.empty());
  std::set<std::vector<PointId>> seen;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    const auto out = complete_random(m, seed, config_for(Strategy::Random, s));
    REQUIRE(oracle.count(out.final_cap) == 1);
    seen.insert(out.final_cap);
  }
  MESSAGE("complete caps containing the seed: " << oracle.size() << ", reached: " << seen.size());
  CHECK(seen.size() * 2 > oracle.size());
}

TEST_CASE("seed must be a cap") {
  const auto& m = model(3);
  const auto& line = m.generators()[0].points;
  const std::vector<PointId> bad = {line[0], line[1]};
  for (Strategy s : kAll) CHECK_THROWS_AS(complete(m, bad, config_for(s, 0)), CapViolation);
}

TEST_CASE("distinct ovoids differ in at least q+1 points") {
  const unsigned q = 3;
  const auto& m = model(q);
  std::set<std::vector<PointId>> ovoids;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto out = complete(m, {}, config_for(Strategy::MinRelevance, s));
    if (out.is_ovoid) ovoids.insert(out.final_cap);
  }
  REQUIRE(ovoids.size() >= 2);
  for (auto a = ovoids.begin(); a != ovoids.end(); ++a)
    for (auto b = std::next(a); b != ovoids.end(); ++b)
      CHECK(hermcap::testing::set_difference(*a, *b).size() >= q + 1);
}

TEST_CASE("relevance one appears only once the cap has q^2 points") {
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& m = model(q);
    for (Strategy s : {Strategy::Random, Strategy::MinRelevance, Strategy::Forward}) {
      if (q == 5 && s == Strategy::Forward) continue;
      for (std::uint64_t seed = 0; seed < (q == 5 ? 3u : 20u); ++seed) {
        auto config = config_for(s, seed);
        config.record_trace = true;
        const auto out = complete(m, {}, config);
        REQUIRE(out.trace.size() == out.iterations);
        for (const auto& step : out.trace) {
          CHECK(step.relevance >= 1);
          if (step.relevance == 1) CHECK(step.cap_size >= q * q);
        }
      }
    }
  }
}

TEST_CASE("min-relevance chooses a point of minimal relevance") {
  const auto& m = model(3);
  auto config = config_for(Strategy::MinRelevance, 9);
  config.record_trace = true;
  const auto out = complete(m, {}, config);
  CapState cap(m);
  for (const auto& step : out.trace) {
    CHECK(step.relevance == cap.r_extrema()->r_minus);
    CHECK(cap.relevance(step.point) == step.relevance);
    cap.add(step.point);
  }
  CHECK(cap.sorted_members() == out.final_cap);
}

TEST_CASE("forward selection") {
  const auto& m = model(2);
  const auto ovoid = m.classical_ovoid();
  std::vector<PointId> seed(ovoid.begin() + 2, ovoid.end());
  const CapState cap(m, seed);
  Rng rng(3);
  for (auto mode : {ForwardTieMode::MaxCount, ForwardTieMode::MinCount}) {
    const auto pick = select_forward(cap, rng, mode);
    REQUIRE(pick.has_value());
    CHECK((*pick == ovoid[0] || *pick == ovoid[1]));
  }
  CHECK_FALSE(select_forward(CapState(m, ovoid), rng, ForwardTieMode::MaxCount).has_value());

  const CapState empty(m);
  const auto capped = select_forward(empty, rng, ForwardTieMode::MaxCount, 5);
  REQUIRE(capped.has_value());
  CHECK(*capped < m.size());
}

TEST_CASE("backtrack contract") {
  const auto& m = model(3);
  const auto ovoid = m.classical_ovoid();
  const std::vector<PointId> part(ovoid.begin(), ovoid.begin() + 4);
  CHECK_THROWS_AS(backtrack_enlarge(m, {}, part, {}), ArgumentError);
  const auto other = complete(m, {}, config_for(Strategy::Random, 4)).final_cap;
  const std::vector<PointId> foreign = {*std::find_if(ovoid.begin(), ovoid.end(), [&](PointId x) {
    return !std::binary_search(other.begin(), other.end(), x);
  })};
  CHECK_THROWS_AS(backtrack_enlarge(m, foreign, other, {}), ArgumentError);
  CHECK(backtrack_enlarge(m, part, ovoid, {}).final_cap == ovoid);
}

TEST_CASE("backtracking enlarges some random complete caps") {
  const auto& m = model(5);
  int larger = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto base = complete_random(m, {}, config_for(Strategy::Random, s));
    const auto out = backtrack_enlarge(m, {}, base.final_cap, config_for(Strategy::Backtrack, s));
    REQUIRE(CapState(m, out.final_cap).is_complete());
    REQUIRE(out.final_cap.size() >= base.final_cap.size());
    larger += out.final_cap.size() > base.final_cap.size();
  }
  MESSAGE("enlarged: " << larger << " of 100");
  CHECK(larger >= 1);
}

TEST_CASE("backtracking keeps the protected seed") {
  const auto& m = model(5);
  const auto ovoid = m.classical_ovoid();
  Rng rng(12);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto seed = sample_subcap(ovoid, 30, rng);
    const auto out = complete(m, seed, config_for(Strategy::Backtrack, s));
    CHECK(std::includes(out.final_cap.begin(), out.final_cap.end(), seed.begin(), seed.end()));
  }
}

TEST_CASE("thinning an ovoid") {
  for (unsigned q : {2u, 3u, 5u}) {
    const auto& m = model(q);
    const auto ovoid = m.classical_ovoid();
    Rng rng(q + 100);
    const auto thin = thin_ovoid(m, ovoid, rng);
    CHECK(thin.removed.size() == q * (q + 1) / 2);
    CHECK(thin.kept.size() + thin.removed.size() == ovoid.size());
    REQUIRE(thin.parts.size() == q);
    REQUIRE(thin.witnesses.size() == q);
    std::vector<PointId> all;
    for (std::size_t i = 0; i < q; ++i) {
      CHECK(thin.parts[i].size() == q - i);
      CHECK_FALSE(std::binary_search(ovoid.begin(), ovoid.end(), thin.witnesses[i]));
      for (PointId x : thin.parts[i]) CHECK(conjugate_by_form(m, x, thin.witnesses[i]));
      all.insert(all.end(), thin.parts[i].begin(), thin.parts[i].end());
    }
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK(all == thin.removed);

    const CapState kept(m, thin.kept);
    for (PointId y = 0; y < m.size(); ++y)
      if (!std::binary_search(ovoid.begin(), ovoid.end(), y)) CHECK(kept.covered(y));
    for (Strategy s : kAll) CHECK(complete(m, thin.kept, config_for(s, 7)).final_cap == ovoid);

    const std::vector<PointId> part(ovoid.begin(), ovoid.end() - 1);
    CHECK_THROWS_AS(thin_ovoid(m, part, rng), ArgumentError);
  }
}

TEST_CASE("sample_subcap") {
  const std::vector<PointId> pts = {3, 8, 11, 19, 24};
  Rng rng(1);
  CHECK(sample_subcap(pts, 0, rng).empty());
  CHECK(sample_subcap(pts, 5, rng) == pts);
  CHECK_THROWS_AS(sample_subcap(pts, 6, rng), ArgumentError);
  std::map<PointId, int> hits;
  for (int i = 0; i < 5000; ++i) {
    const auto s = sample_subcap(pts, 2, rng);
    REQUIRE(s.size() == 2);
    REQUIRE(s[0] < s[1]);
    for (PointId x : s) ++hits[x];
  }
  for (auto [x, n] : hits) CHECK(std::abs(n - 2000) < 200);
}

TEST_CASE("large ovoid subsets usually complete to an ovoid under min-relevance") {
  const auto& m = model(5);
  const auto ovoid = m.classical_ovoid();
  Rng rng(34);
  int ovoids = 0, forward_ovoids = 0;
  const int runs = 40;
  for (int i = 0; i < runs; ++i) {
    const auto seed = sample_subcap(ovoid, 35, rng);
    ovoids += complete(m, seed, config_for(Strategy::MinRelevance, rng.next())).is_ovoid;
    if (i < 10) forward_ovoids += complete(m, seed, config_for(Strategy::Forward, rng.next())).is_ovoid;
  }
  MESSAGE("min-relevance ovoids: " << ovoids << "/" << runs << ", forward: " << forward_ovoids << "/10");
  CHECK(ovoids * 2 > runs);
}
