#include "hermcap/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hermcap/capstate.hpp"
#include "hermcap/rng.hpp"

namespace hermcap {

namespace {

using Check = std::function<std::string()>;  // empty string means pass

std::string field_checks(const FieldTables& f) {
  const unsigned n = f.order();
  unsigned fixed = 0;
  std::vector<unsigned> norm_hits(n, 0);
  for (unsigned a = 0; a < n; ++a) {
    const auto x = static_cast<Elem>(a);
    if (f.conj(f.conj(x)) != x) return "conj is not an involution";
    if (f.in_subfield(x)) ++fixed;
    if (x != 0 && f.mul(x, f.inv(x)) != 1) return "inverse table is wrong";
    if (x != 0 && f.exp(f.log(x)) != x) return "exp/log tables disagree";
    ++norm_hits[f.norm(x)];
  }
  if (fixed != f.q()) return "conj fixes " + std::to_string(fixed) + " elements, expected q";
  for (unsigned a = 1; a < n; ++a) {
    const auto x = static_cast<Elem>(a);
    const bool sub = f.in_subfield(x);
    if (sub && norm_hits[a] != f.q() + 1) return "norm is not (q+1)-to-1";
    if (!sub && norm_hits[a] != 0) return "norm leaves the subfield";
  }
  const bool exhaustive = n <= 81;
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      const auto x = static_cast<Elem>(a), y = static_cast<Elem>(b);
      if (f.conj(f.mul(x, y)) != f.mul(f.conj(x), f.conj(y))) return "conj is not multiplicative";
      if (f.conj(f.add(x, y)) != f.add(f.conj(x), f.conj(y))) return "conj is not additive";
      if (!exhaustive) continue;
      for (unsigned c = 0; c < n; ++c) {
        const auto z = static_cast<Elem>(c);
        if (f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))) return "distributivity fails";
        if (f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))) return "multiplication is not associative";
        if (f.add(f.add(x, y), z) != f.add(x, f.add(y, z))) return "addition is not associative";
      }
    }
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const SurfaceModel& model, bool deep, std::uint64_t seed) {
  const auto counts = model.counts();
  const unsigned q = model.q();
  std::vector<std::pair<std::string, Check>> checks;

  checks.emplace_back("field.axioms", [&] { return field_checks(model.field()); });
  checks.emplace_back("surface.point-count", [&]() -> std::string {
    if (model.size() != counts.points) return std::to_string(model.size()) + " points";
    return {};
  });
  checks.emplace_back("surface.tangent-sections", [&]() -> std::string {
    for (PointId x = 0; x < model.size(); ++x) {
      const auto gx = model.tangent_set(x);
      if (gx.size() != counts.tangent_size) return "point " + std::to_string(x) + " has |Gx|=" + std::to_string(gx.size());
      if (!std::binary_search(gx.begin(), gx.end(), x)) return "point " + std::to_string(x) + " not in its own Gx";
    }
    return {};
  });
  checks.emplace_back("surface.conjugacy-symmetric", [&]() -> std::string {
    Rng rng(seed);
    for (int i = 0; i < 2000; ++i) {
      const auto x = static_cast<PointId>(rng.below(model.size()));
      const auto y = static_cast<PointId>(rng.below(model.size()));
      const auto gx = model.tangent_set(x);
      const auto gy = model.tangent_set(y);
      const bool a = std::binary_search(gx.begin(), gx.end(), y);
      const bool b = std::binary_search(gy.begin(), gy.end(), x);
      if (a != b || a != model.conjugate(x, y)) return "pair " + std::to_string(x) + "," + std::to_string(y);
    }
    return {};
  });
  checks.emplace_back("ovoid.classical", [&]() -> std::string {
    const auto o = model.classical_ovoid();
    if (o.size() != counts.ovoid_size) return "size " + std::to_string(o.size());
    CapState cap(model, o);
    if (!cap.is_complete()) return "classical ovoid does not cover the surface";
    return {};
  });
  checks.emplace_back("capstate.incremental", [&]() -> std::string {
    Rng rng(seed ^ 0x5eed);
    CapState cap(model);
    for (int step = 0; step < 300; ++step) {
      if (cap.size() > 0 && rng.below(3) == 0) {
        cap.remove(cap.members()[rng.below(cap.size())]);
      } else if (!cap.is_complete()) {
        const auto open = cap.uncovered();
        cap.add(open[rng.below(open.size())]);
      }
    }
    CapState fresh(model, cap.sorted_members());
    if (!(fresh == cap)) return "incremental counters differ from recomputation";
    return {};
  });

  if (deep) {
    checks.emplace_back("generators.counts", [&]() -> std::string {
      const auto& gens = model.generators();
      if (gens.size() != counts.generators) return std::to_string(gens.size()) + " generators";
      for (const auto& g : gens) {
        if (g.points.size() != counts.points_per_generator) return "generator with wrong size";
        for (std::size_t i = 0; i < g.points.size(); ++i)
          for (std::size_t j = i + 1; j < g.points.size(); ++j)
            if (!model.conjugate(g.points[i], g.points[j])) return "non-conjugate pair on a generator";
      }
      std::vector<unsigned> through(model.size(), 0);
      for (const auto& g : gens)
        for (PointId z : g.points) ++through[z];
      for (unsigned t : through)
        if (t != counts.generators_per_point) return "point on " + std::to_string(t) + " generators";
      return {};
    });
    checks.emplace_back("generators.conjugate-iff-collinear", [&]() -> std::string {
      Rng rng(seed ^ 0xc011);
      for (int i = 0; i < 1000; ++i) {
        const auto x = static_cast<PointId>(rng.below(model.size()));
        const auto y = static_cast<PointId>(rng.below(model.size()));
        const auto gx = model.generators_through(x);
        const auto gy = model.generators_through(y);
        bool common = false;
        for (auto a : gx)
          for (auto b : gy) common = common || a == b;
        if (common != model.conjugate(x, y)) return "pair " + std::to_string(x) + "," + std::to_string(y);
      }
      return {};
    });
    checks.emplace_back("ovoid.meets-every-generator-once", [&]() -> std::string {
      const auto o = model.classical_ovoid();
      std::vector<std::uint8_t> in(model.size(), 0);
      for (PointId x : o) in[x] = 1;
      for (const auto& g : model.generators()) {
        int hits = 0;
        for (PointId z : g.points) hits += in[z];
        if (hits != 1) return "generator " + std::to_string(g.id) + " meets the ovoid " + std::to_string(hits) + " times";
      }
      return {};
    });
    if (q <= 3) {
      checks.emplace_back("oracle.relevance-values", [&]() -> std::string {
        const int top = static_cast<int>(q * (q * q + q - 1));
        const std::set<int> expected{top, static_cast<int>(q * q * q + q * q - 2 * q),
                                     static_cast<int>(q * q * q + q * q - 2 * q - 1)};
        std::set<int> seen;
        for (PointId y = 0; y < model.size(); ++y) {
          CapState one(model);
          one.add(y);
          for (PointId x = 0; x < model.size(); ++x)
            if (!one.covered(x) && one.relevance(x) != top) return "r(x,{y}) != q(q^2+q-1)";
          for (PointId z = y + 1; z < model.size(); ++z) {
            if (one.covered(z)) continue;
            one.add(z);
            for (PointId x = 0; x < model.size(); ++x)
              if (!one.covered(x)) seen.insert(one.relevance(x));
            one.remove(z);
          }
        }
        if (seen != expected) return "pair relevance values differ from the expected three";
        return {};
      });
    }
  }

  std::vector<CheckResult> results;
  for (auto& [name, fn] : checks) {
    std::string detail = fn();
    const bool ok = detail.empty();
    results.push_back(CheckResult{name, ok, std::move(detail)});
    if (!ok) break;
  }
  return results;
}

}  // namespace hermcap
