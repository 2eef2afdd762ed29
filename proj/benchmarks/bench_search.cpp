#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "hermcap/capstate.hpp"
#include "hermcap/hermitian.hpp"
#include "hermcap/search.hpp"

namespace {

const hermcap::SurfaceModel& model_for(unsigned q) {
  static std::map<unsigned, std::unique_ptr<hermcap::SurfaceModel>> cache;
  auto& slot = cache[q];
  if (!slot)
    slot = std::make_unique<hermcap::SurfaceModel>(
        hermcap::enumerate_surface(hermcap::build_field(hermcap::FieldSpec::from_q(q))));
  return *slot;
}

void BM_EnumerateSurface(benchmark::State& state) {
  const auto q = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto model = hermcap::enumerate_surface(hermcap::build_field(hermcap::FieldSpec::from_q(q)));
    benchmark::DoNotOptimize(model.size());
  }
}
BENCHMARK(BM_EnumerateSurface)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Generators(benchmark::State& state) {
  const auto q = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    auto model = hermcap::enumerate_surface(hermcap::build_field(hermcap::FieldSpec::from_q(q)));
    state.ResumeTiming();
    benchmark::DoNotOptimize(model.generators().size());
  }
}
BENCHMARK(BM_Generators)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_RelevanceScan(benchmark::State& state) {
  const auto& model = model_for(static_cast<unsigned>(state.range(0)));
  hermcap::CapState cap(model);
  hermcap::Rng rng(7);
  for (int i = 0; i < 20 && !cap.is_complete(); ++i) {
    const auto open = cap.uncovered();
    cap.add(open[rng.below(open.size())]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(cap.r_extrema());
}
BENCHMARK(BM_RelevanceScan)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

template <hermcap::Strategy S>
void BM_Complete(benchmark::State& state) {
  const auto& model = model_for(static_cast<unsigned>(state.range(0)));
  hermcap::SearchConfig config;
  config.strategy = S;
  for (auto _ : state) {
    ++config.rng_seed;
    benchmark::DoNotOptimize(hermcap::complete(model, {}, config).final_cap.size());
  }
}
BENCHMARK(BM_Complete<hermcap::Strategy::Random>)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Complete<hermcap::Strategy::MinRelevance>)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Complete<hermcap::Strategy::Backtrack>)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SelectForward(benchmark::State& state) {
  const auto& model = model_for(5);
  hermcap::Rng rng(11);
  const auto seed = hermcap::sample_subcap(model.classical_ovoid(), static_cast<std::size_t>(state.range(0)), rng);
  const hermcap::CapState cap(model, seed);
  for (auto _ : state) benchmark::DoNotOptimize(hermcap::select_forward(cap, rng, hermcap::ForwardTieMode::MaxCount));
}
BENCHMARK(BM_SelectForward)->Arg(34)->Arg(69)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
