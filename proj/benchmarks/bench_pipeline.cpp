#include <benchmark/benchmark.h>

#include "behavigram/config.hpp"
#include "behavigram/gaze_entropy.hpp"
#include "behavigram/pipeline.hpp"
#include "behavigram/render.hpp"
#include "behavigram/resample.hpp"
#include "behavigram/rng.hpp"
#include "behavigram/savgol.hpp"
#include "behavigram/scenario.hpp"

using namespace behavigram;

namespace {

TimeSeries noise_series(std::size_t n, double rate) {
  CounterRng rng(1, "bench");
  TimeSeries s;
  s.stream_id = "bench";
  s.channels = {"v"};
  for (std::size_t i = 0; i < n; ++i) {
    s.timestamps.push_back(static_cast<double>(i) / rate);
    s.values.push_back(rng.gaussian());
  }
  return s;
}

const GeneratedScenario& abcde() {
  static const GeneratedScenario g = generate(abcde_scenario(1));
  return g;
}

}  // namespace

static void BM_SavgolFilter(benchmark::State& state) {
  const TimeSeries s = noise_series(static_cast<std::size_t>(state.range(0)), 40.0);
  const SavGolSpec spec{11, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(savgol_filter(s, spec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SavgolFilter)->Range(1 << 10, 1 << 16);

static void BM_ResampleUniform(benchmark::State& state) {
  const TimeSeries s = noise_series(static_cast<std::size_t>(state.range(0)), 40.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resample_uniform(s, 50.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ResampleUniform)->Range(1 << 10, 1 << 16);

static void BM_JointEntropy(benchmark::State& state) {
  CounterRng rng(2, "bench_entropy");
  std::vector<std::pair<int, int>> bins;
  for (long i = 0; i < state.range(0); ++i) {
    bins.emplace_back(static_cast<int>(rng.uniform() * 100),
                      static_cast<int>(rng.uniform() * 100));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_entropy_bits(bins));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JointEntropy)->Range(64, 4096);

static void BM_SlidingEntropy(benchmark::State& state) {
  const TimeSeries gaze = resample_uniform(abcde().recording.gaze, 50.0);
  GazeGridSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sliding_entropy(gaze, spec));
  }
}
BENCHMARK(BM_SlidingEntropy);

static void BM_AnalyzeFullSession(benchmark::State& state) {
  const PipelineConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(abcde().recording, cfg));
  }
}
BENCHMARK(BM_AnalyzeFullSession);

static void BM_RenderExtended(benchmark::State& state) {
  const PipelineConfig cfg;
  const AnalysisResult result = analyze(abcde().recording, cfg);
  BehaviorgramSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(render_behaviorgram(render_inputs(result), spec));
  }
}
BENCHMARK(BM_RenderExtended);

BENCHMARK_MAIN();
