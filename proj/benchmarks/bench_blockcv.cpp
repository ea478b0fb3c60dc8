#include <benchmark/benchmark.h>

#include <vector>

#include "blockcv/bibd.hpp"
#include "blockcv/cv.hpp"
#include "blockcv/experiment.hpp"
#include "blockcv/occurrence.hpp"
#include "blockcv/split.hpp"

namespace {

void SplitEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const blockcv::SplitConfig cfg{n, n / 20, n / 8};
  for (auto _ : state) {
    long long total = 0;
    for (const blockcv::Split& s : blockcv::SplitRange(cfg)) {
      total += s.train_size();
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetComplexityN(n);
}
BENCHMARK(SplitEnumeration)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void OccurrenceBruteforce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const blockcv::SplitConfig cfg{n, 0, n / 8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockcv::count_bruteforce(cfg));
  }
  state.SetComplexityN(n);
}
BENCHMARK(OccurrenceBruteforce)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void OccurrenceAnalytic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockcv::occurrence_matrix(n, n / 8));
  }
  state.SetComplexityN(n);
}
BENCHMARK(OccurrenceAnalytic)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void VerifyHvDesign(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const blockcv::Design d = blockcv::hv_design(n, n / 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockcv::verify_bibd(d));
  }
  state.SetComplexityN(n);
}
BENCHMARK(VerifyHvDesign)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void CvTrainMean(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> series = blockcv::gen_ar1(n, 0.5, 1.0, 7);
  const blockcv::Evaluator eval = blockcv::train_mean_evaluator();
  const blockcv::SplitConfig cfg{n, n / 20, n / 8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(blockcv::cv_hv(series, cfg, eval));
  }
  state.SetComplexityN(n);
}
BENCHMARK(CvTrainMean)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
