#include <benchmark/benchmark.h>

#include <cmath>

#include "aperiodic/diffraction.hpp"
#include "aperiodic/modelset.hpp"

namespace {

const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;

aperiodic::Cps fibonacci() {
  aperiodic::Matrix b(2);
  b.at(0, 0) = 1.0;
  b.at(0, 1) = kTau;
  b.at(1, 0) = 1.0;
  b.at(1, 1) = 1.0 - kTau;
  return aperiodic::Cps::make(1, 1, b);
}

aperiodic::Window window() {
  return aperiodic::Window(1, {aperiodic::Box({-1.0}, {kTau - 1.0})});
}

void BM_enumerate(benchmark::State& state) {
  const auto cps = fibonacci();
  const double r = static_cast<double>(state.range(0));
  const aperiodic::Box phys({-r}, {r});
  const aperiodic::Box internal({-2.0}, {2.0});
  for (auto _ : state) benchmark::DoNotOptimize(cps.enumerate(phys, internal));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * r));
}
BENCHMARK(BM_enumerate)->Arg(100)->Arg(1000)->Arg(10000);

void BM_cut_project(benchmark::State& state) {
  const auto cps = fibonacci();
  const auto w = window();
  const double r = static_cast<double>(state.range(0));
  const aperiodic::Box region({-r}, {r});
  for (auto _ : state)
    benchmark::DoNotOptimize(cut_project(cps, w, {0.0}, {0.0}, region));
}
BENCHMARK(BM_cut_project)->Arg(100)->Arg(1000)->Arg(10000);

void BM_covariogram(benchmark::State& state) {
  // Fragmented window: covariogram cost scales with box-pair count.
  std::vector<aperiodic::Box> boxes;
  const int pieces = static_cast<int>(state.range(0));
  for (int i = 0; i < pieces; ++i)
    boxes.emplace_back(aperiodic::Vec{i * 1.0}, aperiodic::Vec{i * 1.0 + 0.6});
  const aperiodic::Window w(1, boxes);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.covariogram({t}));
    t = std::fmod(t + 0.37, pieces * 1.0);
  }
}
BENCHMARK(BM_covariogram)->Arg(2)->Arg(16)->Arg(128);

void BM_predicted_diffraction(benchmark::State& state) {
  const auto cps = fibonacci();
  const auto w = window();
  const double threshold = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(aperiodic::predicted_diffraction(cps, w, 5.0, threshold));
}
BENCHMARK(BM_predicted_diffraction)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
