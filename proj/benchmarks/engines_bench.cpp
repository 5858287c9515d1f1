#include <benchmark/benchmark.h>

#include <random>

#include "preq/gameprob.hpp"
#include "preq/measureprob.hpp"
#include "preq/random.hpp"
#include "preq/strategies.hpp"

namespace {

using namespace preq;

std::vector<EventUnion> events_at(std::size_t horizon, std::size_t boxes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomEventOptions opts;
  opts.min_horizon = opts.max_horizon = horizon;
  opts.min_boxes = opts.max_boxes = boxes;
  std::vector<EventUnion> out;
  for (int i = 0; i < 16; ++i) out.push_back(random_event(rng, opts));
  return out;
}

void BM_GameEngine(benchmark::State& state) {
  const auto events = events_at(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(upper_game_probability(events[i++ % events.size()]));
}
BENCHMARK(BM_GameEngine)->Args({2, 3})->Args({3, 3})->Args({4, 3})->Args({3, 6});

void BM_MeasureDP(benchmark::State& state) {
  const auto events = events_at(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(measure_upper_probability(events[i++ % events.size()]).value);
}
BENCHMARK(BM_MeasureDP)->Args({2, 3})->Args({3, 3})->Args({4, 3})->Args({3, 6});

void BM_GridOracle(benchmark::State& state) {
  const auto events = events_at(2, 3, 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(grid_bruteforce(events[i++ % events.size()], 4));
}
BENCHMARK(BM_GridOracle);

void BM_CalibrationStream(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto stream = sample_constant_stream(Forecast(Rational(1, 3)), n, 5);
  for (auto _ : state) {
    CalibrationState s = CalibrationState::start(n, 2);
    for (const Step& step : stream) s = calibration_step(std::move(s), step).first;
    benchmark::DoNotOptimize(calibration_verdict(s).ratio);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n));
}
BENCHMARK(BM_CalibrationStream)->Arg(100)->Arg(1000)->Arg(10000);

void BM_MonteCarlo(benchmark::State& state) {
  const auto events = events_at(3, 3, 3);
  std::mt19937_64 rng(4);
  const ForecastingSystem phi = random_forecasting_system(rng, events.front());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        monte_carlo_probability(phi, events.front(), 10000, 7, static_cast<unsigned>(state.range(0))).hits);
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
