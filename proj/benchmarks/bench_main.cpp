#include <benchmark/benchmark.h>

#include <vector>

#include "wvc/awareness.hpp"
#include "wvc/corridor.hpp"
#include "wvc/engine.hpp"
#include "wvc/radar.hpp"
#include "wvc/vehicle.hpp"

namespace {

void BM_IdmAcceleration(benchmark::State& state) {
  wvc::IdmParams p;
  double s = 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wvc::idm_acceleration(20.0, 22.2, 1.5, s, p));
    s += 1e-9;
  }
}
BENCHMARK(BM_IdmAcceleration);

void BM_TryDetect(benchmark::State& state) {
  wvc::CorridorConfig config;
  config.radar_spacing = static_cast<double>(state.range(0));
  const auto radars = wvc::place_radars(config);
  const auto awareness = wvc::AwarenessState::make(wvc::Mode::Aware, radars.size());
  const wvc::DetectionParams params{config.kappa, config.radar_range, config.boost_factor};
  wvc::Rng rng(7);
  wvc::AnimalState animal;
  animal.x = 500.0;
  animal.y = 8.0;
  for (auto _ : state) {
    animal.detected = false;
    animal.first_in_range_at.reset();
    animal.detected_at.reset();
    benchmark::DoNotOptimize(wvc::try_detect(animal, radars, awareness, 0.0, config.time_step, params, rng));
  }
}
BENCHMARK(BM_TryDetect)->Arg(5)->Arg(15)->Arg(40);

void BM_RunTrial(benchmark::State& state) {
  wvc::CorridorConfig config;
  config.mode = static_cast<wvc::Mode>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wvc::run_trial(config, 0.25, trial++, 42));
  }
  state.SetLabel(std::string(wvc::to_string(config.mode)));
}
BENCHMARK(BM_RunTrial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
