#include <benchmark/benchmark.h>

#include "dispatchkit/cost.hpp"
#include "dispatchkit/dispatch.hpp"
#include "dispatchkit/synthetic.hpp"

namespace {

using namespace dispatchkit;

void BM_YearScenario(benchmark::State& state) {
  const YearSeries load = generate_synthetic(42, SyntheticProfile::Load);
  const YearSeries pv = generate_synthetic(7, SyntheticProfile::Pv);
  const auto c = kAllCases[static_cast<std::size_t>(state.range(0))];
  const TariffSchedule tariff;
  const BatterySpec spec;
  for (auto _ : state) {
    const DispatchTrace trace = run_scenario(c, tariff, spec, load, pv);
    benchmark::DoNotOptimize(cost_of_trace(trace, tariff).net_cost);
  }
  state.SetItemsProcessed(state.iterations() * kSlotsPerYear);
  state.SetLabel(std::string(to_string(c)));
}
BENCHMARK(BM_YearScenario)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_GenerateYear(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_synthetic(seed++, SyntheticProfile::Pv).values().data());
  }
}
BENCHMARK(BM_GenerateYear)->Unit(benchmark::kMillisecond);

}  // namespace
