#include <benchmark/benchmark.h>

#include <vector>

#include "dispatchkit/adam.hpp"
#include "dispatchkit/lstm.hpp"
#include "dispatchkit/rng.hpp"
#include "dispatchkit/window.hpp"

namespace {

using namespace dispatchkit;
using namespace dispatchkit::forecast;

std::vector<double> window_input() {
  Rng rng(1);
  std::vector<double> x(kHistorySlots);
  for (double& v : x) v = rng.uniform();
  return x;
}

void BM_Forward(benchmark::State& state) {
  const LstmParams p = LstmParams::initialize({1, static_cast<int>(state.range(0)), 48}, 3);
  const auto input = window_input();
  for (auto _ : state) benchmark::DoNotOptimize(forward(p, input).data());
}
BENCHMARK(BM_Forward)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

// One training step on a full 29-day window: BPTT, clipping and ADAM.
void BM_TrainStep(benchmark::State& state) {
  const LstmDims dims{1, static_cast<int>(state.range(0)), 48};
  LstmParams p = LstmParams::initialize(dims, 3);
  AdamState adam = AdamState::zeros(dims);
  const auto input = window_input();
  const std::vector<double> target(48, 0.5);
  for (auto _ : state) {
    LossGradient lg = backward(p, input, target);
    clip_global_norm(lg.grad, 5.0);
    adam_step(adam, p, lg.grad, {});
  }
}
BENCHMARK(BM_TrainStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
