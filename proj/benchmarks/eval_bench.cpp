#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "obmo/eval.hpp"
#include "support/generators.hpp"

namespace {

using namespace obmo;

std::vector<EvalFrame> random_frames(std::size_t count) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4), score(0, 1);
  std::vector<EvalFrame> frames;
  for (std::size_t f = 0; f < count; ++f) {
    EvalFrame frame{std::to_string(f), {}, {}};
    for (int i = 0; i < 8; ++i) {
      ObjectLabel gt = testing::random_car(rng, 5, 50);
      ObjectLabel det = gt;
      det.x += jitter(rng);
      det.z += jitter(rng);
      det.score = score(rng);
      frame.ground_truth.push_back(gt);
      frame.detections.push_back(det);
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void BM_EvaluateFrames(benchmark::State& state) {
  const auto frames = random_frames(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_frames(frames, "Car", 0.7));
  }
}
BENCHMARK(BM_EvaluateFrames)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ApR40(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> score(0, 1);
  std::vector<PrEvent> events;
  for (int i = 0; i < state.range(0); ++i) events.push_back({score(rng), (rng() & 1) != 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ap_r40(events, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ApR40)->Arg(1000)->Arg(100000);

}  // namespace
