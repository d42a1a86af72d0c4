// Copyright 2026 The invsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "invsynth/pipeline.hpp"

namespace {

using namespace invsynth;

std::filesystem::path asset(const char* rel) {
  return std::filesystem::path(INVSYNTH_SOURCE_DIR) / rel;
}

const SourceBundle& sample() {
  static const SourceBundle bundle =
      load_sources(load_config(asset("assets/sample/sample_config.json")));
  return bundle;
}

void BM_InpaintSamplePlan(benchmark::State& state) {
  const auto& s = sample();
  const auto plan = select_targets(s.layout, {});
  std::vector<BBox> boxes;
  for (const auto& e : plan.entries) boxes.push_back(s.layout.find(e.fragment_id)->bbox);
  const Mask mask = build_mask(s.image.width(), s.image.height(), boxes, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inpaint(s.image, mask, {static_cast<int>(state.range(0)), 2}));
  }
  state.counters["masked_px"] = static_cast<double>(mask.count());
}
BENCHMARK(BM_InpaintSamplePlan)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_RenderFragment(benchmark::State& state) {
  const auto& s = sample();
  RasterImage canvas(400, 60, Rgb{255, 255, 255});
  const BBox box{5, 5, 395, 55};
  for (auto _ : state) {
    RasterImage img = canvas;
    benchmark::DoNotOptimize(render_fragment(img, box, "Payment due within thirty days",
                                             s.font, static_cast<int>(state.range(0)), {}));
  }
}
BENCHMARK(BM_RenderFragment)->Arg(12)->Arg(24)->Arg(40);

void BM_FitFontSize(benchmark::State& state) {
  const auto& s = sample();
  const BBox box{0, 0, 200, 20};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_font_size("418 Harbor Way, Springfield", box, s.font));
  }
}
BENCHMARK(BM_FitFontSize);

void BM_MockGenerate(benchmark::State& state) {
  const auto plan = select_targets(sample().layout, {});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mock_generate(plan, seed++));
}
BENCHMARK(BM_MockGenerate);

void BM_SynthesizeSample(benchmark::State& state) {
  const auto config = load_config(asset("assets/sample/sample_config.json"));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(config, sample(), seed++));
}
BENCHMARK(BM_SynthesizeSample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
