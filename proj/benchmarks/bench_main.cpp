// Copyright 2026 The egomotion Authors
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

#include "egomotion/estimator.hpp"
#include "egomotion/evaluation.hpp"

namespace egomotion {
namespace {

const ImageBuffer& base() {
  static const ImageBuffer b = textured_image(512, 512, 1);
  return b;
}

FramePair pair_at(int w, int h) {
  const Intrinsics intr = Intrinsics::for_view_angle(w, h, 90.0);
  const Intrinsics base_intr{intr.focal_px, 255.5, 255.5};
  return render_pair(base(), base_intr, random_params(11, MotionType::kPlain), w, h, intr);
}

void BM_EstimateMotion(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0)), h = static_cast<int>(state.range(1));
  const FramePair fp = pair_at(w, h);
  const Intrinsics intr = Intrinsics::for_view_angle(w, h, 90.0);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_motion(fp.f, fp.g, intr));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EstimateMotion)->Args({284, 188})->Args({256, 256})->Unit(benchmark::kMillisecond);

void BM_WarpImage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ImageBuffer img = crop(base(), 0, 0, n, n);
  const Intrinsics intr = Intrinsics::for_view_angle(n, n, 90.0);
  const ProjectiveMap m = psi_map(random_params(3, MotionType::kPlain));
  for (auto _ : state) benchmark::DoNotOptimize(warp_image(img, m, intr));
  state.SetBytesProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_WarpImage)->Arg(128)->Arg(256)->Arg(512);

void BM_BuildPyramid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ImageBuffer img = crop(base(), 0, 0, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(build_pyramid(img, 32));
}
BENCHMARK(BM_BuildPyramid)->Arg(256)->Arg(512);

void BM_Gradients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gradients(base()));
}
BENCHMARK(BM_Gradients);

}  // namespace
}  // namespace egomotion

BENCHMARK_MAIN();
