// Copyright 2026 The hybridsim Authors
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

#include <cmath>

#include "hybridsim/thinning.hpp"

namespace hybridsim {
namespace {

// Filled ellipse with a few radial bars, roughly what the ridge map looks like.
BinaryImage ridge_like(int n) {
  BinaryImage m(n, n, 0);
  const double c = n / 2.0;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double dx = x - c, dy = y - c;
      const double r = std::hypot(dx, dy);
      const double a = std::atan2(dy, dx);
      const bool bar = r > 0.2 * n && r < 0.45 * n && std::abs(std::sin(3.0 * a)) < 0.08;
      const bool blob = (dx * dx) / (0.1 * n * n) + (dy * dy) / (0.02 * n * n) < 1.0;
      m(x, y) = bar || blob;
    }
  return m;
}

void BM_Thin(benchmark::State& state) {
  const BinaryImage m = ridge_like(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thin(m));
}
BENCHMARK(BM_Thin)->Arg(128)->Arg(256);

void BM_ExtractSegments(benchmark::State& state) {
  const Skeleton s = thin(ridge_like(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(extract_segments(s));
}
BENCHMARK(BM_ExtractSegments)->Arg(256);

}  // namespace
}  // namespace hybridsim
