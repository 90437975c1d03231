// Copyright 2026 The pinchcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pinchcert/symmetric_function.hpp"

namespace pinchcert {
namespace {

const CurvaturePoint kPoint{1.3, 0.9, 2.2};

void BM_Jet(benchmark::State& state, const char* name) {
  const auto f = SymmetricFunction::from_name(name);
  for (auto _ : state) benchmark::DoNotOptimize(f.jet(kPoint));
}

void BM_Value(benchmark::State& state, const char* name) {
  const auto f = SymmetricFunction::from_name(name);
  for (auto _ : state) benchmark::DoNotOptimize(f.value(kPoint));
}

BENCHMARK_CAPTURE(BM_Jet, H3, "H3");
BENCHMARK_CAPTURE(BM_Jet, phi_H3, "phi_H3");
BENCHMARK_CAPTURE(BM_Jet, psi_H3, "psi_H3");
BENCHMARK_CAPTURE(BM_Jet, phi_A2, "phi_A2");
BENCHMARK_CAPTURE(BM_Jet, psi_K, "psi_K");
BENCHMARK_CAPTURE(BM_Value, phi_H3, "phi_H3");
BENCHMARK_CAPTURE(BM_Value, psi_H3, "psi_H3");

void BM_ComposedJet(benchmark::State& state) {
  const auto h = SymmetricFunction::mean_curvature();
  const auto f = SymmetricFunction::norm_squared() / (h * h) + SymmetricFunction::phi_k();
  for (auto _ : state) benchmark::DoNotOptimize(f.jet(kPoint));
}
BENCHMARK(BM_ComposedJet);

}  // namespace
}  // namespace pinchcert
