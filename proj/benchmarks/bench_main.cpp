/*
 *            Copyright 2026 The gaplab Developers
 *
 *      Licensed under the Apache License, Version 2.0 (the "License")
 *
 * You may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *              http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <benchmark/benchmark.h>

#include "gaplab/evolve.hpp"
#include "gaplab/experiments.hpp"
#include "gaplab/invliou.hpp"
#include "gaplab/locality.hpp"
#include "gaplab/models.hpp"
#include "gaplab/sapt.hpp"

using namespace gaplab;

namespace {

Model frozen_chain(int k) { return Model(frozen_config(builtin_model("M1"), 0.5), k); }

void BM_Propagate(benchmark::State& state) {
  const Model m(builtin_model("M1"), static_cast<int>(state.range(0)));
  const TimeOperator h = [&](double t) { return m.h0_block(t); };
  for (auto _ : state) benchmark::DoNotOptimize(propagate(h, 0.1, 0.0, 0.5).u);
  state.SetLabel("block dim " + std::to_string(m.basis().size()));
}
BENCHMARK(BM_Propagate)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_InverseSpectral(benchmark::State& state) {
  const Model m = frozen_chain(static_cast<int>(state.range(0)));
  const EigenSystem es = diagonalize(m.h0_block(0.0));
  const WeightFunction w = m.weight();
  const Mat v = m.perturbation_block(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(inv_liouvillian_spectral(es, v, w));
}
BENCHMARK(BM_InverseSpectral)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_InverseTime(benchmark::State& state) {
  const Model m = frozen_chain(3);
  const EigenSystem es = diagonalize(m.h0_block(0.0));
  const WeightFunction w = m.weight();
  const Mat v = m.perturbation_block(0.0);
  QuadratureOptions opt;
  opt.tail_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inv_liouvillian_time(es, v, w, opt).value);
}
BENCHMARK(BM_InverseTime)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ConditionalExpectation(benchmark::State& state) {
  const Model m = frozen_chain(static_cast<int>(state.range(0)));
  const FockOperator h = m.h0(0.0);
  const SiteSet x = centred_sites(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(conditional_expectation(h, x, m.space()));
}
BENCHMARK(BM_ConditionalExpectation)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SaptConstruct(benchmark::State& state) {
  const Model m(builtin_model("M1"), 3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SaptBuilder b(m.sapt_problem(), m.weight());
    benchmark::DoNotOptimize(b.construct(0.5, n).a);
  }
}
BENCHMARK(BM_SaptConstruct)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Diagonalize(benchmark::State& state) {
  const Model m = frozen_chain(static_cast<int>(state.range(0)));
  const Mat h = m.h0_block(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h).values);
  state.SetLabel("block dim " + std::to_string(h.rows()));
}
BENCHMARK(BM_Diagonalize)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
