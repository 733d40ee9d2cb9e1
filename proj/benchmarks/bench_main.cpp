// Copyright 2026 The qseg Authors
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

#include <numeric>
#include <vector>

#include "qseg/datasets.hpp"
#include "qseg/hamiltonian.hpp"
#include "qseg/imagegraph.hpp"
#include "qseg/oracles.hpp"
#include "qseg/qaoa.hpp"
#include "qseg/statevector.hpp"

using namespace qseg;

namespace {

SegGraph bas_graph(int side) {
  const auto items = generate_bas(side, side, 0.2, 1);
  return build_maxflow_graph(items.front().image, TerminalModel::binary_threshold(0.1, 0.05));
}

void BM_Mixer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s = init_plus_state(n, {});
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (auto _ : state) {
    s.apply_mixer(0.3, all);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()) * n);
}
BENCHMARK(BM_Mixer)->Arg(11)->Arg(16)->Arg(18);

void BM_DiagonalPhase(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s = init_plus_state(n, {});
  std::vector<double> diag(s.size());
  for (std::size_t z = 0; z < diag.size(); ++z) diag[z] = static_cast<double>(z % 17);
  for (auto _ : state) {
    s.apply_diagonal_phase(diag, 0.7);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_DiagonalPhase)->Arg(11)->Arg(16)->Arg(18);

void BM_Objective(benchmark::State& state) {
  const auto problem = QaoaProblem::mincut(bas_graph(static_cast<int>(state.range(0))));
  QaoaEvaluator ev(problem);
  const QaoaParams params{{0.4, 0.9, 1.3}, {1.1, 2.0, 0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(ev.objective(params));
}
BENCHMARK(BM_Objective)->Arg(3)->Arg(4);

void BM_MincutHamiltonian(benchmark::State& state) {
  const SegGraph g = bas_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mincut_hamiltonian(g).values().data());
}
BENCHMARK(BM_MincutHamiltonian)->Arg(3)->Arg(4);

void BM_Maxflow(benchmark::State& state) {
  const SegGraph g = bas_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maxflow_mincut(g).partition);
}
BENCHMARK(BM_Maxflow)->Arg(3)->Arg(4);

void BM_ExhaustiveMincut(benchmark::State& state) {
  const SegGraph g = bas_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_mincut(g).partition);
}
BENCHMARK(BM_ExhaustiveMincut)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
