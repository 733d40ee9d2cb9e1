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

#include "qseg/oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace qseg {

namespace {

constexpr double kResidualEps = 1e-12;

void check_enumerable(const SegGraph& g) {
  if (g.n_vertices() > kMaxQubits) {
    throw CapacityError("exhaustive enumeration limited to " + std::to_string(kMaxQubits) + " vertices");
  }
  if (g.n_vertices() < 1) throw std::invalid_argument("graph has no vertices");
}

bool better(double value, BasisIndex z, double best_value, BasisIndex best, int n) {
  return value < best_value || (value == best_value && lex_less(z, best, n));
}

}  // namespace

double cut_weight(const SegGraph& g, BasisIndex z) {
  double acc = 0.0;
  for (const auto& e : g.edges()) {
    if (g.side(z, e.a) != g.side(z, e.b)) acc += e.weight;
  }
  return acc;
}

std::optional<double> normalized_cut(const SegGraph& g, BasisIndex z) {
  double deg[2] = {0.0, 0.0};
  double cut = 0.0;
  for (const auto& e : g.edges()) {
    const int sa = g.side(z, e.a);
    const int sb = g.side(z, e.b);
    deg[sa] += e.weight;
    deg[sb] += e.weight;
    if (sa != sb) cut += e.weight;
  }
  if (!(deg[0] > 0.0) || !(deg[1] > 0.0)) return std::nullopt;
  return cut * (1.0 / deg[0] + 1.0 / deg[1]);
}

bool is_admissible(const SegGraph& g, BasisIndex z) {
  const auto& t = g.terminals();
  if (!t) return true;
  return g.side(z, t->source) == 0 && g.side(z, t->sink) == 1;
}

CutResult exhaustive_mincut(const SegGraph& g) {
  check_enumerable(g);
  const int n = g.n_vertices();
  CutResult best{0, n, std::numeric_limits<double>::infinity(), CutMethod::kExhaustive};
  for (BasisIndex z = 0; z < (BasisIndex{1} << n); ++z) {
    if (!is_admissible(g, z)) continue;
    const double value = cut_weight(g, z);
    if (better(value, z, best.value, best.partition, n)) {
      best.value = value;
      best.partition = z;
    }
  }
  return best;
}

MaxflowResult edmonds_karp(const SegGraph& g) {
  const auto& terminals = g.terminals();
  if (!terminals) throw std::invalid_argument("max-flow needs source and sink terminals");
  if (g.n_vertices() > 64) throw CapacityError("partition encoding limited to 64 vertices");
  for (const auto& e : g.edges()) {
    if (e.weight < 0.0) throw std::invalid_argument("max-flow requires nonnegative capacities");
  }

  // Residual arcs stored in pairs: arc i and arc i^1 are mutual reverses.
  struct Arc {
    int to;
    double residual;
  };
  const auto n = static_cast<std::size_t>(g.n_vertices());
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(n);
  for (const auto& e : g.edges()) {
    out[static_cast<std::size_t>(e.a)].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({e.b, e.weight});
    out[static_cast<std::size_t>(e.b)].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({e.a, e.weight});
  }

  const int s = terminals->source;
  const int t = terminals->sink;
  double flow = 0.0;
  std::vector<int> via(n);
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{s};
    via[static_cast<std::size_t>(s)] = -2;
    while (!queue.empty() && via[static_cast<std::size_t>(t)] == -1) {
      const int u = queue.front();
      queue.pop_front();
      for (int ai : out[static_cast<std::size_t>(u)]) {
        const Arc& a = arcs[static_cast<std::size_t>(ai)];
        if (a.residual > kResidualEps && via[static_cast<std::size_t>(a.to)] == -1) {
          via[static_cast<std::size_t>(a.to)] = ai;
          queue.push_back(a.to);
        }
      }
    }
    if (via[static_cast<std::size_t>(t)] == -1) break;

    double bottleneck = std::numeric_limits<double>::infinity();
    for (int v = t; v != s;) {
      const int ai = via[static_cast<std::size_t>(v)];
      bottleneck = std::min(bottleneck, arcs[static_cast<std::size_t>(ai)].residual);
      v = arcs[static_cast<std::size_t>(ai ^ 1)].to;
    }
    for (int v = t; v != s;) {
      const int ai = via[static_cast<std::size_t>(v)];
      arcs[static_cast<std::size_t>(ai)].residual -= bottleneck;
      arcs[static_cast<std::size_t>(ai ^ 1)].residual += bottleneck;
      v = arcs[static_cast<std::size_t>(ai ^ 1)].to;
    }
    flow += bottleneck;
  }

  // Sink side: vertices with a residual path to t. Walk arcs backwards: u
  // reaches v's set if the arc u->v (the reverse of v->u) has capacity left.
  std::vector<bool> sink_side(n, false);
  std::deque<int> queue{t};
  sink_side[static_cast<std::size_t>(t)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int ai : out[static_cast<std::size_t>(v)]) {
      const Arc& reverse = arcs[static_cast<std::size_t>(ai ^ 1)];  // arc (to -> v)
      const int u = arcs[static_cast<std::size_t>(ai)].to;
      if (reverse.residual > kResidualEps && !sink_side[static_cast<std::size_t>(u)]) {
        sink_side[static_cast<std::size_t>(u)] = true;
        queue.push_back(u);
      }
    }
  }

  BasisIndex z = 0;
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (sink_side[static_cast<std::size_t>(v)]) z |= BasisIndex{1} << g.qubit(v);
  }
  return {CutResult{z, g.n_vertices(), cut_weight(g, z), CutMethod::kMaxflow}, flow};
}

CutResult maxflow_mincut(const SegGraph& g) { return edmonds_karp(g).cut; }

CutResult exhaustive_ncut(const SegGraph& g) {
  check_enumerable(g);
  if (g.has_terminals()) throw std::invalid_argument("normalized cuts operate on graphs without terminals");
  for (const auto& e : g.edges()) {
    if (e.weight < 0.0) throw std::invalid_argument("normalized cuts require nonnegative weights");
  }
  const int n = g.n_vertices();
  CutResult best{0, n, std::numeric_limits<double>::infinity(), CutMethod::kExhaustive};
  bool found = false;
  for (BasisIndex z = 0; z < (BasisIndex{1} << n); ++z) {
    const auto value = normalized_cut(g, z);
    if (!value) continue;
    if (!found || better(*value, z, best.value, best.partition, n)) {
      best.value = *value;
      best.partition = z;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("graph admits no proper bipartition");
  return best;
}

double dice(const Mask& a, const Mask& b) {
  if (a.size() != b.size()) throw std::invalid_argument("masks differ in length");
  std::size_t na = 0;
  std::size_t nb = 0;
  std::size_t both = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i] ? 1 : 0;
    nb += b[i] ? 1 : 0;
    both += (a[i] && b[i]) ? 1 : 0;
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

Mask complement(const Mask& m) {
  Mask out(m.size());
  std::transform(m.begin(), m.end(), out.begin(), [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 0 : 1); });
  return out;
}

double dice_label_ambiguous(const Mask& a, const Mask& b) { return std::max(dice(a, b), dice(complement(a), b)); }

}  // namespace qseg
