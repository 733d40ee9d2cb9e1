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

#include "qseg/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qseg/datasets.hpp"
#include "qseg/hamiltonian.hpp"
#include "qseg/imagegraph.hpp"
#include "qseg/oracles.hpp"
#include "qseg/qaoa.hpp"
#include "qseg/statevector.hpp"

namespace qseg {

namespace {

constexpr double kPi = 3.141592653589793;

SegGraph random_graph(Rng& rng, int n, double edge_prob) {
  SegGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (uniform01(rng) < edge_prob) g.add_edge(a, b, uniform(rng, 0.0, 2.0));
    }
  }
  return g;
}

// Random graph with terminals wired to every pixel, as the segmentation graphs are.
SegGraph random_terminal_graph(Rng& rng, int pixels) {
  SegGraph g = random_graph(rng, pixels, 0.4);
  const Terminals t = g.add_terminals();
  for (int v = 0; v < pixels; ++v) {
    g.add_edge(v, t.source, uniform(rng, 0.0, 3.0));
    g.add_edge(v, t.sink, uniform(rng, 0.0, 3.0));
  }
  return g;
}

StateVector random_state(Rng& rng, int n) {
  StateVector s(n);
  double norm = 0.0;
  for (auto& a : s.amplitudes()) {
    a = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    norm += std::norm(a);
  }
  for (auto& a : s.amplitudes()) a /= std::sqrt(norm);
  return s;
}

std::vector<SegGraph> bas_graphs() {
  std::vector<SegGraph> out;
  for (const auto& item : generate_bas(3, 3, 0.2, 7)) {
    out.push_back(build_maxflow_graph(item.image, TerminalModel::binary_threshold()));
  }
  return out;
}

struct Suite {
  const VerifyOptions& opts;
  std::vector<CheckResult> results;

  void check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    if (r.passed) r.detail = "ok";
    results.push_back(std::move(r));
  }

  // Graph handed to the Hamiltonian builders.
  SegGraph hamiltonian_input(const SegGraph& g) const { return opts.corrupt_weight_sign ? g.scaled(-1.0) : g; }
};

std::string fail(const std::string& what, double got, double want) {
  std::ostringstream s;
  s.precision(12);
  s << what << ": got " << got << ", expected " << want;
  return s.str();
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  Suite suite{opts, {}};

  suite.check("statevector norm preservation", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 1));
    StateVector s = init_plus_state(8, {});
    PauliNoiseChannel noise(NoiseConfig{0.1, derive_seed(opts.seed, 2)});
    std::vector<double> diag(s.size());
    std::vector<int> all{0, 1, 2, 3, 4, 5, 6, 7};
    for (int step = 0; step < 200; ++step) {
      const int q = static_cast<int>(rng() % 8);
      switch (step % 4) {
        case 0:
          s.apply_gate(q, x_rotation(uniform(rng, 0.0, 2.0 * kPi)));
          break;
        case 1:
          for (auto& d : diag) d = uniform(rng, -3.0, 3.0);
          s.apply_diagonal_phase(diag, uniform(rng, 0.0, 2.0 * kPi));
          break;
        case 2:
          s.apply_mixer(uniform(rng, 0.0, 2.0 * kPi), all);
          break;
        default:
          noise.apply(s, all);
      }
      if (std::abs(s.norm_squared() - 1.0) > 1e-9) return fail("norm after step " + std::to_string(step), s.norm_squared(), 1.0);
    }
    return {};
  });

  suite.check("mixer factorization", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 3));
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + trial % 7;
      const double theta = uniform(rng, -kPi, kPi);
      StateVector a = random_state(rng, n);
      StateVector b = a;
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
      a.apply_mixer(theta, all);
      for (int q = 0; q < n; ++q) b.apply_gate(q, x_rotation(theta));
      for (std::size_t z = 0; z < a.size(); ++z) {
        if (std::abs(a[z] - b[z]) > 1e-10) return fail("amplitude difference", std::abs(a[z] - b[z]), 0.0);
      }
    }
    return {};
  });

  suite.check("phase evolution preserves probabilities", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 4));
    StateVector s = random_state(rng, 6);
    const auto before = s.probabilities();
    std::vector<double> diag(s.size());
    for (auto& d : diag) d = uniform(rng, -5.0, 5.0);
    s.apply_diagonal_phase(diag, 1.234);
    const auto after = s.probabilities();
    for (std::size_t z = 0; z < before.size(); ++z) {
      if (std::abs(before[z] - after[z]) > 1e-12) return fail("probability change", after[z], before[z]);
    }
    return {};
  });

  suite.check("pinned terminal bits conserved", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 5));
    for (const auto& g : bas_graphs()) {
      const auto problem = QaoaProblem::mincut(g);
      const QaoaParams params{{uniform(rng, 0.0, kPi)}, {uniform(rng, 0.0, kPi)}};
      const auto probs = prepare_state(problem, params).probabilities();
      double leaked = 0.0;
      for (BasisIndex z = 0; z < probs.size(); ++z) {
        if (!problem.admissible(z)) leaked += probs[z];
      }
      if (leaked > 1e-12) return fail("probability on inadmissible states", leaked, 0.0);
    }
    return {};
  });

  suite.check("cut Hamiltonians match brute force", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 6));
    for (int trial = 0; trial < 20; ++trial) {
      const SegGraph g = random_graph(rng, 2 + trial % 9, 0.5);
      const auto maxcut = maxcut_hamiltonian(suite.hamiltonian_input(g));
      const auto mincut = mincut_hamiltonian(suite.hamiltonian_input(g));
      for (BasisIndex z = 0; z < maxcut.size(); ++z) {
        const double want = cut_weight(g, z);
        if (std::abs(maxcut[z] - want) > 1e-9) return fail("maxcut value", maxcut[z], want);
        if (std::abs(mincut[z] + want) > 1e-9) return fail("mincut value", mincut[z], -want);
      }
    }
    return {};
  });

  suite.check("eigenvalue consistency", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 7));
    const SegGraph g = random_graph(rng, 6, 0.6);
    const auto h = maxcut_hamiltonian(suite.hamiltonian_input(g));
    for (BasisIndex z = 0; z < h.size(); ++z) {
      const double got = eval_objective(h, StateVector::basis_state(6, z));
      if (got != h[z]) return fail("basis-state expectation", got, h[z]);
    }
    return {};
  });

  suite.check("min-cut oracles agree", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 8));
    std::vector<SegGraph> graphs = bas_graphs();
    for (int trial = 0; trial < 50; ++trial) graphs.push_back(random_terminal_graph(rng, 1 + trial % 11));
    for (const auto& g : graphs) {
      const auto flow = edmonds_karp(g);
      const auto brute = exhaustive_mincut(g);
      if (std::abs(flow.cut.value - brute.value) > 1e-9) return fail("max-flow cut value", flow.cut.value, brute.value);
      if (std::abs(flow.flow - brute.value) > 1e-9) return fail("max-flow value", flow.flow, brute.value);
      if (flow.cut.partition != brute.partition) return "partitions differ: " + flow.cut.bitstring() + " vs " + brute.bitstring();
      const auto h = mincut_hamiltonian(suite.hamiltonian_input(g));
      const BasisIndex best = h.argmax([&](BasisIndex z) { return is_admissible(g, z); });
      if (best != brute.partition) {
        return "Hamiltonian argmax " + to_bitstring(best, g.n_vertices()) + " differs from oracle " + brute.bitstring();
      }
    }
    return {};
  });

  suite.check("normalized cut consistency", [&]() -> std::string {
    Rng rng(derive_seed(opts.seed, 9));
    for (int trial = 0; trial < 10; ++trial) {
      const SegGraph g = random_graph(rng, 8, 0.5);
      const auto h = ncut_hamiltonian(suite.hamiltonian_input(g));
      const BasisIndex full = all_ones(8);
      double best = -1e300;
      for (BasisIndex z = 0; z < h.size(); ++z) {
        if (h[z] != h[z ^ full]) return fail("bit-flip symmetry", h[z], h[z ^ full]);
        const auto nc = normalized_cut(g, z);
        if (!nc) continue;
        if (*nc < -1e-12 || *nc > 2.0 + 1e-12) return fail("Ncut bound", *nc, 1.0);
        if (std::abs(h[z] + *nc) > 1e-9) return fail("Ncut value", -h[z], *nc);
        best = std::max(best, h[z]);
      }
      const auto oracle = exhaustive_ncut(g);
      if (std::abs(best + oracle.value) > 1e-9) return fail("Ncut optimum", -best, oracle.value);
    }
    return {};
  });

  suite.check("bars and stripes counts", [&]() -> std::string {
    for (int r = 2; r <= 4; ++r) {
      for (int c = 2; c <= 4; ++c) {
        // Enumerate every binary image and keep the non-uniform row- or
        // column-constant ones.
        std::size_t brute = 0;
        for (std::uint32_t z = 1; z + 1 < (1U << (r * c)); ++z) {
          bool rows_const = true;
          bool cols_const = true;
          for (int i = 0; i < r; ++i) {
            for (int j = 0; j < c; ++j) {
              const auto px = (z >> (i * c + j)) & 1U;
              if (px != ((z >> (i * c)) & 1U)) rows_const = false;
              if (px != ((z >> j) & 1U)) cols_const = false;
            }
          }
          if (rows_const || cols_const) ++brute;
        }
        const auto n = generate_bas(r, c, 0.0, 0).size();
        if (n != brute) return fail("generated patterns", static_cast<double>(n), static_cast<double>(brute));
        if (bas_pattern_count(r, c) != brute) {
          return fail("pattern count", static_cast<double>(bas_pattern_count(r, c)), static_cast<double>(brute));
        }
      }
    }
    if (bas_pattern_count(3, 3) != 12 || bas_pattern_count(4, 4) != 28) return "closed form differs from 12 / 28";
    return {};
  });

  suite.check("grid edge count", [&]() -> std::string {
    for (int w = 1; w <= 8; ++w) {
      for (int h = 1; h <= 8; ++h) {
        const auto g = build_grid_graph(make_image(w, h, std::vector<double>(static_cast<std::size_t>(w * h), 0.5)));
        const auto want = static_cast<std::size_t>(w * (h - 1) + h * (w - 1));
        if (g.edges().size() != want) return fail("edges", static_cast<double>(g.edges().size()), static_cast<double>(want));
      }
    }
    return {};
  });

  return std::move(suite.results);
}

}  // namespace qseg
