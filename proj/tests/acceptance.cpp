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

// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Exits nonzero when any gated criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qseg/datasets.hpp"
#include "qseg/experiment.hpp"
#include "qseg/hamiltonian.hpp"
#include "qseg/imagegraph.hpp"
#include "qseg/oracles.hpp"
#include "qseg/qaoa.hpp"
#include "qseg/statevector.hpp"
#include "qseg/verify.hpp"

namespace fs = std::filesystem;
using namespace qseg;

namespace {

// Dataset and statistics.
constexpr std::uint64_t kSeed = 2026;
constexpr double kBasNoise = 0.2;
constexpr int kRunsAc1 = 20;
constexpr int kRunsAc2 = 3;
constexpr int kRunsAc3 = 100;
constexpr int kRunsAc4 = 20;
constexpr int kRunsAc5 = 100;
constexpr int kRunsVessel = 10;

// Thresholds.
constexpr double kDiceExact = 0.99;
constexpr double kDiceAdamDeep = 0.95;
constexpr double kNoisyLow = 0.5;
constexpr double kNoisyHigh = 0.9;
constexpr double kNoisePauli = 0.05;
constexpr double kDiceNcut = 0.85;
constexpr double kSymmetryTol = 1e-9;
constexpr double kOracleTol = 1e-9;
constexpr double kMonotoneTol = 1e-9;
constexpr double kInvariantBudgetS = 300.0;
constexpr int kGridPoints = 32;

// Graph parameters for bars and stripes.
constexpr double kMaxflowLambda = 0.1;
constexpr double kMaxflowSigma = 0.05;
constexpr double kNcutSigma = 0.1;

// Bayesian budget grows with the number of angles; never below the
// library default of 60 evaluations.
int bayes_budget(int depth) { return std::max(60, 50 * depth); }

constexpr double kPi = 3.141592653589793;

int failures = 0;

void report(const std::string& name, bool passed, const std::string& detail, double seconds) {
  if (!passed) ++failures;
  std::printf("%-4s %s  %s  (%.1f s)\n", name.c_str(), passed ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
}

void info(const std::string& name, const std::string& detail, double seconds) {
  std::printf("%-4s INFO  %s  (%.1f s)\n", name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExperimentConfig bas_config(Method method, int rows, int cols, int runs) {
  ExperimentConfig cfg;
  cfg.method = method;
  cfg.dataset.bas_rows = rows;
  cfg.dataset.bas_cols = cols;
  cfg.dataset.bas_noise = kBasNoise;
  cfg.runs = runs;
  cfg.seed = kSeed;
  if (method == Method::kMaxflow) {
    cfg.lambda = kMaxflowLambda;
    cfg.sigma = kMaxflowSigma;
  } else {
    cfg.sigma = kNcutSigma;
  }
  return cfg;
}

void ac1() {
  Stopwatch sw;
  bool ok = true;
  std::string detail;
  for (int p = 1; p <= 3; ++p) {
    auto cfg = bas_config(Method::kMaxflow, 3, 3, kRunsAc1);
    cfg.depth = p;
    cfg.optimizer.max_iters = bayes_budget(p);
    const auto r = run_experiment(cfg);
    ok = ok && r.summary.dice_mean >= kDiceExact;
    detail += "p=" + std::to_string(p) + fmt(" mu=%.4f sd=%.4f; ", r.summary.dice_mean, r.summary.dice_std);
  }
  report("AC1", ok, "3x3 maxflow Bayes, 20 runs, need mu>=0.99: " + detail, sw.seconds());
}

void ac2() {
  Stopwatch sw;
  auto cfg = bas_config(Method::kMaxflow, 4, 4, kRunsAc2);
  cfg.optimizer.max_iters = bayes_budget(1);
  const auto r = run_experiment(cfg);
  report("AC2", r.summary.dice_mean >= kDiceExact,
         "4x4 maxflow p=1 Bayes, 3 runs, need mu>=0.99:" + fmt(" mu=%.4f sd=%.4f", r.summary.dice_mean, r.summary.dice_std),
         sw.seconds());
}

void ac3() {
  Stopwatch sw;
  double mu[4] = {};
  for (int p : {1, 3}) {
    auto cfg = bas_config(Method::kMaxflow, 3, 3, kRunsAc3);
    cfg.depth = p;
    cfg.optimizer = OptimizerConfig::adam_defaults();
    mu[p] = run_experiment(cfg).summary.dice_mean;
  }
  report("AC3", mu[1] < mu[3] && mu[3] >= kDiceAdamDeep,
         "3x3 maxflow Adam, 100 runs, need mu1<mu3 and mu3>=0.95:" + fmt(" mu1=%.4f mu3=%.4f", mu[1], mu[3]),
         sw.seconds());
}

void ac4() {
  Stopwatch sw;
  auto cfg = bas_config(Method::kMaxflow, 3, 3, kRunsAc4);
  cfg.noise = kNoisePauli;
  const auto r = run_experiment(cfg);
  const double mu = r.summary.dice_mean;
  report("AC4", mu >= kNoisyLow && mu <= kNoisyHigh,
         "3x3 noisy maxflow p=1, Pauli p=0.05, 20 runs, need mu in [0.5, 0.9]:" +
             fmt(" mu=%.4f sd=%.4f", mu, r.summary.dice_std),
         sw.seconds());
}

// Normalized-cut runs feed both AC5 and AC6.
void ac5_ac6() {
  Stopwatch sw;
  auto cfg = bas_config(Method::kNcut, 3, 3, kRunsAc5);
  const auto images = load_dataset(cfg.dataset, cfg.seed);
  const auto r = run_experiment(cfg, images);

  std::vector<std::string> oracle(images.size());
  std::vector<QaoaProblem> problems;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const SegGraph g = build_grid_graph(images[i].image, kNcutSigma);
    oracle[i] = exhaustive_ncut(g).bitstring();
    problems.push_back(QaoaProblem::ncut(g));
  }

  int failure_mode_hits = 0;
  double worst_asymmetry = 0.0;
  for (const auto& run : r.runs) {
    for (std::size_t i = 0; i < run.images.size(); ++i) {
      const auto& o = run.images[i];
      const bool middle_bar = o.id == "bas3x3_bars_010" || o.id == "bas3x3_stripes_010";
      if (middle_bar) {
        const Mask predicted = mask_from_string(o.predicted_mask);
        const bool matches_truth =
            predicted == images[i].mask || complement(predicted) == images[i].mask;
        const bool matches_oracle =
            o.winner == oracle[i] || mask_to_string(complement(predicted)) == oracle[i];
        if (!matches_truth && matches_oracle) ++failure_mode_hits;
      }

      const auto state = prepare_state(problems[i], QaoaParams{o.gamma, o.beta});
      const BasisIndex full = all_ones(state.n_qubits());
      for (BasisIndex z = 0; z < state.size(); ++z) {
        worst_asymmetry = std::max(worst_asymmetry, std::abs(std::norm(state[z]) - std::norm(state[z ^ full])));
      }
    }
  }
  const double seconds = sw.seconds();
  report("AC5", r.summary.dice_mean >= kDiceNcut && failure_mode_hits > 0,
         "3x3 ncut p=1 Bayes, 100 runs, need mu>=0.85 and a middle-bar oracle-consistent miss:" +
             fmt(" mu=%.4f sd=%.4f", r.summary.dice_mean, r.summary.dice_std) +
             " middle-bar misses matching oracle=" + std::to_string(failure_mode_hits),
         seconds);
  report("AC6", worst_asymmetry <= kSymmetryTol,
         "ncut output symmetry over every run and image:" + fmt(" max |P(z)-P(~z)|=%.3g", worst_asymmetry), 0.0);
}

SegGraph random_terminal_graph(Rng& rng, int pixels) {
  SegGraph g(pixels);
  for (int a = 0; a < pixels; ++a) {
    for (int b = a + 1; b < pixels; ++b) {
      if (uniform01(rng) < 0.4) g.add_edge(a, b, uniform(rng, 0.0, 2.0));
    }
  }
  const Terminals t = g.add_terminals();
  for (int v = 0; v < pixels; ++v) {
    g.add_edge(v, t.source, uniform(rng, 0.0, 3.0));
    g.add_edge(v, t.sink, uniform(rng, 0.0, 3.0));
  }
  assign_qubits(g);
  return g;
}

void ac7() {
  Stopwatch sw;
  std::vector<SegGraph> graphs;
  for (const auto& item : generate_bas(3, 3, kBasNoise, kSeed)) {
    graphs.push_back(build_maxflow_graph(item.image, TerminalModel::binary_threshold(kMaxflowLambda, kMaxflowSigma)));
  }
  Rng rng(kSeed);
  for (int i = 0; i < 50; ++i) graphs.push_back(random_terminal_graph(rng, 1 + i % 10));

  int bad = 0;
  double worst = 0.0;
  for (const auto& g : graphs) {
    const auto brute = exhaustive_mincut(g);
    const auto flow = maxflow_mincut(g);
    const auto h = mincut_hamiltonian(g);
    const BasisIndex arg = h.argmax([&](BasisIndex z) { return is_admissible(g, z); });
    const double gap = std::abs(flow.value - brute.value);
    worst = std::max(worst, gap);
    if (gap > kOracleTol || flow.partition != brute.partition || arg != brute.partition) ++bad;
  }
  report("AC7", bad == 0,
         "12 BAS + 50 random graphs, maxflow vs exhaustive vs Hamiltonian argmax: mismatches=" +
             std::to_string(bad) + fmt(" max value gap=%.3g", worst),
         sw.seconds());
}

void ac8() {
  Stopwatch sw;
  const auto checks = run_verification();
  const double seconds = sw.seconds();
  std::string failed;
  for (const auto& c : checks) {
    if (!c.passed) failed += " " + c.name;
  }
  report("AC8", all_passed(checks) && seconds < kInvariantBudgetS,
         std::to_string(checks.size()) + " invariant checks, need all pass under 300 s" +
             (failed.empty() ? std::string() : "; failed:" + failed),
         seconds);
}

// Grid search of depth-1 and depth-2 angles on the reduced (pixel-only)
// register. Phase factors per beta are computed once and the depth-1 states
// are reused as prefixes of every depth-2 circuit.
struct GridMaxima {
  double m1;
  double m2;
  double m1_check;  // depth-1 optimum re-evaluated by the library
};

GridMaxima grid_maxima(const QaoaProblem& problem) {
  const int k = static_cast<int>(problem.active.size());
  BasisIndex fixed = 0;
  for (const auto& p : problem.pinned) {
    if (p.bit == 1) fixed |= BasisIndex{1} << p.qubit;
  }
  const std::size_t dim = std::size_t{1} << k;
  std::vector<double> diag(dim);
  for (BasisIndex y = 0; y < dim; ++y) {
    BasisIndex z = fixed;
    for (int i = 0; i < k; ++i) {
      if (bit_of(y, i)) z |= BasisIndex{1} << problem.active[static_cast<std::size_t>(i)];
    }
    diag[y] = problem.cost[z];
  }
  std::vector<int> all(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = i;

  std::vector<double> gammas(kGridPoints);
  std::vector<double> betas(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    gammas[static_cast<std::size_t>(i)] = kPi * i / kGridPoints;
    betas[static_cast<std::size_t>(i)] = 2.0 * kPi * i / kGridPoints;
  }
  std::vector<std::vector<Complex>> phase(kGridPoints, std::vector<Complex>(dim));
  for (int b = 0; b < kGridPoints; ++b) {
    for (std::size_t y = 0; y < dim; ++y) phase[b][y] = std::exp(Complex(0.0, -betas[b] * diag[y]));
  }
  auto expectation = [&](const StateVector& s) {
    double acc = 0.0;
    for (std::size_t y = 0; y < dim; ++y) acc += std::norm(s[y]) * diag[y];
    return acc;
  };
  auto apply_phase = [&](StateVector& s, int b) {
    auto amps = s.amplitudes();
    for (std::size_t y = 0; y < dim; ++y) amps[y] *= phase[b][y];
  };

  StateVector plus(k);
  for (auto& a : plus.amplitudes()) a = Complex(1.0 / std::sqrt(static_cast<double>(dim)));

  GridMaxima out{-1e300, -1e300, 0.0};
  QaoaParams best1{{0.0}, {0.0}};
  StateVector layer1 = plus;
  StateVector layer2 = plus;
  for (int b1 = 0; b1 < kGridPoints; ++b1) {
    StateVector phased = plus;
    apply_phase(phased, b1);
    for (int g1 = 0; g1 < kGridPoints; ++g1) {
      layer1 = phased;
      layer1.apply_mixer(gammas[g1], all);
      const double f1 = expectation(layer1);
      if (f1 > out.m1) {
        out.m1 = f1;
        best1 = QaoaParams{{gammas[g1]}, {betas[b1]}};
      }
      for (int b2 = 0; b2 < kGridPoints; ++b2) {
        StateVector phased2 = layer1;
        apply_phase(phased2, b2);
        for (int g2 = 0; g2 < kGridPoints; ++g2) {
          layer2 = phased2;
          layer2.apply_mixer(gammas[g2], all);
          out.m2 = std::max(out.m2, expectation(layer2));
        }
      }
    }
  }
  out.m1_check = objective(problem, best1);
  return out;
}

void ac9() {
  Stopwatch sw;
  const auto items = generate_bas(3, 3, kBasNoise, kSeed);
  const auto model = TerminalModel::binary_threshold(kMaxflowLambda, kMaxflowSigma);
  bool ok = true;
  std::string detail;
  for (std::size_t i : {0, 4, 9}) {
    const auto problem = QaoaProblem::mincut(build_maxflow_graph(items[i].image, model));
    const auto m = grid_maxima(problem);
    ok = ok && m.m1 <= m.m2 + kMonotoneTol && std::abs(m.m1 - m.m1_check) <= 1e-9;
    detail += " " + items[i].id + fmt(": M1=%.6f M2=%.6f;", m.m1, m.m2);
  }
  report("AC9", ok, "32-point grid, need M1<=M2+1e-9 on 3 instances:" + detail, sw.seconds());
}

struct FixtureTally {
  int matched = 0;
  int total = 0;
  std::string misses;
};

FixtureTally vessel_fixtures(const fs::path& dir) {
  FixtureTally tally;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".pgm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const CropSide side = f.stem().string().starts_with("left") ? CropSide::kLeft : CropSide::kRight;
    const auto crop = load_cropped_medical(f, dir / "histogram.json", side);
    const SegGraph g = build_maxflow_graph(crop.item.image, crop.model);
    const BasisIndex best = exhaustive_mincut(g).partition;
    const auto problem = QaoaProblem::mincut(g);
    for (int run = 0; run < kRunsVessel; ++run) {
      RunConfig cfg;
      cfg.optimizer.max_iters = bayes_budget(2);
      cfg.optimizer.rng_seed = derive_seed(derive_seed(kSeed, 5000 + static_cast<std::uint64_t>(run)), tally.total);
      const auto r = qseg::run(problem, cfg);
      ++tally.total;
      if (r.winner == best) {
        ++tally.matched;
      } else {
        tally.misses += " " + crop.item.id + "#" + std::to_string(run);
      }
    }
  }
  return tally;
}

void vessels() {
  Stopwatch sw;
  const auto t = vessel_fixtures(fs::path(QSEG_DATA_DIR) / "vessels");
  report("VES", t.matched == t.total,
         "2x7 vessel fixtures, maxflow p=1 Bayes, 10 runs each, need winner == exhaustive cut: " +
             std::to_string(t.matched) + "/" + std::to_string(t.total) + (t.misses.empty() ? "" : "; missed:" + t.misses),
         sw.seconds());

  Stopwatch sw2;
  const auto h = vessel_fixtures(fs::path(QSEG_DATA_DIR) / "vessels_hard");
  info("VESh", "near-tie vessel fixtures (not gated): " + std::to_string(h.matched) + "/" + std::to_string(h.total),
       sw2.seconds());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> steps = {ac7, ac8, ac9, ac1, ac2, ac3, ac4, ac5_ac6, vessels};
  for (const auto& step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      ++failures;
      std::printf("ERROR %s\n", e.what());
    }
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
