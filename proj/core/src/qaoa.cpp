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

#include "qseg/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qseg {

void QaoaParams::validate() const {
  if (gamma.empty()) throw std::invalid_argument("QAOA depth must be at least 1");
  if (gamma.size() != beta.size()) throw std::invalid_argument("gamma and beta must have equal length");
}

QaoaParams QaoaParams::zeros(int p) {
  if (p < 1) throw std::invalid_argument("QAOA depth must be at least 1");
  return {std::vector<double>(static_cast<std::size_t>(p), 0.0), std::vector<double>(static_cast<std::size_t>(p), 0.0)};
}

QaoaParams QaoaParams::from_flat(std::span<const double> flat) {
  if (flat.empty() || flat.size() % 2 != 0) throw std::invalid_argument("flat angle vector must have even length");
  const std::size_t p = flat.size() / 2;
  return {std::vector<double>(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p)),
          std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end())};
}

std::vector<double> QaoaParams::flat() const {
  std::vector<double> out(gamma);
  out.insert(out.end(), beta.begin(), beta.end());
  return out;
}

QaoaParams QaoaParams::padded(int p) const {
  if (p < depth()) throw std::invalid_argument("cannot pad to a smaller depth");
  QaoaParams out = *this;
  out.gamma.resize(static_cast<std::size_t>(p), 0.0);
  out.beta.resize(static_cast<std::size_t>(p), 0.0);
  return out;
}

void QaoaProblem::validate() const {
  const int n = n_qubits();
  std::vector<int> role(static_cast<std::size_t>(n), 0);
  for (int q : active) {
    if (q < 0 || q >= n) throw std::invalid_argument("active qubit out of range");
    if (role[static_cast<std::size_t>(q)] != 0) throw std::invalid_argument("qubit listed twice");
    role[static_cast<std::size_t>(q)] = 1;
  }
  for (const auto& p : pinned) {
    if (p.qubit < 0 || p.qubit >= n) throw std::invalid_argument("pinned qubit out of range");
    if (role[static_cast<std::size_t>(p.qubit)] != 0) throw std::invalid_argument("pinned qubit is also active");
    role[static_cast<std::size_t>(p.qubit)] = 2;
  }
  if (std::find(role.begin(), role.end(), 0) != role.end()) {
    throw std::invalid_argument("every qubit must be active or pinned");
  }
  for (const auto& t : gate_terms) {
    if (t.q1 < 0 || t.q1 >= n || t.q2 < 0 || t.q2 >= n || t.q1 == t.q2) {
      throw std::invalid_argument("invalid cost term");
    }
  }
}

bool QaoaProblem::admissible(BasisIndex z) const {
  return std::all_of(pinned.begin(), pinned.end(), [z](const PinnedQubit& p) { return bit_of(z, p.qubit) == p.bit; });
}

QaoaProblem QaoaProblem::unconstrained(DiagonalHamiltonian cost) {
  std::vector<int> active(static_cast<std::size_t>(cost.n_qubits()));
  std::iota(active.begin(), active.end(), 0);
  return QaoaProblem{std::move(cost), std::move(active), {}, {}};
}

QaoaProblem QaoaProblem::mincut(const SegGraph& g) {
  const auto& t = g.terminals();
  if (!t) throw std::invalid_argument("min-cut problem needs terminals");
  QaoaProblem problem{mincut_hamiltonian(g), {}, {}, {}};
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (v != t->source && v != t->sink) problem.active.push_back(g.qubit(v));
  }
  std::sort(problem.active.begin(), problem.active.end());
  problem.pinned = {{g.qubit(t->source), 0}, {g.qubit(t->sink), 1}};
  // A zero-weight term is the identity and compiles to no gate.
  for (const auto& e : g.edges()) {
    if (e.weight != 0.0) problem.gate_terms.push_back({g.qubit(e.a), g.qubit(e.b), -e.weight});
  }
  problem.validate();
  return problem;
}

QaoaProblem QaoaProblem::ncut(const SegGraph& g, NcutMode mode) {
  auto problem = unconstrained(ncut_hamiltonian(g, mode));
  problem.validate();
  return problem;
}

StateVector prepare_state(const QaoaProblem& problem, const QaoaParams& params) {
  params.validate();
  StateVector state = init_plus_state(problem.n_qubits(), problem.pinned);
  for (int layer = 0; layer < params.depth(); ++layer) {
    state.apply_diagonal_phase(problem.cost.values(), params.beta[static_cast<std::size_t>(layer)]);
    state.apply_mixer(params.gamma[static_cast<std::size_t>(layer)], problem.active);
  }
  return state;
}

StateVector prepare_noisy_state(const QaoaProblem& problem, const QaoaParams& params, PauliNoiseChannel& noise) {
  params.validate();
  StateVector state = init_plus_state(problem.n_qubits(), problem.pinned);
  // Single-qubit gates on distinct qubits commute with noise on the others,
  // so a whole gate column can be applied before its noise.
  std::vector<int> prepared = problem.active;
  for (const auto& p : problem.pinned) {
    if (p.bit == 1) prepared.push_back(p.qubit);
  }
  noise.apply(state, prepared);

  std::vector<int> everyone(static_cast<std::size_t>(problem.n_qubits()));
  std::iota(everyone.begin(), everyone.end(), 0);
  for (int layer = 0; layer < params.depth(); ++layer) {
    const double beta = params.beta[static_cast<std::size_t>(layer)];
    if (problem.gate_terms.empty()) {
      state.apply_diagonal_phase(problem.cost.values(), beta);
      noise.apply(state, everyone);
    } else {
      for (const auto& term : problem.gate_terms) {
        state.apply_pair_phase(term.q1, term.q2, term.weight, beta);
        const int touched[] = {term.q1, term.q2};
        noise.apply(state, touched);
      }
    }
    state.apply_mixer(params.gamma[static_cast<std::size_t>(layer)], problem.active);
    noise.apply(state, problem.active);
  }
  return state;
}

double objective(const QaoaProblem& problem, const QaoaParams& params) {
  return eval_objective(problem.cost, prepare_state(problem, params));
}

QaoaEvaluator::QaoaEvaluator(const QaoaProblem& problem)
    : reduced_(std::max<int>(1, static_cast<int>(problem.active.size()))) {
  problem.validate();
  const int k = static_cast<int>(problem.active.size());
  BasisIndex fixed = 0;
  for (const auto& p : problem.pinned) {
    if (p.bit == 1) fixed |= BasisIndex{1} << p.qubit;
  }
  if (k == 0) {
    // Nothing evolves; a single dummy qubit carries the constant.
    diag_ = {problem.cost[fixed], problem.cost[fixed]};
    return;
  }
  diag_.resize(std::size_t{1} << k);
  for (BasisIndex y = 0; y < diag_.size(); ++y) {
    BasisIndex z = fixed;
    for (int i = 0; i < k; ++i) {
      if (bit_of(y, i)) z |= BasisIndex{1} << problem.active[static_cast<std::size_t>(i)];
    }
    diag_[y] = problem.cost[z];
  }
  all_.resize(static_cast<std::size_t>(k));
  std::iota(all_.begin(), all_.end(), 0);
}

void QaoaEvaluator::evolve(const QaoaParams& params) {
  params.validate();
  auto amps = reduced_.amplitudes();
  std::fill(amps.begin(), amps.end(), Complex{1.0 / std::sqrt(static_cast<double>(amps.size()))});
  for (int layer = 0; layer < params.depth(); ++layer) {
    reduced_.apply_diagonal_phase(diag_, params.beta[static_cast<std::size_t>(layer)]);
    reduced_.apply_mixer(params.gamma[static_cast<std::size_t>(layer)], all_);
  }
}

double QaoaEvaluator::objective(const QaoaParams& params) {
  evolve(params);
  const auto amps = reduced_.amplitudes();
  double acc = 0.0;
  for (std::size_t y = 0; y < amps.size(); ++y) acc += std::norm(amps[y]) * diag_[y];
  return acc;
}

double QaoaEvaluator::sampled_objective(const QaoaParams& params, std::uint64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("at least one shot is required");
  evolve(params);
  BasisSampler sampler(reduced_);
  double acc = 0.0;
  for (std::uint64_t s = 0; s < shots; ++s) acc += diag_[sampler.draw(rng)];
  return acc / static_cast<double>(shots);
}

void RunConfig::validate() const {
  if (depth < 1) throw std::invalid_argument("QAOA depth must be at least 1");
  optimizer.validate();
  if (noise) noise->validate();
  if (noise_trajectories < 1) throw std::invalid_argument("need at least one noise trajectory per evaluation");
}

OptimizationResult optimize(const QaoaProblem& problem, const RunConfig& cfg) {
  cfg.validate();
  problem.validate();
  const int dim = 2 * cfg.depth;

  if (cfg.noise) {
    PauliNoiseChannel channel(*cfg.noise, Rng(derive_seed(cfg.noise->rng_seed, 1)));
    auto f = [&](std::span<const double> x) {
      const auto params = QaoaParams::from_flat(x);
      double acc = 0.0;
      for (int t = 0; t < cfg.noise_trajectories; ++t) {
        acc += eval_objective(problem.cost, prepare_noisy_state(problem, params, channel));
      }
      return acc / cfg.noise_trajectories;
    };
    return maximize(f, dim, cfg.optimizer);
  }

  QaoaEvaluator evaluator(problem);
  if (cfg.estimator == Estimator::kSampled) {
    Rng shot_rng(derive_seed(cfg.optimizer.rng_seed, 3));
    auto f = [&](std::span<const double> x) {
      return evaluator.sampled_objective(QaoaParams::from_flat(x), cfg.optimizer.shots, shot_rng);
    };
    return maximize(f, dim, cfg.optimizer);
  }
  auto f = [&](std::span<const double> x) { return evaluator.objective(QaoaParams::from_flat(x)); };
  return maximize(f, dim, cfg.optimizer);
}

RunReport run(const QaoaProblem& problem, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  OptimizationResult opt = optimize(problem, cfg);

  RunReport report;
  report.best_params = QaoaParams::from_flat(opt.best_x);
  report.best_objective = opt.best_value;
  report.objective_trace = std::move(opt.trace);

  const StateVector clean = prepare_state(problem, report.best_params);
  if (cfg.noise) {
    PauliNoiseChannel channel(*cfg.noise, Rng(derive_seed(cfg.noise->rng_seed, 2)));
    Rng shot_rng(derive_seed(cfg.optimizer.rng_seed, 1));
    report.histogram.n_qubits = problem.n_qubits();
    for (std::uint64_t s = 0; s < cfg.optimizer.shots; ++s) {
      const StateVector trajectory = prepare_noisy_state(problem, report.best_params, channel);
      ++report.histogram.counts[BasisSampler(trajectory).draw(shot_rng)];
    }
  } else {
    report.histogram = sample_bitstrings(clean, cfg.optimizer.shots, derive_seed(cfg.optimizer.rng_seed, 1));
  }

  if (cfg.winner_rule == WinnerRule::kMostFrequent) {
    report.winner = report.histogram.most_frequent();
  } else {
    const auto probs = clean.probabilities();
    BasisIndex best = 0;
    for (BasisIndex z = 1; z < probs.size(); ++z) {
      if (probs[z] > probs[best] || (probs[z] == probs[best] && lex_less(z, best, problem.n_qubits()))) best = z;
    }
    report.winner = best;
  }
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace qseg
