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

#ifndef QSEG_QAOA_HPP_
#define QSEG_QAOA_HPP_

#include <chrono>
#include <optional>
#include <span>
#include <vector>

#include "qseg/hamiltonian.hpp"
#include "qseg/optimizers.hpp"
#include "qseg/seg_graph.hpp"
#include "qseg/statevector.hpp"

namespace qseg {

/// Depth-p angles. gamma drives the mixer, beta the cost Hamiltonian:
///   U = e^{-i gamma_p Hx} e^{-i beta_p Hz} ... e^{-i gamma_1 Hx} e^{-i beta_1 Hz}
struct QaoaParams {
  std::vector<double> gamma;
  std::vector<double> beta;

  int depth() const { return static_cast<int>(gamma.size()); }
  void validate() const;

  static QaoaParams zeros(int p);
  /// Flat layout {gamma_1..gamma_p, beta_1..beta_p}.
  static QaoaParams from_flat(std::span<const double> flat);
  std::vector<double> flat() const;
  /// Appends a zero-angle layer.
  QaoaParams padded(int p) const;
};

/// Two-qubit term weight * [z_q1 != z_q2] of a cost diagonal. Only used to
/// place noise at gate granularity.
struct CostTerm {
  int q1;
  int q2;
  double weight;
};

struct QaoaProblem {
  DiagonalHamiltonian cost;
  std::vector<int> active;          ///< mixer support
  std::vector<PinnedQubit> pinned;  ///< computational-basis initialization
  /// Optional decomposition of `cost` (up to a constant) into pair terms.
  std::vector<CostTerm> gate_terms;

  int n_qubits() const { return cost.n_qubits(); }
  /// Pinned qubits are never active and together they cover the register.
  void validate() const;
  bool admissible(BasisIndex z) const;

  static QaoaProblem unconstrained(DiagonalHamiltonian cost);
  /// Min-cut cost with source pinned to 0, sink to 1, mixer on pixels.
  static QaoaProblem mincut(const SegGraph& g);
  static QaoaProblem ncut(const SegGraph& g, NcutMode mode = NcutMode::kExact);
};

/// Noiseless |gamma, beta> on the full register.
StateVector prepare_state(const QaoaProblem& problem, const QaoaParams& params);

/// One Monte-Carlo trajectory: Pauli noise after every logical gate. Gates
/// are the initial H (or X for pins at 1), each nonzero cost term (the
/// whole diagonal when no decomposition is given) and each single-qubit
/// mixer rotation.
StateVector prepare_noisy_state(const QaoaProblem& problem, const QaoaParams& params, PauliNoiseChannel& noise);

/// F_p = <gamma, beta| Hz |gamma, beta>, evaluated exactly.
double objective(const QaoaProblem& problem, const QaoaParams& params);

/// Repeated objective evaluation. Pinned qubits never leave their basis
/// states without noise, so the evaluator simulates only the active qubits
/// against the cost restricted to the pinned values.
class QaoaEvaluator {
 public:
  explicit QaoaEvaluator(const QaoaProblem& problem);

  double objective(const QaoaParams& params);
  /// Shot-noise estimate of the objective from `shots` samples.
  double sampled_objective(const QaoaParams& params, std::uint64_t shots, Rng& rng);

  int reduced_qubits() const { return reduced_.n_qubits(); }
  const StateVector& last_state() const { return reduced_; }

 private:
  void evolve(const QaoaParams& params);

  std::vector<double> diag_;
  std::vector<int> all_;
  StateVector reduced_;
};

enum class Estimator { kExact, kSampled };
enum class WinnerRule { kMostFrequent, kMaxProbability };

struct RunConfig {
  int depth = 1;
  OptimizerConfig optimizer = OptimizerConfig::bayesian_defaults();
  std::optional<NoiseConfig> noise;
  /// Trajectories averaged per objective evaluation under noise.
  int noise_trajectories = 8;
  Estimator estimator = Estimator::kExact;
  WinnerRule winner_rule = WinnerRule::kMostFrequent;

  void validate() const;
};

struct RunReport {
  QaoaParams best_params;
  double best_objective = 0.0;
  std::vector<double> objective_trace;
  Histogram histogram;
  BasisIndex winner = 0;
  std::chrono::duration<double> wall_time{0};
};

/// Optimize angles on the objective, then sample the optimized state
/// (a fresh noise trajectory per shot when noise is configured) and report
/// the winning bitstring.
RunReport run(const QaoaProblem& problem, const RunConfig& cfg);

/// Angle-only optimization (no sampling).
OptimizationResult optimize(const QaoaProblem& problem, const RunConfig& cfg);

}  // namespace qseg

#endif  // QSEG_QAOA_HPP_
