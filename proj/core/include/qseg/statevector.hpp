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

#ifndef QSEG_STATEVECTOR_HPP_
#define QSEG_STATEVECTOR_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qseg/bits.hpp"

namespace qseg {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Gate2x2 = std::array<Complex, 4>;

enum class Pauli { X, Y, Z };

Gate2x2 pauli_matrix(Pauli p);
Gate2x2 hadamard_matrix();
/// exp(-i * angle * sigma^x).
Gate2x2 x_rotation(double angle);

bool is_unitary(const Gate2x2& g, double tol = 1e-10);

struct PinnedQubit {
  int qubit;
  int bit;
};

/// Dense n-qubit register. Basis index z stores qubit q in bit q of z.
///
/// All mutating operations act in place and touch each amplitude a constant
/// number of times; no 2^n x 2^n operator is ever formed.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  static StateVector basis_state(int n_qubits, BasisIndex z);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](BasisIndex z) const { return amps_[z]; }
  Complex& operator[](BasisIndex z) { return amps_[z]; }

  double norm_squared() const;
  std::vector<double> probabilities() const;
  /// Probability that qubit q reads 1.
  double probability_one(int q) const;

  /// Throws std::invalid_argument for a non-unitary gate or bad qubit index.
  void apply_gate(int q, const Gate2x2& gate);
  void apply_pauli(int q, Pauli p);

  /// amp_z <- amp_z * exp(-i * angle * diag_z).
  void apply_diagonal_phase(std::span<const double> diag, double angle);

  /// amp_z <- amp_z * exp(-i * angle * weight) when bits q1 and q2 of z differ.
  void apply_pair_phase(int q1, int q2, double weight, double angle);

  /// exp(-i * angle * sigma^x) on every qubit in `active`; others untouched.
  void apply_mixer(double angle, std::span<const int> active);

 private:
  void check_qubit(int q) const;
  void apply_gate_unchecked(int q, const Gate2x2& gate);

  int n_qubits_;
  std::vector<Complex> amps_;
};

/// Non-pinned qubits in (|0>+|1>)/sqrt(2), pinned qubits in the given basis
/// state. Throws std::invalid_argument on duplicate or out-of-range pins.
StateVector init_plus_state(int n_qubits, std::span<const PinnedQubit> pinned);

/// Measurement outcome counts keyed by basis index.
struct Histogram {
  int n_qubits = 0;
  std::map<BasisIndex, std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t count(BasisIndex z) const;
  /// Highest count; ties go to the lexicographically smallest bitstring.
  BasisIndex most_frequent() const;
};

/// Inverse-CDF sampler over |amp_z|^2; building it is O(2^n), each draw O(n).
class BasisSampler {
 public:
  explicit BasisSampler(const StateVector& state);
  BasisIndex draw(Rng& rng) const;

 private:
  std::vector<double> cdf_;
};

/// i.i.d. computational-basis measurements. Deterministic given the seed.
Histogram sample_bitstrings(const StateVector& state, std::uint64_t shots, std::uint64_t rng_seed);

struct NoiseConfig {
  double per_pauli_prob = 0.05;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Monte-Carlo Pauli channel: after a gate, each touched qubit independently
/// receives X, Y or Z with probability p each, nothing with 1 - 3p.
class PauliNoiseChannel {
 public:
  explicit PauliNoiseChannel(const NoiseConfig& cfg);
  PauliNoiseChannel(const NoiseConfig& cfg, Rng rng);

  void apply(StateVector& state, std::span<const int> touched);
  void apply(StateVector& state, int touched);

  double per_pauli_prob() const { return p_; }
  std::uint64_t insertions() const { return insertions_; }
  Rng& rng() { return rng_; }

 private:
  double p_;
  Rng rng_;
  std::uint64_t insertions_ = 0;
};

}  // namespace qseg

#endif  // QSEG_STATEVECTOR_HPP_
