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

#include "qseg/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qseg {

namespace {

constexpr Complex kI{0.0, 1.0};

// Visits every (i0, i1) index pair differing only in bit q, i0 having bit q clear.
template <typename F>
void for_each_pair(std::size_t size, int q, F&& f) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t block = 0; block < size; block += 2 * stride) {
    for (std::size_t i0 = block; i0 < block + stride; ++i0) {
      f(i0, i0 + stride);
    }
  }
}

}  // namespace

Gate2x2 pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::X:
      return {Complex{0}, Complex{1}, Complex{1}, Complex{0}};
    case Pauli::Y:
      return {Complex{0}, -kI, kI, Complex{0}};
    case Pauli::Z:
      return {Complex{1}, Complex{0}, Complex{0}, Complex{-1}};
  }
  throw std::invalid_argument("unknown Pauli kind");
}

Gate2x2 hadamard_matrix() {
  const double h = 1.0 / std::sqrt(2.0);
  return {Complex{h}, Complex{h}, Complex{h}, Complex{-h}};
}

Gate2x2 x_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {Complex{c}, Complex{0, -s}, Complex{0, -s}, Complex{c}};
}

bool is_unitary(const Gate2x2& g, double tol) {
  // G^dagger G == I
  const Complex d00 = std::conj(g[0]) * g[0] + std::conj(g[2]) * g[2];
  const Complex d01 = std::conj(g[0]) * g[1] + std::conj(g[2]) * g[3];
  const Complex d11 = std::conj(g[1]) * g[1] + std::conj(g[3]) * g[3];
  return std::abs(d00 - 1.0) <= tol && std::abs(d11 - 1.0) <= tol && std::abs(d01) <= tol;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("register needs at least one qubit");
  if (n_qubits > kMaxQubits) {
    throw CapacityError("register of " + std::to_string(n_qubits) + " qubits exceeds limit of " +
                        std::to_string(kMaxQubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, BasisIndex z) {
  StateVector s(n_qubits);
  if (z >= s.size()) throw std::invalid_argument("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[z] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
  return p;
}

double StateVector::probability_one(int q) const {
  check_qubit(q);
  double acc = 0.0;
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    if (bit_of(z, q)) acc += std::norm(amps_[z]);
  }
  return acc;
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit register");
  }
}

void StateVector::apply_gate(int q, const Gate2x2& gate) {
  check_qubit(q);
  if (!is_unitary(gate)) throw std::invalid_argument("gate is not unitary");
  apply_gate_unchecked(q, gate);
}

void StateVector::apply_gate_unchecked(int q, const Gate2x2& g) {
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const Complex a0 = amps_[i0];
    const Complex a1 = amps_[i1];
    amps_[i0] = g[0] * a0 + g[1] * a1;
    amps_[i1] = g[2] * a0 + g[3] * a1;
  });
}

void StateVector::apply_pauli(int q, Pauli p) {
  check_qubit(q);
  switch (p) {
    case Pauli::X:
      for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) { std::swap(amps_[i0], amps_[i1]); });
      break;
    case Pauli::Y:
      // Y|0> = i|1>, Y|1> = -i|0>
      for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
        const Complex a0 = amps_[i0];
        amps_[i0] = -kI * amps_[i1];
        amps_[i1] = kI * a0;
      });
      break;
    case Pauli::Z:
      for_each_pair(amps_.size(), q, [&](std::size_t, std::size_t i1) { amps_[i1] = -amps_[i1]; });
      break;
  }
}

void StateVector::apply_diagonal_phase(std::span<const double> diag, double angle) {
  if (diag.size() != amps_.size()) {
    throw std::invalid_argument("diagonal has " + std::to_string(diag.size()) + " entries, register has " +
                                std::to_string(amps_.size()));
  }
  if (angle == 0.0) return;
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    const double theta = -angle * diag[z];
    amps_[z] *= Complex{std::cos(theta), std::sin(theta)};
  }
}

void StateVector::apply_pair_phase(int q1, int q2, double weight, double angle) {
  check_qubit(q1);
  check_qubit(q2);
  const double theta = -angle * weight;
  const Complex phase{std::cos(theta), std::sin(theta)};
  for (std::size_t z = 0; z < amps_.size(); ++z) {
    if (bit_of(z, q1) != bit_of(z, q2)) amps_[z] *= phase;
  }
}

void StateVector::apply_mixer(double angle, std::span<const int> active) {
  for (int q : active) check_qubit(q);
  if (angle == 0.0) return;
  const double c = std::cos(angle);
  const Complex mis{0.0, -std::sin(angle)};
  for (int q : active) {
    for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
      const Complex a0 = amps_[i0];
      const Complex a1 = amps_[i1];
      amps_[i0] = c * a0 + mis * a1;
      amps_[i1] = mis * a0 + c * a1;
    });
  }
}

StateVector init_plus_state(int n_qubits, std::span<const PinnedQubit> pinned) {
  StateVector state(n_qubits);
  std::vector<int> pin(static_cast<std::size_t>(n_qubits), -1);
  for (const auto& p : pinned) {
    if (p.qubit < 0 || p.qubit >= n_qubits) throw std::invalid_argument("pinned qubit out of range");
    if (p.bit != 0 && p.bit != 1) throw std::invalid_argument("pinned bit must be 0 or 1");
    if (pin[static_cast<std::size_t>(p.qubit)] != -1) throw std::invalid_argument("qubit pinned twice");
    pin[static_cast<std::size_t>(p.qubit)] = p.bit;
  }

  BasisIndex fixed = 0;
  BasisIndex free_mask = 0;
  int n_free = 0;
  for (int q = 0; q < n_qubits; ++q) {
    if (pin[static_cast<std::size_t>(q)] == 1) fixed |= BasisIndex{1} << q;
    if (pin[static_cast<std::size_t>(q)] == -1) {
      free_mask |= BasisIndex{1} << q;
      ++n_free;
    }
  }
  const double amp = std::pow(2.0, -0.5 * n_free);
  auto amps = state.amplitudes();
  std::fill(amps.begin(), amps.end(), Complex{0.0});
  for (std::size_t z = 0; z < amps.size(); ++z) {
    if ((z & ~free_mask) == fixed) amps[z] = amp;
  }
  return state;
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (const auto& [z, c] : counts) t += c;
  return t;
}

std::uint64_t Histogram::count(BasisIndex z) const {
  auto it = counts.find(z);
  return it == counts.end() ? 0 : it->second;
}

BasisIndex Histogram::most_frequent() const {
  if (counts.empty()) throw std::logic_error("empty histogram has no most frequent outcome");
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second || (it->second == best->second && lex_less(it->first, best->first, n_qubits))) {
      best = it;
    }
  }
  return best->first;
}

BasisSampler::BasisSampler(const StateVector& state) : cdf_(state.size()) {
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    acc += std::norm(amps[z]);
    cdf_[z] = acc;
  }
}

BasisIndex BasisSampler::draw(Rng& rng) const {
  const double u = uniform01(rng) * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  // The first entry strictly above u always carries nonzero probability.
  if (it == cdf_.end()) --it;
  return static_cast<BasisIndex>(it - cdf_.begin());
}

Histogram sample_bitstrings(const StateVector& state, std::uint64_t shots, std::uint64_t rng_seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  Histogram h;
  h.n_qubits = state.n_qubits();
  BasisSampler sampler(state);
  Rng rng(rng_seed);
  for (std::uint64_t s = 0; s < shots; ++s) ++h.counts[sampler.draw(rng)];
  return h;
}

void NoiseConfig::validate() const {
  if (!(per_pauli_prob >= 0.0) || 3.0 * per_pauli_prob > 1.0 + 1e-15) {
    throw std::invalid_argument("per-Pauli noise probability must lie in [0, 1/3]");
  }
}

PauliNoiseChannel::PauliNoiseChannel(const NoiseConfig& cfg) : PauliNoiseChannel(cfg, Rng(cfg.rng_seed)) {}

PauliNoiseChannel::PauliNoiseChannel(const NoiseConfig& cfg, Rng rng) : p_(cfg.per_pauli_prob), rng_(rng) {
  cfg.validate();
}

void PauliNoiseChannel::apply(StateVector& state, int touched) {
  if (p_ == 0.0) return;
  const double u = uniform01(rng_);
  if (u < p_) {
    state.apply_pauli(touched, Pauli::X);
  } else if (u < 2.0 * p_) {
    state.apply_pauli(touched, Pauli::Y);
  } else if (u < 3.0 * p_) {
    state.apply_pauli(touched, Pauli::Z);
  } else {
    return;
  }
  ++insertions_;
}

void PauliNoiseChannel::apply(StateVector& state, std::span<const int> touched) {
  for (int q : touched) apply(state, q);
}

}  // namespace qseg
