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

#include "qseg/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qseg {

namespace {

void check_capacity(const SegGraph& g) {
  if (g.n_vertices() > kMaxQubits) {
    throw CapacityError("graph with " + std::to_string(g.n_vertices()) + " vertices exceeds the " +
                        std::to_string(kMaxQubits) + "-qubit limit");
  }
  if (g.n_vertices() < 1) throw std::invalid_argument("graph has no vertices");
}

}  // namespace

DiagonalHamiltonian::DiagonalHamiltonian(int n_qubits, std::vector<double> values)
    : n_qubits_(n_qubits), values_(std::move(values)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw CapacityError("Hamiltonian qubit count out of range");
  if (values_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("diagonal length must be 2^n_qubits");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("diagonal entries must be finite");
  }
}

DiagonalHamiltonian DiagonalHamiltonian::constant(int n_qubits, double c) {
  return DiagonalHamiltonian(n_qubits, std::vector<double>(std::size_t{1} << n_qubits, c));
}

BasisIndex DiagonalHamiltonian::argmax(const std::function<bool(BasisIndex)>& admissible) const {
  bool found = false;
  BasisIndex best = 0;
  for (BasisIndex z = 0; z < values_.size(); ++z) {
    if (admissible && !admissible(z)) continue;
    if (!found || values_[z] > values_[best] || (values_[z] == values_[best] && lex_less(z, best, n_qubits_))) {
      best = z;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("no admissible basis state");
  return best;
}

DiagonalHamiltonian maxcut_hamiltonian(const SegGraph& g) {
  check_capacity(g);
  const int n = g.n_vertices();
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (const auto& e : g.edges()) {
    const int qa = g.qubit(e.a);
    const int qb = g.qubit(e.b);
    for (BasisIndex z = 0; z < values.size(); ++z) {
      if (bit_of(z, qa) != bit_of(z, qb)) values[z] += e.weight;
    }
  }
  return DiagonalHamiltonian(n, std::move(values));
}

DiagonalHamiltonian mincut_hamiltonian(const SegGraph& g) {
  return maxcut_hamiltonian(g.scaled(-1.0));
}

DiagonalHamiltonian ncut_hamiltonian(const SegGraph& g, NcutMode mode) {
  check_capacity(g);
  if (g.has_terminals()) throw std::invalid_argument("normalized cuts operate on graphs without terminals");
  for (const auto& e : g.edges()) {
    if (e.weight < 0.0) throw std::invalid_argument("normalized cuts require nonnegative weights");
  }

  const int n = g.n_vertices();
  const std::size_t dim = std::size_t{1} << n;
  const BasisIndex full = all_ones(n);
  std::vector<double> incident(static_cast<std::size_t>(n), 0.0);
  double total_weight = 0.0;
  for (const auto& e : g.edges()) {
    incident[static_cast<std::size_t>(e.a)] += e.weight;
    incident[static_cast<std::size_t>(e.b)] += e.weight;
    total_weight += e.weight;
  }

  std::vector<double> values(dim, 0.0);
  std::vector<bool> degenerate(dim, false);
  double min_proper = std::numeric_limits<double>::infinity();
  for (BasisIndex z = 0; z < dim; ++z) {
    const BasisIndex flipped = z ^ full;
    if (flipped < z) continue;  // filled from its complement below

    double deg0 = 0.0;
    double deg1 = 0.0;
    for (int v = 0; v < n; ++v) {
      (g.side(z, v) ? deg1 : deg0) += incident[static_cast<std::size_t>(v)];
    }
    double value = 0.0;
    bool is_degenerate = !(deg0 > 0.0) || !(deg1 > 0.0);
    if (!is_degenerate) {
      double cut = 0.0;
      for (const auto& e : g.edges()) {
        if (g.side(z, e.a) != g.side(z, e.b)) cut += e.weight;
      }
      const double norm = 1.0 / deg0 + 1.0 / deg1;
      value = mode == NcutMode::kExact ? -cut * norm : (2.0 * cut - total_weight) * norm;
      min_proper = std::min(min_proper, value);
    }
    values[z] = value;
    values[flipped] = value;
    degenerate[z] = is_degenerate;
    degenerate[flipped] = is_degenerate;
  }

  double penalty = kDegeneratePenalty;
  if (mode == NcutMode::kSpinProduct && std::isfinite(min_proper)) penalty = std::min(penalty, min_proper);
  for (std::size_t z = 0; z < dim; ++z) {
    if (degenerate[z]) values[z] = penalty;
  }
  return DiagonalHamiltonian(n, std::move(values));
}

double eval_objective(const DiagonalHamiltonian& h, const StateVector& state) {
  if (h.size() != state.size()) throw std::invalid_argument("Hamiltonian and state dimensions differ");
  const auto amps = state.amplitudes();
  const auto vals = h.values();
  double acc = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) acc += std::norm(amps[z]) * vals[z];
  return acc;
}

}  // namespace qseg
