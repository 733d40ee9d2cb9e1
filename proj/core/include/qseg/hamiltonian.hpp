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

#ifndef QSEG_HAMILTONIAN_HPP_
#define QSEG_HAMILTONIAN_HPP_

#include <functional>
#include <span>
#include <vector>

#include "qseg/bits.hpp"
#include "qseg/seg_graph.hpp"
#include "qseg/statevector.hpp"

namespace qseg {

/// Cost Hamiltonian stored as its diagonal: one objective value per basis
/// state. QAOA maximizes the expectation of this operator.
class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian(int n_qubits, std::vector<double> values);

  static DiagonalHamiltonian constant(int n_qubits, double c);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](BasisIndex z) const { return values_[z]; }

  /// Largest value among basis states accepted by `admissible` (all states if
  /// empty); ties go to the lexicographically smallest bitstring.
  BasisIndex argmax(const std::function<bool(BasisIndex)>& admissible = {}) const;

 private:
  int n_qubits_;
  std::vector<double> values_;
};

/// values[z] = total weight of edges whose endpoints disagree in z.
DiagonalHamiltonian maxcut_hamiltonian(const SegGraph& g);

/// Negated max-cut diagonal; its maximum is the minimum cut.
DiagonalHamiltonian mincut_hamiltonian(const SegGraph& g);

enum class NcutMode {
  kExact,     ///< values[z] = -Ncut(A_z, B_z)
  kSpinProduct,  ///< (sum of -w s_j s_k) * (1/deg A + 1/deg B), s = +-1
};

/// Value given to partitions with an empty side (or a side with zero degree)
/// in exact mode. Ncut of any proper partition lies in [0, 2].
inline constexpr double kDegeneratePenalty = -2.0;

/// Requires no terminals and nonnegative weights (std::invalid_argument).
DiagonalHamiltonian ncut_hamiltonian(const SegGraph& g, NcutMode mode = NcutMode::kExact);

/// <psi| H |psi>, exact.
double eval_objective(const DiagonalHamiltonian& h, const StateVector& state);

}  // namespace qseg

#endif  // QSEG_HAMILTONIAN_HPP_
