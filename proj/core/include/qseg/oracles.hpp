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

#ifndef QSEG_ORACLES_HPP_
#define QSEG_ORACLES_HPP_

#include <optional>
#include <string>

#include "qseg/bits.hpp"
#include "qseg/seg_graph.hpp"

namespace qseg {

enum class CutMethod { kExhaustive, kMaxflow };

struct CutResult {
  BasisIndex partition = 0;  ///< bit per qubit; 0 = source/background side
  int n_qubits = 0;
  double value = 0.0;        ///< cut weight or Ncut
  CutMethod method = CutMethod::kExhaustive;

  std::string bitstring() const { return to_bitstring(partition, n_qubits); }
};

/// Sum of weights of edges whose endpoints lie on different sides of z.
double cut_weight(const SegGraph& g, BasisIndex z);

/// Ncut(A, B) for the bipartition z, or nullopt when a side is empty or has
/// zero total degree.
std::optional<double> normalized_cut(const SegGraph& g, BasisIndex z);

/// True when z keeps the source at 0 and the sink at 1 (always true without
/// terminals).
bool is_admissible(const SegGraph& g, BasisIndex z);

/// Minimum cut by enumerating every admissible bipartition. Ties go to the
/// lexicographically smallest bitstring. Throws CapacityError above 22
/// vertices.
CutResult exhaustive_mincut(const SegGraph& g);

/// Edmonds-Karp maximum flow between the terminals. The reported partition
/// puts on the sink side exactly the vertices that can still reach the sink
/// in the residual graph, which is the lexicographically smallest minimum
/// cut. Throws std::invalid_argument without terminals or with negative
/// weights.
CutResult maxflow_mincut(const SegGraph& g);

/// Same as maxflow_mincut, also returning the flow value.
struct MaxflowResult {
  CutResult cut;
  double flow = 0.0;
};
MaxflowResult edmonds_karp(const SegGraph& g);

/// Exact Ncut minimizer over proper bipartitions; returns the
/// lexicographically smaller of z and its complement.
CutResult exhaustive_ncut(const SegGraph& g);

/// 2|A n B| / (|A| + |B|); 1 when both masks are empty.
double dice(const Mask& a, const Mask& b);

/// max(dice(a, b), dice(~a, b)) for methods that cannot name the classes.
double dice_label_ambiguous(const Mask& a, const Mask& b);

Mask complement(const Mask& m);

}  // namespace qseg

#endif  // QSEG_ORACLES_HPP_
