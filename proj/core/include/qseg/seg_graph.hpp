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

#ifndef QSEG_SEG_GRAPH_HPP_
#define QSEG_SEG_GRAPH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qseg/bits.hpp"

namespace qseg {

struct Edge {
  int a;
  int b;
  double weight;
};

struct Terminals {
  int source;  // background side, qubit pinned to 0
  int sink;    // object side, qubit pinned to 1
};

/// Weighted undirected segmentation graph: pixel vertices 0..n_pixels-1 in
/// row-major order, optionally followed by source and sink terminals.
/// No self-loops, at most one edge per unordered pair.
class SegGraph {
 public:
  SegGraph() = default;
  explicit SegGraph(int n_pixels);

  int n_vertices() const { return n_vertices_; }
  int n_pixels() const { return n_pixels_; }
  std::span<const Edge> edges() const { return edges_; }
  const std::optional<Terminals>& terminals() const { return terminals_; }
  bool has_terminals() const { return terminals_.has_value(); }

  int add_vertex();
  /// Throws std::invalid_argument on self-loops, duplicates, bad indices or
  /// non-finite weights.
  void add_edge(int a, int b, double weight);
  std::optional<double> weight(int a, int b) const;
  void set_weight(int a, int b, double weight);

  /// Appends source and sink vertices; edges must be added separately.
  Terminals add_terminals();

  double incident_weight(int v) const;
  int degree(int v) const;

  /// Qubit carrying vertex v. Identity unless reassigned.
  int qubit(int v) const { return qubit_map_[static_cast<std::size_t>(v)]; }
  std::span<const int> qubit_map() const { return qubit_map_; }
  void set_qubit_map(std::vector<int> map);

  /// Graph with every weight multiplied by `factor`.
  SegGraph scaled(double factor) const;

  /// Bit of vertex v in basis state z.
  int side(BasisIndex z, int v) const { return bit_of(z, qubit(v)); }

  /// Pixel labels of basis state z, terminals stripped.
  Mask pixel_mask(BasisIndex z) const;

 private:
  static std::pair<int, int> key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }
  void check_vertex(int v) const;

  int n_pixels_ = 0;
  int n_vertices_ = 0;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, std::size_t> index_;
  std::optional<Terminals> terminals_;
  std::vector<int> qubit_map_;
};

}  // namespace qseg

#endif  // QSEG_SEG_GRAPH_HPP_
