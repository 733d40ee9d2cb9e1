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

#include "qseg/seg_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qseg {

SegGraph::SegGraph(int n_pixels) : n_pixels_(n_pixels), n_vertices_(n_pixels) {
  if (n_pixels < 0) throw std::invalid_argument("negative vertex count");
  qubit_map_.resize(static_cast<std::size_t>(n_pixels));
  std::iota(qubit_map_.begin(), qubit_map_.end(), 0);
}

int SegGraph::add_vertex() {
  qubit_map_.push_back(n_vertices_);
  return n_vertices_++;
}

void SegGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_vertices_) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
}

void SegGraph::add_edge(int a, int b, double weight) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
  if (!std::isfinite(weight)) throw std::invalid_argument("edge weight must be finite");
  auto [it, inserted] = index_.emplace(key(a, b), edges_.size());
  if (!inserted) {
    throw std::invalid_argument("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  }
  edges_.push_back({a, b, weight});
}

std::optional<double> SegGraph::weight(int a, int b) const {
  auto it = index_.find(key(a, b));
  if (it == index_.end()) return std::nullopt;
  return edges_[it->second].weight;
}

void SegGraph::set_weight(int a, int b, double weight) {
  auto it = index_.find(key(a, b));
  if (it == index_.end()) throw std::invalid_argument("no such edge");
  if (!std::isfinite(weight)) throw std::invalid_argument("edge weight must be finite");
  edges_[it->second].weight = weight;
}

Terminals SegGraph::add_terminals() {
  if (terminals_) throw std::invalid_argument("graph already has terminals");
  const int source = add_vertex();
  const int sink = add_vertex();
  terminals_ = Terminals{source, sink};
  return *terminals_;
}

double SegGraph::incident_weight(int v) const {
  check_vertex(v);
  double acc = 0.0;
  for (const auto& e : edges_) {
    if (e.a == v || e.b == v) acc += e.weight;
  }
  return acc;
}

int SegGraph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const Edge& e) { return e.a == v || e.b == v; }));
}

void SegGraph::set_qubit_map(std::vector<int> map) {
  if (map.size() != static_cast<std::size_t>(n_vertices_)) {
    throw std::invalid_argument("qubit map must cover every vertex");
  }
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("qubit map is not a bijection");
  }
  qubit_map_ = std::move(map);
}

SegGraph SegGraph::scaled(double factor) const {
  SegGraph g = *this;
  for (auto& e : g.edges_) e.weight *= factor;
  return g;
}

Mask SegGraph::pixel_mask(BasisIndex z) const {
  Mask m(static_cast<std::size_t>(n_pixels_));
  for (int v = 0; v < n_pixels_; ++v) m[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(side(z, v));
  return m;
}

}  // namespace qseg
