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

#ifndef QSEG_BITS_HPP_
#define QSEG_BITS_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qseg {

/// Index of a computational basis state. Qubit 0 is the least significant bit.
using BasisIndex = std::uint64_t;

/// Per-pixel (or per-vertex) binary labels, 1 = object.
using Mask = std::vector<std::uint8_t>;

/// Register sizes above this are rejected (2^22 complex doubles = 64 MiB).
inline constexpr int kMaxQubits = 22;

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int bit_of(BasisIndex z, int q) { return static_cast<int>((z >> q) & 1U); }

inline BasisIndex all_ones(int n) {
  return n >= 64 ? ~BasisIndex{0} : ((BasisIndex{1} << n) - 1);
}

/// Text form of a basis index: character i is qubit i, so "01" means
/// qubit 0 = 0 and qubit 1 = 1 (basis index 2).
std::string to_bitstring(BasisIndex z, int n_qubits);
BasisIndex from_bitstring(std::string_view bits);

/// Ordering of basis states by their text form.
bool lex_less(BasisIndex a, BasisIndex b, int n_qubits);

Mask mask_from_string(std::string_view bits);
std::string mask_to_string(const Mask& mask);

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Uniform double in [0, 1) built from the top 53 bits; portable across
/// standard libraries unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace qseg

#endif  // QSEG_BITS_HPP_
