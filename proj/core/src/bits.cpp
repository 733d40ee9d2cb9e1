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

#include "qseg/bits.hpp"

namespace qseg {

std::string to_bitstring(BasisIndex z, int n_qubits) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (bit_of(z, q)) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

BasisIndex from_bitstring(std::string_view bits) {
  if (bits.size() > 64) throw std::invalid_argument("bitstring longer than 64 characters");
  BasisIndex z = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      z |= BasisIndex{1} << q;
    } else if (bits[q] != '0') {
      throw std::invalid_argument("bitstring may only contain '0' and '1'");
    }
  }
  return z;
}

bool lex_less(BasisIndex a, BasisIndex b, int n_qubits) {
  for (int q = 0; q < n_qubits; ++q) {
    const int ba = bit_of(a, q);
    const int bb = bit_of(b, q);
    if (ba != bb) return ba < bb;
  }
  return false;
}

Mask mask_from_string(std::string_view bits) {
  Mask mask;
  mask.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("mask may only contain '0' and '1'");
    mask.push_back(c == '1' ? 1 : 0);
  }
  return mask;
}

std::string mask_to_string(const Mask& mask) {
  std::string out;
  out.reserve(mask.size());
  for (auto v : mask) out.push_back(v ? '1' : '0');
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t x = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace qseg
