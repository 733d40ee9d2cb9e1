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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qseg/statevector.hpp"

using namespace qseg;
using std::numbers::pi;

namespace {

StateVector random_state(Rng& rng, int n) {
  StateVector s(n);
  double norm = 0.0;
  for (auto& a : s.amplitudes()) {
    a = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    norm += std::norm(a);
  }
  for (auto& a : s.amplitudes()) a /= std::sqrt(norm);
  return s;
}

void check_close(const StateVector& s, const std::vector<Complex>& want, double tol = 1e-12) {
  REQUIRE(s.size() == want.size());
  for (std::size_t z = 0; z < want.size(); ++z) {
    CHECK(std::abs(s[z] - want[z]) < tol);
  }
}

}  // namespace

TEST_CASE("register construction") {
  StateVector s(3);
  CHECK(s.size() == 8);
  CHECK(s[0] == Complex(1.0));
  CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(kMaxQubits + 1), CapacityError);
  CHECK(StateVector::basis_state(2, 2)[2] == Complex(1.0));
}

TEST_CASE("plus state with pinned qubits") {
  const double h = 1.0 / std::sqrt(2.0);
  check_close(init_plus_state(1, {}), {h, h});

  // Bit string "01": qubit 0 = 0, qubit 1 = 1, basis index 2.
  const PinnedQubit both[] = {{0, 0}, {1, 1}};
  check_close(init_plus_state(2, both), {0, 0, 1, 0});

  const PinnedQubit top[] = {{2, 1}};
  const auto s = init_plus_state(3, top);
  for (BasisIndex z = 0; z < 8; ++z) CHECK(std::abs(s[z] - Complex(bit_of(z, 2) ? 0.5 : 0.0)) < 1e-12);

  const PinnedQubit dup[] = {{0, 0}, {0, 1}};
  CHECK_THROWS_AS(init_plus_state(2, dup), std::invalid_argument);
  const PinnedQubit out_of_range[] = {{5, 0}};
  CHECK_THROWS_AS(init_plus_state(2, out_of_range), std::invalid_argument);
}

TEST_CASE("single-qubit gates") {
  const double h = 1.0 / std::sqrt(2.0);
  StateVector s(1);
  s.apply_gate(0, hadamard_matrix());
  check_close(s, {h, h});

  StateVector x(1);
  x.apply_pauli(0, Pauli::X);
  check_close(x, {0, 1});

  s.apply_pauli(0, Pauli::Z);
  check_close(s, {h, -h});

  const Gate2x2 not_unitary = {Complex(1), Complex(1), Complex(0), Complex(1)};
  CHECK_THROWS_AS(s.apply_gate(0, not_unitary), std::invalid_argument);
  CHECK_THROWS_AS(s.apply_gate(1, hadamard_matrix()), std::invalid_argument);
}

TEST_CASE("Pauli matrices are Hermitian involutions") {
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const auto m = pauli_matrix(p);
    CHECK(is_unitary(m));
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) CHECK(std::abs(m[r * 2 + c] - std::conj(m[c * 2 + r])) < 1e-15);
    }
    // m * m = I
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const Complex v = m[r * 2] * m[c] + m[r * 2 + 1] * m[2 + c];
        CHECK(std::abs(v - Complex(r == c ? 1.0 : 0.0)) < 1e-15);
      }
    }
  }
}

TEST_CASE("diagonal phase") {
  Rng rng(1);
  StateVector s = random_state(rng, 3);
  const StateVector before = s;
  const std::vector<double> diag = {0, 1, 2, 3, 4, 5, 6, 7};
  s.apply_diagonal_phase(diag, 0.0);
  check_close(s, {before.amplitudes().begin(), before.amplitudes().end()});

  const std::vector<double> ones(8, 1.0);
  s.apply_diagonal_phase(ones, 0.7);
  const Complex g = std::exp(Complex(0, -0.7));
  for (BasisIndex z = 0; z < 8; ++z) CHECK(std::abs(s[z] - g * before[z]) < 1e-12);

  StateVector one = init_plus_state(1, {});
  const std::vector<double> d01 = {0, 1};
  one.apply_diagonal_phase(d01, pi);
  CHECK(std::abs(one[1] + Complex(1.0 / std::sqrt(2.0))) < 1e-12);

  CHECK_THROWS_AS(s.apply_diagonal_phase(d01, 1.0), std::invalid_argument);
}

TEST_CASE("pair phase matches its diagonal") {
  Rng rng(2);
  StateVector a = random_state(rng, 4);
  StateVector b = a;
  a.apply_pair_phase(1, 3, 0.8, 1.3);
  std::vector<double> diag(16);
  for (BasisIndex z = 0; z < 16; ++z) diag[z] = bit_of(z, 1) != bit_of(z, 3) ? 0.8 : 0.0;
  b.apply_diagonal_phase(diag, 1.3);
  for (BasisIndex z = 0; z < 16; ++z) CHECK(std::abs(a[z] - b[z]) < 1e-12);
}

TEST_CASE("mixer") {
  StateVector s(1);
  const int active[] = {0};
  s.apply_mixer(pi / 2, active);
  CHECK(std::abs(s[1] - Complex(0, -1)) < 1e-12);
  CHECK(s.probability_one(0) == doctest::Approx(1.0));

  // Factorization into single-qubit rotations.
  Rng rng(3);
  StateVector m = random_state(rng, 5);
  StateVector f = m;
  const int all[] = {0, 1, 2, 3, 4};
  m.apply_mixer(0.37, all);
  for (int q = 0; q < 5; ++q) f.apply_gate(q, x_rotation(0.37));
  for (BasisIndex z = 0; z < 32; ++z) CHECK(std::abs(m[z] - f[z]) < 1e-10);

  // Inactive qubits keep their marginal.
  const PinnedQubit pins[] = {{2, 1}};
  StateVector p = init_plus_state(3, pins);
  const int pixels[] = {0, 1};
  p.apply_mixer(0.9, pixels);
  CHECK(p.probability_one(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm preservation over mixed operations") {
  Rng rng(4);
  StateVector s = random_state(rng, 6);
  std::vector<double> diag(64);
  const int all[] = {0, 1, 2, 3, 4, 5};
  PauliNoiseChannel noise(NoiseConfig{0.2, 9});
  for (int step = 0; step < 100; ++step) {
    for (auto& d : diag) d = uniform(rng, -2, 2);
    s.apply_diagonal_phase(diag, uniform(rng, 0, 2 * pi));
    s.apply_mixer(uniform(rng, 0, 2 * pi), all);
    noise.apply(s, all);
    REQUIRE(std::abs(s.norm_squared() - 1.0) < 1e-9);
  }
}

TEST_CASE("phase evolution leaves probabilities unchanged") {
  Rng rng(5);
  StateVector s = random_state(rng, 5);
  const auto before = s.probabilities();
  std::vector<double> diag(32);
  for (auto& d : diag) d = uniform(rng, -10, 10);
  s.apply_diagonal_phase(diag, 2.1);
  const auto after = s.probabilities();
  for (std::size_t z = 0; z < 32; ++z) CHECK(std::abs(after[z] - before[z]) < 1e-12);
}

TEST_CASE("sampling") {
  const auto det = sample_bitstrings(StateVector::basis_state(2, from_bitstring("01")), 100, 1);
  CHECK(det.counts.size() == 1);
  CHECK(det.count(from_bitstring("01")) == 100);
  CHECK(det.most_frequent() == from_bitstring("01"));

  const auto uniform_state = init_plus_state(2, {});
  const auto h = sample_bitstrings(uniform_state, 100000, 42);
  CHECK(h.total() == 100000);
  for (BasisIndex z = 0; z < 4; ++z) CHECK(std::abs(h.count(z) / 100000.0 - 0.25) < 0.01);

  const auto again = sample_bitstrings(uniform_state, 100000, 42);
  CHECK(again.counts == h.counts);
}

TEST_CASE("histogram tie-break is lexicographic on the bit string") {
  Histogram h;
  h.n_qubits = 2;
  h.counts[from_bitstring("10")] = 5;  // index 1
  h.counts[from_bitstring("01")] = 5;  // index 2
  CHECK(h.most_frequent() == from_bitstring("01"));
}

TEST_CASE("Pauli noise channel") {
  CHECK_THROWS_AS((NoiseConfig{0.34, 0}.validate()), std::invalid_argument);

  StateVector s = init_plus_state(3, {});
  const StateVector before = s;
  PauliNoiseChannel off(NoiseConfig{0.0, 1});
  const int all[] = {0, 1, 2};
  off.apply(s, all);
  for (BasisIndex z = 0; z < 8; ++z) CHECK(s[z] == before[z]);

  // p = 1/3 on |0>: X and Y flip the bit, Z does not.
  PauliNoiseChannel third(NoiseConfig{1.0 / 3.0, 7});
  int ones = 0;
  const int trials = 30000;
  for (int t = 0; t < trials; ++t) {
    StateVector q(1);
    third.apply(q, 0);
    ones += q.probability_one(0) > 0.5 ? 1 : 0;
  }
  CHECK(std::abs(ones / static_cast<double>(trials) - 2.0 / 3.0) < 0.01);
  CHECK(third.insertions() == static_cast<std::uint64_t>(trials));

  auto trajectory = [](std::uint64_t seed) {
    StateVector q = init_plus_state(4, {});
    PauliNoiseChannel ch(NoiseConfig{0.1, seed});
    const int qs[] = {0, 1, 2, 3};
    for (int i = 0; i < 20; ++i) {
      ch.apply(q, qs);
      q.apply_mixer(0.3, qs);
    }
    return std::vector<Complex>(q.amplitudes().begin(), q.amplitudes().end());
  };
  CHECK(trajectory(11) == trajectory(11));
}
