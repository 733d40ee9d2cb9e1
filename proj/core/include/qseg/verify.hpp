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

#ifndef QSEG_VERIFY_HPP_
#define QSEG_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace qseg {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Feeds sign-flipped edge weights into the Hamiltonian builders. Exists
  /// so the suite can be shown to fail.
  bool corrupt_weight_sign = false;
  std::uint64_t seed = 2026;
};

/// Cross-oracle and invariant checks: statevector norms and factorization,
/// Hamiltonian brute-force equivalence, min-cut oracle agreement, normalized
/// cut consistency and dataset counts.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace qseg

#endif  // QSEG_VERIFY_HPP_
