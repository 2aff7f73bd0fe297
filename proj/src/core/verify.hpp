// Copyright 2026 The qstbc authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSTBC_CORE_VERIFY_HPP
#define QSTBC_CORE_VERIFY_HPP

#include <string>
#include <vector>

#include "core/stab.hpp"

namespace qstbc::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst observed value
  double tolerance = 0.0;  // pass when measured <= tolerance
  std::string note;
};

struct Report {
  CodeConfig config;
  std::vector<CheckResult> checks;
  bool pass = false;
  std::string to_json() const;
};

// Runs every algebraic check the construction promises for one (M, N, T, d):
// generator commutation and orders, codespace stabilization, the numerical
// joint-eigenspace cross-check, syndrome bijectivity, projector identities,
// error-subspace decomposition, channel-expansion round trip, recovery round
// trips and a noiseless end-to-end decode.
Report run_suite(const CodeConfig& config);

}  // namespace qstbc::verify

#endif  // QSTBC_CORE_VERIFY_HPP
