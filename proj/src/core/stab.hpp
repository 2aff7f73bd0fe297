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

#ifndef QSTBC_CORE_STAB_HPP
#define QSTBC_CORE_STAB_HPP

#include <utility>
#include <vector>

#include "core/common.hpp"

namespace qstbc {

// Antenna/coherence configuration (M, N, T, d). The stabilizer machinery is
// parameterized on the M x M core; N only enters through per-block decoding,
// so rectangular geometries reuse the square construction of their M.
struct CodeConfig {
  int M = 0;  // transmit antennas
  int N = 0;  // receive antennas
  int T = 0;  // coherence time in channel uses
  int d = 0;  // encoded vector dimension, always T / M

  // Validates every rule and returns the config, or throws Error explaining
  // the first rule that failed.
  static CodeConfig validated(int M, int N, int T, int d);

  int mt() const { return M * T; }
  int nt() const { return N * T; }
  int blocks() const { return N / M; }  // receive-antenna blocks
  int branches() const { return M * N; }
  int diversity_order() const { return M * N; }
};

// Syndrome as a pair of eigenvalue exponents: generator k acts on the branch
// subspace as multiplication by omega^{z_k}.
struct Syndrome {
  int z1 = 0;
  int z2 = 0;
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

// Stabilizer generators at core size M lifted to coherence time T (T must be
// a multiple of M): S1 = I_{T/M} (x) X_M (x) X_M and
// S2 = I_{T/M} (x) Z_M (x) Z_M^{-1}, both MT x MT.
std::pair<Mat, Mat> build_generators(int M, int T);

// Orthonormal basis of the joint +1 eigenspace of the generators, as the
// canonical MT x (T/M) matrix with columns e_i (x) vec(I_M)/sqrt(M).
Mat build_code_matrix(int M, int T);

// I_T (x) (X_M^a Z_M^b) at the lifted dimension MT.
Mat build_lifted_error(int M, int T, int a, int b);

class StabilizerCode {
 public:
  // Builds generators, code matrix, syndrome table and per-branch recovery
  // maps, then verifies the construction numerically; throws on any failure.
  explicit StabilizerCode(const CodeConfig& config);

  const CodeConfig& config() const { return config_; }
  const Mat& generator1() const { return s1_; }
  const Mat& generator2() const { return s2_; }
  const Mat& code_matrix() const { return code_matrix_; }

  // Eigenvalue pair picked up by the error X^a Z^b, derived algebraically
  // from the clock/shift commutation phases.
  Syndrome syndrome_of(int a, int b) const;
  // Inverse of the syndrome table.
  std::pair<int, int> error_of(const Syndrome& z) const;

  // Orthogonal projector onto the z-syndrome subspace, built by averaging
  // each generator over its cyclic group.
  Mat projector(const Syndrome& z) const;

  // E_{(a,b)}^* P_z for z = syndrome_of(a, b); maps the error subspace back
  // into the codespace.
  Mat recovery_operator(int a, int b) const;

  Mat lifted_error(int a, int b) const;

  // Branch index in canonical (a-major, b-minor) order.
  int branch_index(int a, int b) const { return a * config_.M + b; }
  // A_z = E_z C: an orthonormal basis of the z-th error subspace.
  const Mat& branch_matrix(int branch) const { return branches_[branch]; }
  // All branch adjoints stacked into one (M^2 d) x MT matrix; row block z is
  // A_z^*, so W y collapses a received block into every branch at once.
  const Mat& collapse_matrix() const { return collapse_; }

 private:
  CodeConfig config_;
  Mat s1_, s2_;
  Mat code_matrix_;
  std::vector<Mat> branches_;
  Mat collapse_;

  void verify_construction() const;
};

}  // namespace qstbc

#endif  // QSTBC_CORE_STAB_HPP
