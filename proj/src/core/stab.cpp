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

#include "core/stab.hpp"

#include <cmath>

#include "core/gpauli.hpp"

namespace qstbc {

namespace {

// Index helpers for the C^{T/M} (x) C^M (x) C^M factorization of C^{MT}.
// Linear index (g, m, i) -> g*M^2 + m*M + i, where g is the slot group,
// m the slot within the group and i the antenna.
inline int fold(int g, int m, int i, int M) { return (g * M + m) * M + i; }

}  // namespace

CodeConfig CodeConfig::validated(int M, int N, int T, int d) {
  require(M >= 2, ErrorCode::invalid_config,
          "M (transmit antennas) must be >= 2, got ", M);
  require(M <= QSTBC_MAX_PAULI_DIM, ErrorCode::invalid_config,
          "M=", M, " exceeds the supported cap of ", QSTBC_MAX_PAULI_DIM);
  require(N >= M, ErrorCode::invalid_config, "N (receive antennas) must be >= M: got N=",
          N, " < M=", M,
          "; no invertible recovery exists with fewer receive than transmit "
          "antennas");
  require(N % M == 0, ErrorCode::invalid_config,
          "N must be a multiple of M so receive antennas split into M-sized "
          "blocks, got M=",
          M, " N=", N);
  require(N <= 1024, ErrorCode::invalid_config, "N=", N, " is unreasonably large");
  require(T >= 1 && T % M == 0, ErrorCode::invalid_config,
          "T must be a positive multiple of M, got T=", T, " M=", M);
  require(d == T / M, ErrorCode::invalid_config,
          "d must equal T/M (the joint eigenspace dimension): got d=", d,
          " but T/M=", T / M);
  require(d >= 2, ErrorCode::invalid_config,
          "d must be >= 2 (phase-invariant signaling needs at least two "
          "dimensions), got d=",
          d);
  return CodeConfig{M, N, T, d};
}

std::pair<Mat, Mat> build_generators(int M, int T) {
  require(M >= 2 && M <= QSTBC_MAX_PAULI_DIM, ErrorCode::invalid_argument,
          "core size out of range: ", M);
  require(T >= 1 && T % M == 0, ErrorCode::invalid_argument,
          "T must be a positive multiple of M");
  const int groups = T / M;
  const int mt = M * T;
  const auto w = gpauli::root_table(M);

  // S1 permutes (g, m, i) -> (g, m+1, i+1); S2 is diagonal with entry
  // omega^{m-i}. Both built from one root table so the commutator vanishes
  // identically in floating point.
  Mat s1 = Mat::Zero(mt, mt);
  Mat s2 = Mat::Zero(mt, mt);
  for (int g = 0; g < groups; ++g) {
    for (int m = 0; m < M; ++m) {
      for (int i = 0; i < M; ++i) {
        int col = fold(g, m, i, M);
        s1(fold(g, (m + 1) % M, (i + 1) % M, M), col) = 1.0;
        s2(col, col) = w[((m - i) % M + M) % M];
      }
    }
  }
  return {std::move(s1), std::move(s2)};
}

Mat build_code_matrix(int M, int T) {
  require(M >= 2 && T % M == 0, ErrorCode::invalid_argument,
          "invalid core size");
  const int d = T / M;
  Mat c = Mat::Zero(M * T, d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(M));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < M; ++k) {
      c(fold(j, k, k, M), j) = amp;
    }
  }
  return c;
}

Mat build_lifted_error(int M, int T, int a, int b) {
  require(a >= 0 && a < M && b >= 0 && b < M, ErrorCode::invalid_argument,
          "error powers out of range");
  const int groups = T / M;
  const auto w = gpauli::root_table(M);
  Mat e = Mat::Zero(M * T, M * T);
  for (int g = 0; g < groups; ++g) {
    for (int m = 0; m < M; ++m) {
      for (int i = 0; i < M; ++i) {
        e(fold(g, m, (i + a) % M, M), fold(g, m, i, M)) = w[(i * b) % M];
      }
    }
  }
  return e;
}

StabilizerCode::StabilizerCode(const CodeConfig& config)
    : config_(CodeConfig::validated(config.M, config.N, config.T, config.d)) {
  auto [s1, s2] = build_generators(config_.M, config_.T);
  s1_ = std::move(s1);
  s2_ = std::move(s2);
  code_matrix_ = build_code_matrix(config_.M, config_.T);

  const int M = config_.M;
  branches_.reserve(static_cast<std::size_t>(M) * M);
  collapse_ = Mat(M * M * config_.d, config_.mt());
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      Mat az = build_lifted_error(M, config_.T, a, b) * code_matrix_;
      collapse_.middleRows(branch_index(a, b) * config_.d, config_.d) =
          az.adjoint();
      branches_.push_back(std::move(az));
    }
  }

  verify_construction();
}

Syndrome StabilizerCode::syndrome_of(int a, int b) const {
  const int M = config_.M;
  require(a >= 0 && a < M && b >= 0 && b < M, ErrorCode::invalid_argument,
          "error powers out of range");
  // S1 (E v) = omega^{-b} E v and S2 (E v) = omega^{-a} E v on the codespace.
  return Syndrome{(M - b) % M, (M - a) % M};
}

std::pair<int, int> StabilizerCode::error_of(const Syndrome& z) const {
  const int M = config_.M;
  require(z.z1 >= 0 && z.z1 < M && z.z2 >= 0 && z.z2 < M,
          ErrorCode::invalid_argument, "syndrome exponents out of range");
  return {(M - z.z2) % M, (M - z.z1) % M};
}

Mat StabilizerCode::projector(const Syndrome& z) const {
  const int M = config_.M;
  const int mt = config_.mt();
  const auto w = gpauli::root_table(M);
  // Average each generator over its cyclic group:
  // (1/M) sum_k (zbar S)^k projects onto the omega^{z} eigenspace. For M = 2
  // this is exactly the (I + z S)/2 form.
  auto averaged = [&](const Mat& s, int exponent) {
    Mat scaled = std::conj(w[exponent]) * s;
    Mat acc = Mat::Identity(mt, mt);
    Mat power = Mat::Identity(mt, mt);
    for (int k = 1; k < M; ++k) {
      power = (power * scaled).eval();
      acc += power;
    }
    return Mat(acc / static_cast<double>(M));
  };
  return averaged(s1_, z.z1) * averaged(s2_, z.z2);
}

Mat StabilizerCode::recovery_operator(int a, int b) const {
  return lifted_error(a, b).adjoint() * projector(syndrome_of(a, b));
}

Mat StabilizerCode::lifted_error(int a, int b) const {
  return build_lifted_error(config_.M, config_.T, a, b);
}

void StabilizerCode::verify_construction() const {
  const int M = config_.M;
  const int mt = config_.mt();
  const int d = config_.d;

  double comm = (s1_ * s2_ - s2_ * s1_).cwiseAbs().maxCoeff();
  require(comm < 1e-14, ErrorCode::internal,
          "generators do not commute: max entry ", comm);

  double ortho = (code_matrix_.adjoint() * code_matrix_ -
                  Mat::Identity(d, d))
                     .cwiseAbs()
                     .maxCoeff();
  require(ortho < 1e-12, ErrorCode::internal,
          "code matrix columns not orthonormal: ", ortho);

  double stab1 = (s1_ * code_matrix_ - code_matrix_).cwiseAbs().maxCoeff();
  double stab2 = (s2_ * code_matrix_ - code_matrix_).cwiseAbs().maxCoeff();
  require(stab1 < 1e-12 && stab2 < 1e-12, ErrorCode::internal,
          "codespace is not stabilized: ", stab1, ", ", stab2);

  // Numerical joint-eigenspace cross-check: v is fixed by both unitaries
  // exactly when Re(S1) + Re(S2) has eigenvalue 2 at v, so the analytic
  // columns must span that eigenspace and its dimension must be d.
  Eigen::MatrixXcd herm =
      0.5 * (s1_ + s1_.adjoint()) + 0.5 * (s2_ + s2_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> eig(herm);
  int joint_dim = 0;
  for (int i = 0; i < mt; ++i) {
    if (eig.eigenvalues()(i) > 2.0 - 1e-9) ++joint_dim;
  }
  require(joint_dim == d, ErrorCode::internal,
          "joint +1 eigenspace dimension is ", joint_dim, ", expected ", d);
  Mat basis = eig.eigenvectors().rightCols(joint_dim);
  double span_err =
      (code_matrix_ - basis * (basis.adjoint() * code_matrix_))
          .cwiseAbs()
          .maxCoeff();
  require(span_err < 1e-8, ErrorCode::internal,
          "analytic code matrix leaves the computed eigenspace: ", span_err);

  // Syndromes: verify eigenvalues on every branch and that the map is a
  // bijection onto [M]^2.
  const auto w = gpauli::root_table(M);
  std::vector<bool> seen(static_cast<std::size_t>(M) * M, false);
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      Syndrome z = syndrome_of(a, b);
      const Mat& az = branches_[branch_index(a, b)];
      double e1 = (s1_ * az - w[z.z1] * az).cwiseAbs().maxCoeff();
      double e2 = (s2_ * az - w[z.z2] * az).cwiseAbs().maxCoeff();
      require(e1 < 1e-12 && e2 < 1e-12, ErrorCode::internal,
              "syndrome eigenvalue mismatch at (", a, ",", b, "): ", e1, ", ",
              e2);
      int slot = z.z1 * M + z.z2;
      require(!seen[slot], ErrorCode::internal,
              "syndrome table is not injective at (", a, ",", b, ")");
      seen[slot] = true;
      auto [ra, rb] = error_of(z);
      require(ra == a && rb == b, ErrorCode::internal,
              "syndrome table does not invert at (", a, ",", b, ")");
    }
  }
}

}  // namespace qstbc
