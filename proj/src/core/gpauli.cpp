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

#include "core/gpauli.hpp"

namespace qstbc::gpauli {

namespace {

void check_dim(int d) {
  require(d >= 2, ErrorCode::invalid_argument, "dimension must be >= 2, got ",
          d);
  require(d <= QSTBC_MAX_PAULI_DIM, ErrorCode::invalid_argument, "dimension ",
          d, " exceeds the supported cap of ", QSTBC_MAX_PAULI_DIM);
}

}  // namespace

std::vector<cxd> root_table(int d) {
  check_dim(d);
  std::vector<cxd> w(d);
  for (int k = 0; k < d; ++k) {
    w[k] = std::polar(1.0, 2.0 * kPi * k / d);
  }
  w[0] = cxd(1.0, 0.0);
  if (d % 2 == 0) w[d / 2] = cxd(-1.0, 0.0);
  return w;
}

Mat shift_matrix(int d) {
  check_dim(d);
  Mat x = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  return x;
}

Mat clock_matrix(int d) {
  check_dim(d);
  auto w = root_table(d);
  Mat z = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) z(i, i) = w[i];
  return z;
}

Mat pauli_element(int d, int a, int b) {
  check_dim(d);
  require(a >= 0 && a < d && b >= 0 && b < d, ErrorCode::invalid_argument,
          "powers must lie in [0, ", d, "), got a=", a, " b=", b);
  auto w = root_table(d);
  // (X^a Z^b)[(j+a) mod d, j] = omega^{j b}.
  Mat e = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    e((j + a) % d, j) = w[(j * b) % d];
  }
  return e;
}

int ErrorBasis::index_of(int a, int b, int l) const {
  require(a >= 0 && a < M && b >= 0 && b < M, ErrorCode::invalid_argument,
          "basis powers out of range");
  if (kind == Kind::square) {
    require(l == 0, ErrorCode::invalid_argument,
            "square basis has no block index");
    return a * N + b;
  }
  require(l >= 0 && l < N / M, ErrorCode::invalid_argument,
          "block index out of range");
  return l * M * M + a * M + b;
}

ErrorBasis square_basis(int N) {
  check_dim(N);
  ErrorBasis basis{ErrorBasis::Kind::square, N, N, {}};
  basis.elements.reserve(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      basis.elements.push_back(pauli_element(N, a, b));
    }
  }
  return basis;
}

ErrorBasis nonsquare_basis(int M, int N) {
  check_dim(M);
  require(N >= M && N % M == 0, ErrorCode::invalid_argument,
          "non-square basis needs M | N, got M=", M, " N=", N);
  int blocks = N / M;
  ErrorBasis basis{ErrorBasis::Kind::nonsquare, M, N, {}};
  basis.elements.reserve(static_cast<std::size_t>(M) * N);
  for (int l = 0; l < blocks; ++l) {
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        Mat e = Mat::Zero(N, M);
        e.block(l * M, 0, M, M) = pauli_element(M, a, b);
        basis.elements.push_back(std::move(e));
      }
    }
  }
  return basis;
}

std::vector<cxd> expand_channel(const Mat& H, const ErrorBasis& basis) {
  require(H.rows() == basis.N && H.cols() == basis.M,
          ErrorCode::invalid_argument, "matrix is ", H.rows(), "x", H.cols(),
          " but the basis spans ", basis.N, "x", basis.M);
  // Tr(B^* B) = N for square elements and M for non-square ones.
  double divisor =
      basis.kind == ErrorBasis::Kind::square ? basis.N : basis.M;
  std::vector<cxd> coeffs(basis.elements.size());
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    coeffs[i] = (basis.elements[i].adjoint() * H).trace() / divisor;
  }
  return coeffs;
}

Mat lift_error(const Mat& B, int T) {
  require(T >= 1, ErrorCode::invalid_argument, "T must be >= 1, got ", T);
  Mat out = Mat::Zero(B.rows() * T, B.cols() * T);
  for (int t = 0; t < T; ++t) {
    out.block(t * B.rows(), t * B.cols(), B.rows(), B.cols()) = B;
  }
  return out;
}

Mat kron(const Mat& A, const Mat& B) {
  Mat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

}  // namespace qstbc::gpauli
