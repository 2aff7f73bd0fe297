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

#ifndef QSTBC_CORE_GPAULI_HPP
#define QSTBC_CORE_GPAULI_HPP

#include <vector>

#include "core/common.hpp"

// Soft cap on the clock/shift dimension; raise at configure time if ever
// needed.
#ifndef QSTBC_MAX_PAULI_DIM
#define QSTBC_MAX_PAULI_DIM 16
#endif

namespace qstbc::gpauli {

// d-th roots of unity omega^k, k in [d], from one canonical table so equal
// exponents compare bit-identically everywhere.
std::vector<cxd> root_table(int d);

// Cyclic shift: column i of X_d is e_{(i+1) mod d}.
Mat shift_matrix(int d);

// Clock: Z_d = diag(omega^0, ..., omega^{d-1}).
Mat clock_matrix(int d);

// X_d^a Z_d^b for a, b in [d]. Out-of-range powers are rejected, not reduced.
Mat pauli_element(int d, int a, int b);

struct ErrorBasis {
  enum class Kind { square, nonsquare };

  Kind kind;
  int M;  // columns of each element (transmit antennas)
  int N;  // rows of each element (receive antennas)
  // Canonical order: square (a-major, b-minor) -> index a*N + b;
  // non-square (l-major, then a, then b) -> index l*M*M + a*M + b.
  std::vector<Mat> elements;

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(int a, int b, int l = 0) const;
};

// The N^2 unitaries X^a Z^b spanning C^{NxN}, trace-orthogonal with
// Tr(B_i^* B_j) = N delta_ij.
ErrorBasis square_basis(int N);

// The MN semi-unitary block matrices B(a,b,l) spanning C^{NxM} for M | N:
// one M x M clock/shift word placed at block row l, zeros elsewhere.
ErrorBasis nonsquare_basis(int M, int N);

// Coefficients c such that sum_i c_i B_i == H. Square bases divide the trace
// inner product by N, non-square by M (the per-element Frobenius norm), so
// the reconstruction is exact either way.
std::vector<cxd> expand_channel(const Mat& H, const ErrorBasis& basis);

// I_T (x) B.
Mat lift_error(const Mat& B, int T);

// Plain dense Kronecker product.
Mat kron(const Mat& A, const Mat& B);

}  // namespace qstbc::gpauli

#endif  // QSTBC_CORE_GPAULI_HPP
