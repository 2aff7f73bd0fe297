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

#include "core/channel.hpp"

#include <cmath>

namespace qstbc::channel {

Mat sample_channel(int M, int N, RngStream& rng) {
  require(M >= 1 && N >= 1, ErrorCode::invalid_argument,
          "antenna counts must be positive");
  Mat h(N, M);
  // Column-major fill so replays are layout-independent.
  for (int j = 0; j < M; ++j) {
    for (int i = 0; i < N; ++i) h(i, j) = rng.next_cn();
  }
  return h;
}

void transmit_into(const Vec& x, const Mat& H, double sigma2, RngStream& rng,
                   Vec& y) {
  const int M = static_cast<int>(H.cols());
  const int N = static_cast<int>(H.rows());
  require(sigma2 >= 0.0, ErrorCode::invalid_argument,
          "noise variance must be >= 0");
  require(x.size() % M == 0, ErrorCode::invalid_argument,
          "transmit vector length ", x.size(), " is not a multiple of M=", M);
  const int T = static_cast<int>(x.size()) / M;
  double power = x.squaredNorm();
  require(std::abs(power - T) <= 1e-9 * T, ErrorCode::invalid_argument,
          "transmit power |x|^2 = ", power, " violates the |x|^2 = T = ", T,
          " convention");

  y.resize(static_cast<Eigen::Index>(N) * T);
  for (int t = 0; t < T; ++t) {
    y.segment(t * N, N).noalias() = H * x.segment(t * M, M);
  }
  if (sigma2 > 0.0) {
    const double scale = std::sqrt(sigma2);
    for (int i = 0; i < N * T; ++i) y(i) += scale * rng.next_cn();
  }
}

Vec transmit(const Vec& x, const Mat& H, double sigma2, RngStream& rng) {
  Vec y;
  transmit_into(x, H, sigma2, rng, y);
  return y;
}

}  // namespace qstbc::channel
