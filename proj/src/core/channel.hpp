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

#ifndef QSTBC_CORE_CHANNEL_HPP
#define QSTBC_CORE_CHANNEL_HPP

#include "core/common.hpp"
#include "core/rng.hpp"

namespace qstbc::channel {

// N x M single-tap Rayleigh fading matrix with i.i.d. CN(0,1) entries, held
// constant over one coherence interval.
Mat sample_channel(int M, int N, RngStream& rng);

// y = (I_T (x) H) x + n with n i.i.d. CN(0, sigma2). Applied block-wise per
// time slot; numerically identical to the dense Kronecker product. Requires
// the transmit power convention |x|^2 = T.
Vec transmit(const Vec& x, const Mat& H, double sigma2, RngStream& rng);

// In-place variant used by the Monte Carlo hot path (no allocation).
void transmit_into(const Vec& x, const Mat& H, double sigma2, RngStream& rng,
                   Vec& y);

}  // namespace qstbc::channel

#endif  // QSTBC_CORE_CHANNEL_HPP
