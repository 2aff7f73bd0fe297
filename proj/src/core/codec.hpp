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

#ifndef QSTBC_CORE_CODEC_HPP
#define QSTBC_CORE_CODEC_HPP

#include <cstdint>
#include <vector>

#include "core/codebook.hpp"
#include "core/common.hpp"
#include "core/rng.hpp"
#include "core/stab.hpp"

namespace qstbc::codec {

// x = sqrt(T) C s for a unit symbol s in C^d.
Vec encode(const Vec& s, const StabilizerCode& code);

// Collapse a received vector into the M^2 per-syndrome d-vectors
// p_z = C^* E_z^* P_z y, in canonical (a-major, b-minor) branch order.
// Requires a square configuration (M == N).
std::vector<Vec> recover_branches_square(const Vec& y,
                                         const StabilizerCode& code);

// Rectangular variant: de-interleaves the N receive antennas into N/M
// independent M-antenna block streams and applies the square recovery to
// each, giving MN branches in (block-major, then a, then b) order.
std::vector<Vec> recover_branches_nonsquare(const Vec& y,
                                            const StabilizerCode& code);

struct DecodeResult {
  int index = 0;
  std::uint32_t bits = 0;
};

// argmax_s s^* (sum_z p_z p_z^*) s over the codebook; ties break to the
// lowest index.
DecodeResult ml_decode(const std::vector<Vec>& branches,
                       const Codebook& codebook);

// encode -> fade -> add noise -> recover -> ml_decode for one trial.
DecodeResult end_to_end(int symbol_index, const StabilizerCode& code,
                        const Codebook& codebook, const Mat& H, double sigma2,
                        RngStream& rng);

// Scratch buffers for the allocation-free decode path; one per worker.
struct DecodeWorkspace {
  Vec stream;     // MT
  Vec collapsed;  // M^2 d, all branches of one block stream
  Mat gram;       // d x d branch accumulator
  Vec scratch;    // d
};

// Monte Carlo decoder: the per-branch maps C^* E_z^* P_z are precomposed
// into one (M^2 d) x MT matrix at build time, so a decode is one collapse
// per block stream plus a K-term quadratic form.
class Decoder {
 public:
  Decoder(const StabilizerCode& code, const Codebook& codebook);

  int decode(const Vec& y, DecodeWorkspace& ws) const;
  DecodeWorkspace make_workspace() const;

 private:
  const StabilizerCode& code_;
  const Codebook& codebook_;
  int m_, n_, t_, d_, blocks_;
  std::vector<Vec> symbols_;
};

}  // namespace qstbc::codec

#endif  // QSTBC_CORE_CODEC_HPP
