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

#ifndef QSTBC_CORE_RNG_HPP
#define QSTBC_CORE_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace qstbc {

// Philox4x32-10 counter-based generator. Every (seed, stream) pair is an
// independently addressable random stream, so Monte Carlo trials can be
// assigned stable streams no matter how work is split across threads.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 4>& counter,
      const std::array<std::uint32_t, 2>& key);
};

// Stream domains keep unrelated consumers of the same master seed apart.
enum class RngDomain : std::uint32_t {
  generic = 0,
  trial = 1,       // simulation trials, substream = (snr index, trial index)
  packing = 2,     // codebook optimizer, substream = restart index
  channel = 3,     // standalone channel draws
};

class RngStream {
 public:
  RngStream(std::uint64_t seed, RngDomain domain, std::uint32_t substream,
            std::uint64_t index);

  std::uint64_t next_u64();
  // Uniform double in (0, 1).
  double next_double();
  // Uniform integer in [0, n), n >= 1. Unbiased (bitmask rejection).
  std::uint64_t next_below(std::uint64_t n);
  // Circularly symmetric complex normal with E|z|^2 = 1.
  std::complex<double> next_cn();

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 3> stream_;  // fixed part of the counter
  std::uint32_t block_ = 0;              // advances per generated block

  std::array<std::uint32_t, 4> next_block();
};

}  // namespace qstbc

#endif  // QSTBC_CORE_RNG_HPP
