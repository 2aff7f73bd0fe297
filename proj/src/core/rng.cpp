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

#include "core/rng.hpp"

#include <cmath>

namespace qstbc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& c,
    const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, c[0], hi0, lo0);
  mulhilo(kPhiloxM1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(
    const std::array<std::uint32_t, 4>& counter,
    const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
    c = round_once(c, k);
  }
  return c;
}

RngStream::RngStream(std::uint64_t seed, RngDomain domain,
                     std::uint32_t substream, std::uint64_t index) {
  key_ = {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
  stream_ = {static_cast<std::uint32_t>(index),
             static_cast<std::uint32_t>(index >> 32),
             (static_cast<std::uint32_t>(domain) << 24) |
                 (substream & 0x00FFFFFFu)};
}

std::array<std::uint32_t, 4> RngStream::next_block() {
  std::array<std::uint32_t, 4> ctr = {block_++, stream_[0], stream_[1],
                                      stream_[2]};
  return Philox4x32::block(ctr, key_);
}

std::uint64_t RngStream::next_u64() {
  auto b = next_block();
  return (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
}

double RngStream::next_double() {
  // 53 significant bits, offset by half a step to stay inside (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(n - 1 | 1);
  for (;;) {
    std::uint64_t v = next_u64() & mask;
    if (v < n) return v;
  }
}

std::complex<double> RngStream::next_cn() {
  auto b = next_block();
  std::uint64_t x = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
  std::uint64_t y = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
  double u = (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  double v = (static_cast<double>(y >> 11) + 0.5) * 0x1.0p-53;
  // Box-Muller; radius sqrt(-ln u) gives unit total variance per complex draw.
  double r = std::sqrt(-std::log(u));
  double t = 2.0 * 3.141592653589793238462643383279502884 * v;
  return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace qstbc
