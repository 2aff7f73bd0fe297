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

#ifndef QSTBC_CORE_CODEBOOK_HPP
#define QSTBC_CORE_CODEBOOK_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace qstbc {

// sqrt(1 - |<a, b>|^2): distance between the complex lines spanned by two
// unit vectors, invariant under global phase.
double chordal_distance(const Vec& a, const Vec& b);

// A set of K unit vectors in C^d with K a power of two, carrying the bit
// labels used for BER accounting. Immutable once built.
class Codebook {
 public:
  Codebook(int dim, std::vector<Vec> vectors);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(vectors_.size()); }
  int bits_per_symbol() const { return bits_; }
  const Vec& vector(int i) const { return vectors_[static_cast<std::size_t>(i)]; }
  const std::vector<Vec>& vectors() const { return vectors_; }

  std::uint32_t label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  std::string label_string(int i) const;
  // Used by A/B experiments; must be a permutation of [K].
  void relabel(const std::vector<std::uint32_t>& labels);

  double min_chordal_distance() const { return min_distance_; }
  // Bits per channel use when one symbol spans T slots.
  double rate(int T) const;
  // Same rate as an exact reduced fraction, e.g. "2/9".
  std::string rate_fraction(int T) const;

  bool generator_converged() const { return converged_; }
  void set_generator_converged(bool v) { converged_ = v; }

  void save(std::ostream& os) const;
  void save(const std::string& path) const;
  static Codebook load(std::istream& is);
  static Codebook load(const std::string& path);

 private:
  int dim_;
  int bits_;
  std::vector<Vec> vectors_;
  std::vector<std::uint32_t> labels_;  // natural index order by default
  double min_distance_;
  bool converged_ = true;
};

struct PackingOptions {
  int iterations = 1500;  // annealing steps per restart
  int restarts = 32;
  int workers = 1;
};

// Locally optimal max-min chordal distance packing of K lines in C^d via
// log-sum-exp smoothing with a rising sharpness schedule, best of `restarts`
// seeded starts. Deterministic for fixed arguments regardless of workers.
Codebook generate_packing(int dim, int size, std::uint64_t seed,
                          const PackingOptions& options = {});

// Max-min chordal distance no packing of K lines in C^d can exceed
// (orthogonality for K <= d, the simplex bound above).
double packing_distance_bound(int dim, int size);

}  // namespace qstbc

#endif  // QSTBC_CORE_CODEBOOK_HPP
