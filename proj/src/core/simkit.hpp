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

#ifndef QSTBC_CORE_SIMKIT_HPP
#define QSTBC_CORE_SIMKIT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/codebook.hpp"
#include "core/common.hpp"
#include "core/stab.hpp"

namespace qstbc::simkit {

struct ExperimentSpec {
  CodeConfig config;
  std::vector<double> snr_grid_db;  // strictly increasing
  long long trials_per_point = 0;
  std::uint64_t seed = 0;
  int workers = 0;                   // 0 = use hardware concurrency
  long long stop_at_bit_errors = 0;  // 0 = fixed trial count

  void validate() const;
};

struct BerPoint {
  double snr_db = 0.0;
  long long trials = 0;
  long long bits_sent = 0;
  long long bit_errors = 0;
  long long symbol_errors = 0;
  double ber = 0.0;
  double ser = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval on the BER
  double ci_high = 0.0;
  bool complete = true;  // false when a run was cancelled mid-point

  // Field-wise equality over the serialized columns.
  friend bool operator==(const BerPoint& a, const BerPoint& b);
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

// 95% Wilson score interval for `successes` out of `n`; stays meaningful at
// zero observed events, unlike the Wald interval.
WilsonInterval wilson95(long long successes, long long n);

struct RunCallbacks {
  // Invoked whenever the committed trial count of a point advances.
  std::function<void(int point_index, long long trials_done,
                     long long trials_total)>
      progress;
  // Polled cooperatively; a nonzero value stops the run after the chunk in
  // flight, flagging the current point incomplete.
  const volatile int* cancel = nullptr;
};

// Runs trials_per_point independent coherence intervals per SNR point:
// uniform symbol draw, fresh Rayleigh channel and noise, ML decode, bit
// accounting under the codebook labeling. Results are a pure function of
// (spec, code, codebook) for any worker count: every trial owns a counter
// RNG stream keyed by (seed, snr index, trial index) and counts are summed
// over an order-independent committed prefix of fixed chunks.
std::vector<BerPoint> run(const ExperimentSpec& spec,
                          const StabilizerCode& code, const Codebook& codebook,
                          const RunCallbacks& callbacks = {});

struct SlopeOptions {
  long long min_bit_errors = 100;
  double ber_min = 0.0;
  double ber_max = 1.0;
};

// Least-squares slope of log10(BER) against SNR_dB/10 over the points with
// enough error events inside the BER window, negated so larger is steeper
// (decades per 10 dB). Throws when fewer than two points qualify.
double estimate_diversity_slope(const std::vector<BerPoint>& points,
                                const SlopeOptions& options = {});

void write_csv(const std::vector<BerPoint>& points, std::ostream& os);
void write_csv(const std::vector<BerPoint>& points, const std::string& path);
std::vector<BerPoint> read_csv(std::istream& is);
std::vector<BerPoint> read_csv(const std::string& path);

// Full results document with the spec and codebook summary for provenance.
std::string results_json(const std::vector<BerPoint>& points,
                         const ExperimentSpec& spec, const Codebook& codebook,
                         double runtime_s);
void write_json(const std::vector<BerPoint>& points, const ExperimentSpec& spec,
                const Codebook& codebook, double runtime_s,
                const std::string& path);

}  // namespace qstbc::simkit

#endif  // QSTBC_CORE_SIMKIT_HPP
