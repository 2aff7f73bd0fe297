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

#include "core/simkit.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "core/channel.hpp"
#include "core/codec.hpp"
#include "core/textio.hpp"
#include "core/version.hpp"

namespace qstbc::simkit {

namespace {

constexpr long long kChunkTrials = 4096;

struct ChunkCounts {
  long long bit_errors = 0;
  long long symbol_errors = 0;
  bool done = false;
};

}  // namespace

void ExperimentSpec::validate() const {
  CodeConfig::validated(config.M, config.N, config.T, config.d);
  require(!snr_grid_db.empty(), ErrorCode::invalid_argument,
          "SNR grid is empty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    require(snr_grid_db[i] > snr_grid_db[i - 1], ErrorCode::invalid_argument,
            "SNR grid must be strictly increasing");
  }
  require(snr_grid_db.size() < (1u << 24), ErrorCode::invalid_argument,
          "SNR grid too large");
  require(trials_per_point >= 1, ErrorCode::invalid_argument,
          "trials_per_point must be >= 1");
  require(workers >= 0, ErrorCode::invalid_argument, "workers must be >= 0");
  require(stop_at_bit_errors >= 0, ErrorCode::invalid_argument,
          "stop_at_bit_errors must be >= 0");
}

WilsonInterval wilson95(long long successes, long long n) {
  require(n >= 1 && successes >= 0 && successes <= n,
          ErrorCode::invalid_argument, "bad counts for Wilson interval");
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2n = z * z / nn;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2n / (4.0 * nn)) / (1.0 + z2n);
  return WilsonInterval{std::max(0.0, center - half),
                        std::min(1.0, center + half)};
}

bool operator==(const BerPoint& a, const BerPoint& b) {
  return a.snr_db == b.snr_db && a.trials == b.trials &&
         a.bits_sent == b.bits_sent && a.bit_errors == b.bit_errors &&
         a.symbol_errors == b.symbol_errors && a.ber == b.ber &&
         a.ser == b.ser && a.ci_low == b.ci_low && a.ci_high == b.ci_high;
}

namespace {

BerPoint finalize_point(double snr_db, long long trials, int bits_per_symbol,
                        long long bit_errors, long long symbol_errors,
                        bool complete) {
  BerPoint p;
  p.snr_db = snr_db;
  p.trials = trials;
  p.bits_sent = trials * bits_per_symbol;
  p.bit_errors = bit_errors;
  p.symbol_errors = symbol_errors;
  p.ber = p.bits_sent > 0
              ? static_cast<double>(bit_errors) / static_cast<double>(p.bits_sent)
              : 0.0;
  p.ser = p.trials > 0 ? static_cast<double>(symbol_errors) /
                             static_cast<double>(p.trials)
                       : 0.0;
  if (p.bits_sent > 0) {
    auto ci = wilson95(p.bit_errors, p.bits_sent);
    p.ci_low = ci.low;
    p.ci_high = ci.high;
  }
  p.complete = complete;
  return p;
}

// Shared state for one SNR point. Chunks are committed strictly in index
// order, so the counted set (and therefore every output bit) is independent
// of scheduling.
struct PointProgress {
  std::mutex mu;
  std::vector<ChunkCounts> chunks;
  long long committed = 0;  // chunks merged so far
  long long cum_bits = 0;
  long long cum_syms = 0;
  long long stop_chunk = -1;  // last counted chunk when stopping early
  std::atomic<long long> next{0};
  std::atomic<bool> halt{false};
};

}  // namespace

std::vector<BerPoint> run(const ExperimentSpec& spec,
                          const StabilizerCode& code, const Codebook& codebook,
                          const RunCallbacks& callbacks) {
  spec.validate();
  const auto& cfg = code.config();
  require(cfg.M == spec.config.M && cfg.N == spec.config.N &&
              cfg.T == spec.config.T && cfg.d == spec.config.d,
          ErrorCode::invalid_argument, "code does not match the spec config");
  require(codebook.dim() == cfg.d, ErrorCode::invalid_argument,
          "codebook dimension ", codebook.dim(), " does not match d=", cfg.d);

  const codec::Decoder decoder(code, codebook);
  const int bits_per_symbol = codebook.bits_per_symbol();
  const int K = codebook.size();

  // Codewords are fixed per run; encode them once.
  std::vector<Vec> codewords;
  codewords.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    codewords.push_back(codec::encode(codebook.vector(k), code));
  }

  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, workers);

  auto cancelled = [&] {
    return callbacks.cancel != nullptr && *callbacks.cancel != 0;
  };

  std::vector<BerPoint> points;
  for (std::size_t pt = 0; pt < spec.snr_grid_db.size(); ++pt) {
    if (cancelled()) break;
    const double snr_db = spec.snr_grid_db[pt];
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);
    const long long chunk_size = std::min(kChunkTrials, spec.trials_per_point);
    const long long n_chunks =
        (spec.trials_per_point + chunk_size - 1) / chunk_size;

    PointProgress prog;
    prog.chunks.resize(static_cast<std::size_t>(n_chunks));

    auto worker_fn = [&] {
      codec::DecodeWorkspace ws = decoder.make_workspace();
      Vec y(cfg.nt());
      for (;;) {
        if (prog.halt.load(std::memory_order_relaxed) || cancelled()) return;
        const long long c = prog.next.fetch_add(1);
        if (c >= n_chunks) return;
        const long long begin = c * chunk_size;
        const long long end =
            std::min(begin + chunk_size, spec.trials_per_point);
        long long bit_err = 0, sym_err = 0;
        for (long long trial = begin; trial < end; ++trial) {
          RngStream rng(spec.seed, RngDomain::trial,
                        static_cast<std::uint32_t>(pt),
                        static_cast<std::uint64_t>(trial));
          const int sent = static_cast<int>(rng.next_below(K));
          const Mat h = channel::sample_channel(cfg.M, cfg.N, rng);
          channel::transmit_into(codewords[static_cast<std::size_t>(sent)], h,
                                 sigma2, rng, y);
          const int decoded = decoder.decode(y, ws);
          if (decoded != sent) {
            ++sym_err;
            bit_err += std::popcount(codebook.label(sent) ^
                                     codebook.label(decoded));
          }
        }

        std::lock_guard<std::mutex> lock(prog.mu);
        auto& slot = prog.chunks[static_cast<std::size_t>(c)];
        slot.bit_errors = bit_err;
        slot.symbol_errors = sym_err;
        slot.done = true;
        bool advanced = false;
        while (prog.committed < n_chunks &&
               prog.chunks[static_cast<std::size_t>(prog.committed)].done) {
          const auto& cc =
              prog.chunks[static_cast<std::size_t>(prog.committed)];
          prog.cum_bits += cc.bit_errors;
          prog.cum_syms += cc.symbol_errors;
          ++prog.committed;
          advanced = true;
          if (spec.stop_at_bit_errors > 0 && prog.stop_chunk < 0 &&
              prog.cum_bits >= spec.stop_at_bit_errors) {
            prog.stop_chunk = prog.committed - 1;
            prog.halt.store(true, std::memory_order_relaxed);
            break;
          }
        }
        if (advanced && callbacks.progress) {
          const long long done_trials =
              std::min(prog.committed * chunk_size, spec.trials_per_point);
          callbacks.progress(static_cast<int>(pt), done_trials,
                             spec.trials_per_point);
        }
      }
    };

    if (workers == 1) {
      worker_fn();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
      for (auto& t : pool) t.join();
    }

    // Counted set: the committed prefix, truncated at the deterministic stop
    // chunk when error-targeted stopping kicked in.
    long long counted_chunks = prog.committed;
    bool complete = true;
    if (prog.stop_chunk >= 0) {
      counted_chunks = prog.stop_chunk + 1;
    } else if (cancelled()) {
      complete = false;
    }
    long long bit_err = 0, sym_err = 0;
    for (long long c = 0; c < counted_chunks; ++c) {
      bit_err += prog.chunks[static_cast<std::size_t>(c)].bit_errors;
      sym_err += prog.chunks[static_cast<std::size_t>(c)].symbol_errors;
    }
    const long long trials =
        std::min(counted_chunks * chunk_size, spec.trials_per_point);
    if (trials == 0) break;  // cancelled before any chunk landed
    points.push_back(finalize_point(snr_db, trials, bits_per_symbol, bit_err,
                                    sym_err, complete));
    if (!complete) break;
  }
  return points;
}

double estimate_diversity_slope(const std::vector<BerPoint>& points,
                                const SlopeOptions& options) {
  std::vector<std::pair<double, double>> selected;  // (snr_db/10, log10 ber)
  for (const auto& p : points) {
    if (p.bit_errors < options.min_bit_errors) continue;
    if (p.ber <= 0.0 || p.ber < options.ber_min || p.ber > options.ber_max)
      continue;
    selected.emplace_back(p.snr_db / 10.0, std::log10(p.ber));
  }
  require(selected.size() >= 2, ErrorCode::invalid_argument,
          "slope estimate needs >= 2 points with >= ", options.min_bit_errors,
          " bit errors inside the BER window, found ", selected.size());
  double mu = 0, mv = 0;
  for (auto [u, v] : selected) {
    mu += u;
    mv += v;
  }
  mu /= static_cast<double>(selected.size());
  mv /= static_cast<double>(selected.size());
  double num = 0, den = 0;
  for (auto [u, v] : selected) {
    num += (u - mu) * (v - mv);
    den += (u - mu) * (u - mu);
  }
  require(den > 0, ErrorCode::invalid_argument,
          "slope estimate needs distinct SNR values");
  return -num / den;
}

namespace {

constexpr const char* kCsvHeader =
    "snr_db,trials,bits_sent,bit_errors,ber,ci_low,ci_high,symbol_errors,ser";

}  // namespace

void write_csv(const std::vector<BerPoint>& points, std::ostream& os) {
  os << kCsvHeader << "\n";
  for (const auto& p : points) {
    os << format_double(p.snr_db) << ',' << p.trials << ',' << p.bits_sent
       << ',' << p.bit_errors << ',' << format_double(p.ber) << ','
       << format_double(p.ci_low) << ',' << format_double(p.ci_high) << ','
       << p.symbol_errors << ',' << format_double(p.ser) << '\n';
  }
}

void write_csv(const std::vector<BerPoint>& points, const std::string& path) {
  std::ofstream os(path);
  require(os.good(), ErrorCode::io, "cannot open '", path, "' for writing");
  write_csv(points, os);
  os.flush();
  require(os.good(), ErrorCode::io, "write to '", path, "' failed");
}

std::vector<BerPoint> read_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), ErrorCode::parse,
          "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kCsvHeader, ErrorCode::parse, "unexpected CSV header: '",
          line, "'");
  std::vector<BerPoint> points;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    require(fields.size() == 9, ErrorCode::parse, "CSV row has ",
            fields.size(), " fields, expected 9");
    BerPoint p;
    p.snr_db = parse_double(fields[0]);
    p.trials = parse_int(fields[1]);
    p.bits_sent = parse_int(fields[2]);
    p.bit_errors = parse_int(fields[3]);
    p.ber = parse_double(fields[4]);
    p.ci_low = parse_double(fields[5]);
    p.ci_high = parse_double(fields[6]);
    p.symbol_errors = parse_int(fields[7]);
    p.ser = parse_double(fields[8]);
    points.push_back(p);
  }
  return points;
}

std::vector<BerPoint> read_csv(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), ErrorCode::io, "cannot open '", path, "'");
  return read_csv(is);
}

std::string results_json(const std::vector<BerPoint>& points,
                         const ExperimentSpec& spec, const Codebook& codebook,
                         double runtime_s) {
  nlohmann::json doc;
  doc["version"] = QSTBC_VERSION;
  doc["spec"] = {
      {"config",
       {{"M", spec.config.M},
        {"N", spec.config.N},
        {"T", spec.config.T},
        {"d", spec.config.d}}},
      {"snr_db", spec.snr_grid_db},
      {"trials_per_point", spec.trials_per_point},
      {"seed", spec.seed},
      {"workers", spec.workers},
      {"stop_at_bit_errors", spec.stop_at_bit_errors},
  };
  doc["codebook"] = {
      {"d", codebook.dim()},
      {"K", codebook.size()},
      {"min_chordal_distance", codebook.min_chordal_distance()},
      {"rate_bits_per_use", codebook.rate(spec.config.T)},
      {"rate_fraction", codebook.rate_fraction(spec.config.T)},
  };
  doc["points"] = nlohmann::json::array();
  for (const auto& p : points) {
    doc["points"].push_back({{"snr_db", p.snr_db},
                             {"trials", p.trials},
                             {"bits_sent", p.bits_sent},
                             {"bit_errors", p.bit_errors},
                             {"ber", p.ber},
                             {"ci_low", p.ci_low},
                             {"ci_high", p.ci_high},
                             {"symbol_errors", p.symbol_errors},
                             {"ser", p.ser},
                             {"complete", p.complete}});
  }
  doc["runtime_s"] = runtime_s;
  return doc.dump(2);
}

void write_json(const std::vector<BerPoint>& points, const ExperimentSpec& spec,
                const Codebook& codebook, double runtime_s,
                const std::string& path) {
  std::ofstream os(path);
  require(os.good(), ErrorCode::io, "cannot open '", path, "' for writing");
  os << results_json(points, spec, codebook, runtime_s) << "\n";
  os.flush();
  require(os.good(), ErrorCode::io, "write to '", path, "' failed");
}

}  // namespace qstbc::simkit
