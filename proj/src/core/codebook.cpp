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

#include "core/codebook.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "core/rng.hpp"
#include "core/textio.hpp"

namespace qstbc {

namespace {

bool is_power_of_two(int k) { return k >= 1 && (k & (k - 1)) == 0; }

int log2_exact(int k) {
  int bits = 0;
  while ((1 << bits) < k) ++bits;
  return bits;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;  // trailing comment
    tokens.push_back(t);
  }
  return tokens;
}

}  // namespace

double chordal_distance(const Vec& a, const Vec& b) {
  double overlap = std::norm(cxd(a.adjoint() * b));
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

Codebook::Codebook(int dim, std::vector<Vec> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  require(dim_ >= 1, ErrorCode::invalid_argument, "dimension must be >= 1");
  int k = static_cast<int>(vectors_.size());
  require(k >= 2, ErrorCode::invalid_argument,
          "a codebook needs at least 2 vectors, got ", k);
  require(is_power_of_two(k), ErrorCode::invalid_argument,
          "codebook size must be a power of two for bit labeling, got ", k);
  bits_ = log2_exact(k);
  for (int i = 0; i < k; ++i) {
    require(vectors_[i].size() == dim_, ErrorCode::invalid_argument,
            "vector ", i, " has dimension ", vectors_[i].size(),
            ", expected ", dim_);
    double nrm = vectors_[i].norm();
    require(std::abs(nrm - 1.0) <= 1e-9, ErrorCode::invalid_argument,
            "vector ", i, " has norm ", nrm, ", not unit");
    vectors_[i] /= nrm;
  }
  min_distance_ = 2.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      double dist = chordal_distance(vectors_[i], vectors_[j]);
      require(dist >= 1e-9, ErrorCode::invalid_argument, "vectors ", i,
              " and ", j, " span the same line");
      min_distance_ = std::min(min_distance_, dist);
    }
  }
  labels_.resize(static_cast<std::size_t>(k));
  std::iota(labels_.begin(), labels_.end(), 0u);
}

std::string Codebook::label_string(int i) const {
  std::string s(static_cast<std::size_t>(bits_), '0');
  std::uint32_t v = label(i);
  for (int b = 0; b < bits_; ++b) {
    if (v >> (bits_ - 1 - b) & 1u) s[static_cast<std::size_t>(b)] = '1';
  }
  return s;
}

void Codebook::relabel(const std::vector<std::uint32_t>& labels) {
  require(labels.size() == labels_.size(), ErrorCode::invalid_argument,
          "label table size mismatch");
  std::vector<bool> seen(labels.size(), false);
  for (auto v : labels) {
    require(v < labels.size() && !seen[v], ErrorCode::invalid_argument,
            "labels must form a permutation");
    seen[v] = true;
  }
  labels_ = labels;
}

double Codebook::rate(int T) const {
  require(T >= 1, ErrorCode::invalid_argument, "T must be >= 1");
  return static_cast<double>(bits_) / T;
}

std::string Codebook::rate_fraction(int T) const {
  require(T >= 1, ErrorCode::invalid_argument, "T must be >= 1");
  int g = std::gcd(bits_, T);
  std::ostringstream os;
  os << bits_ / g << "/" << T / g;
  return os.str();
}

void Codebook::save(std::ostream& os) const {
  os << "qstbc-codebook v1 d=" << dim_ << " K=" << size() << "\n";
  os << "# rows: re im pairs, one unit vector per row\n";
  for (const Vec& v : vectors_) {
    for (int i = 0; i < dim_; ++i) {
      if (i) os << ' ';
      os << format_double(v(i).real()) << ' ' << format_double(v(i).imag());
    }
    os << '\n';
  }
}

void Codebook::save(const std::string& path) const {
  std::ofstream os(path);
  require(os.good(), ErrorCode::io, "cannot open '", path, "' for writing");
  save(os);
  os.flush();
  require(os.good(), ErrorCode::io, "write to '", path, "' failed");
}

Codebook Codebook::load(std::istream& is) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(is, line)) {
    header = tokenize(line);
    if (!header.empty()) break;
  }
  require(header.size() == 4 && header[0] == "qstbc-codebook" &&
              header[1] == "v1" && header[2].rfind("d=", 0) == 0 &&
              header[3].rfind("K=", 0) == 0,
          ErrorCode::parse,
          "expected header 'qstbc-codebook v1 d=<d> K=<K>'");
  int d = static_cast<int>(parse_int(header[2].substr(2)));
  int k = static_cast<int>(parse_int(header[3].substr(2)));
  require(d >= 1 && k >= 2, ErrorCode::parse, "header has d=", d, " K=", k);

  std::vector<Vec> vectors;
  vectors.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(vectors.size()) < k && std::getline(is, line)) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    require(static_cast<int>(tokens.size()) == 2 * d, ErrorCode::parse,
            "row ", vectors.size(), " has ", tokens.size(),
            " numbers, expected ", 2 * d);
    Vec v(d);
    for (int i = 0; i < d; ++i) {
      v(i) = cxd(parse_double(tokens[2 * i]), parse_double(tokens[2 * i + 1]));
    }
    vectors.push_back(std::move(v));
  }
  require(static_cast<int>(vectors.size()) == k, ErrorCode::parse,
          "file ended after ", vectors.size(), " of ", k, " rows");
  while (std::getline(is, line)) {
    require(tokenize(line).empty(), ErrorCode::parse,
            "unexpected content after the last row");
  }
  return Codebook(d, std::move(vectors));
}

Codebook Codebook::load(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), ErrorCode::io, "cannot open codebook file '", path, "'");
  try {
    return load(is);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse || e.code() == ErrorCode::invalid_argument)
      fail(e.code() == ErrorCode::parse ? ErrorCode::parse
                                        : ErrorCode::invalid_argument,
           path, ": ", e.what());
    throw;
  }
}

double packing_distance_bound(int dim, int size) {
  require(dim >= 2 && size >= 2, ErrorCode::invalid_argument,
          "bound needs d >= 2, K >= 2");
  double simplex = (static_cast<double>(dim) - 1.0) * size /
                   (static_cast<double>(dim) * (size - 1.0));
  return std::sqrt(std::min(1.0, simplex));
}

namespace {

struct PackingRun {
  Eigen::MatrixXcd vectors;  // d x K, unit columns
  double min_distance = 0.0;
  double final_step = 0.0;
};

double min_pair_distance(const Eigen::MatrixXcd& s) {
  const int k = static_cast<int>(s.cols());
  double best = 2.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      double overlap = std::norm(cxd(s.col(i).adjoint() * s.col(j)));
      best = std::min(best, std::sqrt(std::max(0.0, 1.0 - overlap)));
    }
  }
  return best;
}

PackingRun run_one_start(int dim, int size, std::uint64_t seed, int restart,
                         int iterations) {
  RngStream rng(seed, RngDomain::packing, 0,
                static_cast<std::uint64_t>(restart));
  Eigen::MatrixXcd s(dim, size);
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < dim; ++i) s(i, j) = rng.next_cn();
    s.col(j).normalize();
  }

  // Anneal the log-sum-exp smoothing of max_ij |<s_i,s_j>|^2 while shrinking
  // the step size; at high sharpness only the worst pairs repel.
  const double beta0 = 4.0, beta1 = 1.0e5;
  const double eta0 = 0.5, eta1 = 1.0e-3;
  const int n = std::max(2, iterations);
  double step_norm = 0.0;
  Eigen::MatrixXcd gram(size, size), weighted(size, size), grad(dim, size);
  for (int it = 0; it < n; ++it) {
    double frac = static_cast<double>(it) / (n - 1);
    double beta = beta0 * std::pow(beta1 / beta0, frac);
    double eta = eta0 * std::pow(eta1 / eta0, frac);

    gram.noalias() = s.adjoint() * s;
    double amax = 0.0;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        if (i != j) amax = std::max(amax, std::norm(gram(i, j)));
      }
    }
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
      weighted(i, i) = 0.0;
      for (int j = 0; j < size; ++j) {
        if (i == j) continue;
        double w = std::exp(beta * (std::norm(gram(i, j)) - amax));
        total += w;
        weighted(j, i) = w * gram(j, i);
      }
    }
    grad.noalias() = s * weighted / total;
    step_norm = 0.0;
    for (int j = 0; j < size; ++j) {
      Vec updated = s.col(j) - eta * grad.col(j);
      updated.normalize();
      step_norm = std::max(step_norm, (updated - s.col(j)).norm());
      s.col(j) = updated;
    }
  }
  double achieved = min_pair_distance(s);
  return PackingRun{std::move(s), achieved, step_norm};
}

}  // namespace

Codebook generate_packing(int dim, int size, std::uint64_t seed,
                          const PackingOptions& options) {
  require(dim >= 2, ErrorCode::invalid_argument, "packing needs d >= 2");
  require(size >= 2, ErrorCode::invalid_argument, "packing needs K >= 2");
  require(is_power_of_two(size), ErrorCode::invalid_argument,
          "K must be a power of two for bit labeling, got ", size);
  require(options.iterations >= 1 && options.restarts >= 1,
          ErrorCode::invalid_argument, "iterations and restarts must be >= 1");

  std::vector<PackingRun> runs(static_cast<std::size_t>(options.restarts));
  int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (int r = 0; r < options.restarts; ++r) {
      runs[static_cast<std::size_t>(r)] =
          run_one_start(dim, size, seed, r, options.iterations);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          int r = next.fetch_add(1);
          if (r >= options.restarts) return;
          runs[static_cast<std::size_t>(r)] =
              run_one_start(dim, size, seed, r, options.iterations);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Best by achieved distance; ties go to the lowest restart index.
  int best = 0;
  for (int r = 1; r < options.restarts; ++r) {
    if (runs[static_cast<std::size_t>(r)].min_distance >
        runs[static_cast<std::size_t>(best)].min_distance) {
      best = r;
    }
  }
  const PackingRun& won = runs[static_cast<std::size_t>(best)];
  std::vector<Vec> vectors;
  vectors.reserve(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) vectors.push_back(won.vectors.col(j));
  Codebook cb(dim, std::move(vectors));
  cb.set_generator_converged(won.final_step < 1e-5);
  return cb;
}

}  // namespace qstbc
