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

#include "core/codec.hpp"

#include <cmath>

#include "core/channel.hpp"

namespace qstbc::codec {

namespace {

// Gather block stream l of a vectorized N x T receive matrix: rows
// [l M, (l+1) M) of every time slot, keeping slot order.
void gather_stream(const Vec& y, int N, int M, int T, int l, Vec& stream) {
  for (int t = 0; t < T; ++t) {
    stream.segment(t * M, M) = y.segment(t * N + l * M, M);
  }
}

int argmax_score(const Mat& gram, const Codebook& codebook) {
  int best = 0;
  double best_score = -1.0;
  for (int k = 0; k < codebook.size(); ++k) {
    const Vec& s = codebook.vector(k);
    double score = std::real(cxd(s.adjoint() * (gram * s)));
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

}  // namespace

Vec encode(const Vec& s, const StabilizerCode& code) {
  const auto& cfg = code.config();
  require(s.size() == cfg.d, ErrorCode::invalid_argument, "symbol dimension ",
          s.size(), " does not match d=", cfg.d);
  require(std::abs(s.norm() - 1.0) <= 1e-9, ErrorCode::invalid_argument,
          "symbol must be a unit vector, |s| = ", s.norm());
  return std::sqrt(static_cast<double>(cfg.T)) * (code.code_matrix() * s);
}

std::vector<Vec> recover_branches_square(const Vec& y,
                                         const StabilizerCode& code) {
  const auto& cfg = code.config();
  require(cfg.M == cfg.N, ErrorCode::invalid_argument,
          "square recovery needs M == N, got ", cfg.M, "x", cfg.N);
  require(y.size() == cfg.nt(), ErrorCode::invalid_argument,
          "received vector length ", y.size(), ", expected ", cfg.nt());
  std::vector<Vec> branches;
  branches.reserve(static_cast<std::size_t>(cfg.M) * cfg.M);
  for (int z = 0; z < cfg.M * cfg.M; ++z) {
    branches.emplace_back(code.branch_matrix(z).adjoint() * y);
  }
  return branches;
}

std::vector<Vec> recover_branches_nonsquare(const Vec& y,
                                            const StabilizerCode& code) {
  const auto& cfg = code.config();
  require(y.size() == cfg.nt(), ErrorCode::invalid_argument,
          "received vector length ", y.size(), ", expected ", cfg.nt());
  std::vector<Vec> branches;
  branches.reserve(static_cast<std::size_t>(cfg.branches()));
  Vec stream(cfg.mt());
  for (int l = 0; l < cfg.blocks(); ++l) {
    gather_stream(y, cfg.N, cfg.M, cfg.T, l, stream);
    for (int z = 0; z < cfg.M * cfg.M; ++z) {
      branches.emplace_back(code.branch_matrix(z).adjoint() * stream);
    }
  }
  return branches;
}

DecodeResult ml_decode(const std::vector<Vec>& branches,
                       const Codebook& codebook) {
  require(!branches.empty(), ErrorCode::invalid_argument,
          "no branches to decode");
  const int d = codebook.dim();
  Mat gram = Mat::Zero(d, d);
  for (const Vec& p : branches) {
    require(p.size() == d, ErrorCode::invalid_argument,
            "branch dimension mismatch");
    gram.noalias() += p * p.adjoint();
  }
  int index = argmax_score(gram, codebook);
  return DecodeResult{index, codebook.label(index)};
}

DecodeResult end_to_end(int symbol_index, const StabilizerCode& code,
                        const Codebook& codebook, const Mat& H, double sigma2,
                        RngStream& rng) {
  const auto& cfg = code.config();
  require(codebook.dim() == cfg.d, ErrorCode::invalid_argument,
          "codebook dimension ", codebook.dim(), " does not match d=", cfg.d);
  require(symbol_index >= 0 && symbol_index < codebook.size(),
          ErrorCode::invalid_argument, "symbol index out of range");
  Vec x = encode(codebook.vector(symbol_index), code);
  Vec y = channel::transmit(x, H, sigma2, rng);
  auto branches = cfg.M == cfg.N ? recover_branches_square(y, code)
                                 : recover_branches_nonsquare(y, code);
  return ml_decode(branches, codebook);
}

Decoder::Decoder(const StabilizerCode& code, const Codebook& codebook)
    : code_(code),
      codebook_(codebook),
      m_(code.config().M),
      n_(code.config().N),
      t_(code.config().T),
      d_(code.config().d),
      blocks_(code.config().blocks()) {
  require(codebook.dim() == d_, ErrorCode::invalid_argument,
          "codebook dimension ", codebook.dim(), " does not match d=", d_);
  symbols_.reserve(static_cast<std::size_t>(codebook.size()));
  for (int k = 0; k < codebook.size(); ++k) {
    symbols_.push_back(codebook.vector(k));
  }
}

DecodeWorkspace Decoder::make_workspace() const {
  DecodeWorkspace ws;
  ws.stream.resize(m_ * t_);
  ws.collapsed.resize(m_ * m_ * d_);
  ws.gram.resize(d_, d_);
  ws.scratch.resize(d_);
  return ws;
}

int Decoder::decode(const Vec& y, DecodeWorkspace& ws) const {
  const Mat& collapse = code_.collapse_matrix();
  ws.gram.setZero();
  for (int l = 0; l < blocks_; ++l) {
    if (blocks_ == 1) {
      ws.collapsed.noalias() = collapse * y;
    } else {
      gather_stream(y, n_, m_, t_, l, ws.stream);
      ws.collapsed.noalias() = collapse * ws.stream;
    }
    for (int z = 0; z < m_ * m_; ++z) {
      auto p = ws.collapsed.segment(z * d_, d_);
      ws.gram.noalias() += p * p.adjoint();
    }
  }
  int best = 0;
  double best_score = -1.0;
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    ws.scratch.noalias() = ws.gram * symbols_[k];
    double score = std::real(symbols_[k].dot(ws.scratch));
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(k);
    }
  }
  return best;
}

}  // namespace qstbc::codec
