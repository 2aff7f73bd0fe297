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

#include "core/verify.hpp"

#include <cmath>

#include <json.hpp>

#include "core/channel.hpp"
#include "core/codec.hpp"
#include "core/gpauli.hpp"
#include "core/rng.hpp"

namespace qstbc::verify {

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Vec random_unit(int d, RngStream& rng) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.next_cn();
  v.normalize();
  return v;
}

Mat random_matrix(int rows, int cols, RngStream& rng) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = rng.next_cn();
  }
  return m;
}

// How far a matrix is from being some scalar multiple of the identity.
double scalar_identity_deviation(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  cxd mean = m.trace() / static_cast<double>(n);
  return max_abs(m - mean * Mat::Identity(n, n));
}

}  // namespace

Report run_suite(const CodeConfig& config) {
  Report report;
  report.config =
      CodeConfig::validated(config.M, config.N, config.T, config.d);
  StabilizerCode code(report.config);

  const int M = config.M;
  const int mt = config.M * config.T;
  const Mat& s1 = code.generator1();
  const Mat& s2 = code.generator2();
  const Mat& cm = code.code_matrix();
  const Mat identity = Mat::Identity(mt, mt);

  auto add = [&](const std::string& name, double measured, double tol,
                 std::string note = {}) {
    report.checks.push_back(
        CheckResult{name, measured <= tol, measured, tol, std::move(note)});
  };

  add("generator_commutation", max_abs(s1 * s2 - s2 * s1), 1e-14);
  add("generator_unitarity",
      std::max(max_abs(s1.adjoint() * s1 - identity),
               max_abs(s2.adjoint() * s2 - identity)),
      1e-12);

  {
    Mat p1 = identity, p2 = identity;
    for (int k = 0; k < M; ++k) {
      p1 = (p1 * s1).eval();
      p2 = (p2 * s2).eval();
    }
    add("generator_order", std::max(max_abs(p1 - identity), max_abs(p2 - identity)),
        1e-12, "S^M = I");
  }

  {
    // No product of generator powers may collapse to a scaled identity
    // except the trivial one; otherwise the group would stabilize nothing.
    double min_dev = 1e300;
    Mat pow1 = identity;
    for (int k = 0; k < M; ++k) {
      Mat prod = pow1;
      for (int m = 0; m < M; ++m) {
        if (k != 0 || m != 0) {
          min_dev = std::min(min_dev, scalar_identity_deviation(prod));
        }
        prod = (prod * s2).eval();
      }
      pow1 = (pow1 * s1).eval();
    }
    add("group_free_of_scaled_identity", 1.0 / min_dev, 2.0,
        "reciprocal distance from scalar identity over nontrivial powers");
  }

  add("code_matrix_orthonormal",
      max_abs(cm.adjoint() * cm - Mat::Identity(config.d, config.d)), 1e-12);
  add("codespace_stabilized",
      std::max(max_abs(s1 * cm - cm), max_abs(s2 * cm - cm)), 1e-12);

  {
    // Independent joint-eigenspace oracle: Re(S1)+Re(S2) has eigenvalue 2
    // exactly on the joint +1 eigenspace.
    Mat herm = 0.5 * (s1 + s1.adjoint()) + 0.5 * (s2 + s2.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> eig(herm);
    int dim = 0;
    for (int i = 0; i < mt; ++i) {
      if (eig.eigenvalues()(i) > 2.0 - 1e-9) ++dim;
    }
    add("joint_eigenspace_dimension",
        std::abs(static_cast<double>(dim - config.d)), 0.0,
        "numerical eigensolver count vs d");
  }

  {
    std::vector<bool> seen(static_cast<std::size_t>(M) * M, false);
    bool bijective = true;
    double eig_err = 0.0;
    const auto w = gpauli::root_table(M);
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        Syndrome z = code.syndrome_of(a, b);
        std::size_t slot = static_cast<std::size_t>(z.z1 * M + z.z2);
        if (seen[slot]) bijective = false;
        seen[slot] = true;
        const Mat& az = code.branch_matrix(code.branch_index(a, b));
        eig_err = std::max(eig_err, max_abs(s1 * az - w[z.z1] * az));
        eig_err = std::max(eig_err, max_abs(s2 * az - w[z.z2] * az));
      }
    }
    add("syndrome_bijective", bijective ? 0.0 : 1.0, 0.0,
        "all M^2 eigenvalue pairs distinct");
    add("syndrome_eigenvalues", eig_err, 1e-12,
        "S_k E_z C = omega^{z_k} E_z C");
  }

  {
    std::vector<Mat> projectors;
    projectors.reserve(static_cast<std::size_t>(M) * M);
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        projectors.push_back(code.projector(code.syndrome_of(a, b)));
      }
    }
    double idem = 0.0, herm_err = 0.0, cross = 0.0;
    Mat sum = Mat::Zero(mt, mt);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
      const Mat& p = projectors[i];
      idem = std::max(idem, max_abs(p * p - p));
      herm_err = std::max(herm_err, max_abs(p - p.adjoint()));
      sum += p;
      for (std::size_t j = 0; j < projectors.size(); ++j) {
        if (i != j) cross = std::max(cross, max_abs(p * projectors[j]));
      }
    }
    add("projector_idempotent", idem, 1e-10);
    add("projector_self_adjoint", herm_err, 1e-10);
    add("projector_mutually_orthogonal", cross, 1e-10);
    add("projector_complete", max_abs(sum - identity), 1e-10);
  }

  {
    double cross = 0.0;
    Mat sum = Mat::Zero(mt, mt);
    for (int i = 0; i < M * M; ++i) {
      const Mat& ai = code.branch_matrix(i);
      sum += ai * ai.adjoint();
      for (int j = 0; j < M * M; ++j) {
        if (i != j) {
          cross = std::max(cross,
                           max_abs(ai.adjoint() * code.branch_matrix(j)));
        }
      }
    }
    add("error_subspaces_orthogonal", cross, 1e-10,
        "images E_z colspace(C) pairwise orthogonal");
    add("error_subspaces_complete", max_abs(sum - identity), 1e-10,
        "the M^2 subspaces of dimension d fill C^{MT}");
  }

  {
    auto basis = config.M == config.N
                     ? gpauli::square_basis(config.N)
                     : gpauli::nonsquare_basis(config.M, config.N);
    RngStream rng(0x5eedu, RngDomain::generic, 1, 0);
    double err = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      Mat h = random_matrix(config.N, config.M, rng);
      auto coeffs = gpauli::expand_channel(h, basis);
      Mat rec = Mat::Zero(config.N, config.M);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        rec += coeffs[i] * basis.elements[i];
      }
      err = std::max(err, max_abs(rec - h));
    }
    add("channel_expansion_roundtrip", err, 1e-12,
        "sum_i c_i B_i reconstructs random H");
  }

  {
    RngStream rng(0x5eedu, RngDomain::generic, 2, 0);
    Vec s = random_unit(config.d, rng);
    Vec cs = cm * s;
    double rt = 0.0, annih = 0.0;
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        Mat r = code.recovery_operator(a, b);
        Mat e = code.lifted_error(a, b);
        rt = std::max(rt, (r * (e * cs) - cs).cwiseAbs().maxCoeff());
        for (int a2 = 0; a2 < M; ++a2) {
          for (int b2 = 0; b2 < M; ++b2) {
            if (a2 == a && b2 == b) continue;
            Mat e2 = code.lifted_error(a2, b2);
            annih = std::max(annih, max_abs(r * (e2 * cm)));
          }
        }
      }
    }
    add("recovery_roundtrip", rt, 1e-10, "R_z E_z C s = C s");
    add("recovery_cross_annihilation", annih, 1e-10,
        "R_z E_{z'} C = 0 for z' != z");
  }

  {
    RngStream rng(0x5eedu, RngDomain::generic, 3, 0);
    Vec s = random_unit(config.d, rng);
    Vec x = codec::encode(s, code);
    add("encode_power",
        std::abs(x.squaredNorm() - static_cast<double>(config.T)), 1e-9,
        "|x|^2 = T");
  }

  {
    // Noiseless end-to-end decode across random fades, every codeword.
    PackingOptions opts;
    opts.iterations = 400;
    opts.restarts = 8;
    Codebook cb = generate_packing(config.d, 4, 0xC0DEB00Cull, opts);
    RngStream rng(0x5eedu, RngDomain::generic, 4, 0);
    long long errors = 0;
    for (int rep = 0; rep < 50; ++rep) {
      Mat h = channel::sample_channel(config.M, config.N, rng);
      for (int k = 0; k < cb.size(); ++k) {
        auto out = codec::end_to_end(k, code, cb, h, 0.0, rng);
        if (out.index != k) ++errors;
      }
    }
    add("noiseless_decode_exact", static_cast<double>(errors), 0.0,
        "0 errors over 50 fades x 4 codewords");
  }

  report.pass = true;
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

std::string Report::to_json() const {
  nlohmann::json doc;
  doc["config"] = {
      {"M", config.M}, {"N", config.N}, {"T", config.T}, {"d", config.d}};
  doc["pass"] = pass;
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    doc["checks"].push_back({{"name", c.name},
                             {"pass", c.pass},
                             {"measured", c.measured},
                             {"tolerance", c.tolerance},
                             {"note", c.note}});
  }
  return doc.dump(2);
}

}  // namespace qstbc::verify
