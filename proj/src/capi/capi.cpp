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

#include "qstbc.h"

#include <chrono>
#include <cstring>
#include <string>
#include <vector>

#include "core/codebook.hpp"
#include "core/codec.hpp"
#include "core/simkit.hpp"
#include "core/stab.hpp"
#include "core/verify.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;

qstbc_status to_status(qstbc::ErrorCode code) {
  switch (code) {
    case qstbc::ErrorCode::invalid_argument:
      return QSTBC_ERR_INVALID_ARG;
    case qstbc::ErrorCode::invalid_config:
      return QSTBC_ERR_INVALID_CONFIG;
    case qstbc::ErrorCode::parse:
      return QSTBC_ERR_PARSE;
    case qstbc::ErrorCode::io:
      return QSTBC_ERR_IO;
    case qstbc::ErrorCode::verify_failed:
      return QSTBC_ERR_VERIFY_FAILED;
    case qstbc::ErrorCode::internal:
      return QSTBC_ERR_INTERNAL;
  }
  return QSTBC_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes + last_error.
template <typename Fn>
qstbc_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const qstbc::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSTBC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QSTBC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct qstbc_code {
  qstbc::StabilizerCode code;
};

struct qstbc_codebook {
  qstbc::Codebook codebook;
};

struct qstbc_results {
  std::vector<qstbc::simkit::BerPoint> points;
  qstbc::simkit::ExperimentSpec spec;
  qstbc::Codebook codebook;
  double runtime_s = 0.0;
};

extern "C" {

const char* qstbc_version(void) { return QSTBC_VERSION; }

const char* qstbc_status_name(qstbc_status status) {
  switch (status) {
    case QSTBC_OK:
      return "ok";
    case QSTBC_ERR_INVALID_ARG:
      return "invalid argument";
    case QSTBC_ERR_INVALID_CONFIG:
      return "invalid configuration";
    case QSTBC_ERR_PARSE:
      return "parse error";
    case QSTBC_ERR_IO:
      return "i/o error";
    case QSTBC_ERR_VERIFY_FAILED:
      return "verification failed";
    case QSTBC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

const char* qstbc_last_error(void) { return g_last_error.c_str(); }

void qstbc_string_free(char* s) { delete[] s; }

qstbc_status qstbc_code_create(int m, int n, int t, int d,
                               qstbc_code** out_code) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(out_code != nullptr, qstbc::ErrorCode::invalid_argument,
                   "out_code is null");
    auto config = qstbc::CodeConfig::validated(m, n, t, d);
    *out_code = new qstbc_code{qstbc::StabilizerCode(config)};
    return QSTBC_OK;
  });
}

void qstbc_code_free(qstbc_code* code) { delete code; }

int qstbc_code_symbol_dim(const qstbc_code* code) {
  return code ? code->code.config().d : 0;
}

int qstbc_code_diversity_order(const qstbc_code* code) {
  return code ? code->code.config().diversity_order() : 0;
}

qstbc_status qstbc_verify(int m, int n, int t, int d,
                          char** out_report_json) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(out_report_json != nullptr,
                   qstbc::ErrorCode::invalid_argument,
                   "out_report_json is null");
    auto config = qstbc::CodeConfig::validated(m, n, t, d);
    auto report = qstbc::verify::run_suite(config);
    *out_report_json = dup_string(report.to_json());
    if (!report.pass) {
      g_last_error = "one or more invariant checks failed";
      return QSTBC_ERR_VERIFY_FAILED;
    }
    return QSTBC_OK;
  });
}

qstbc_status qstbc_codebook_generate(int dim, int size, uint64_t seed,
                                     int iterations, int restarts,
                                     qstbc_codebook** out_codebook) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(out_codebook != nullptr,
                   qstbc::ErrorCode::invalid_argument, "out_codebook is null");
    qstbc::PackingOptions opts;
    if (iterations > 0) opts.iterations = iterations;
    if (restarts > 0) opts.restarts = restarts;
    *out_codebook =
        new qstbc_codebook{qstbc::generate_packing(dim, size, seed, opts)};
    return QSTBC_OK;
  });
}

qstbc_status qstbc_codebook_load(const char* path,
                                 qstbc_codebook** out_codebook) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(path != nullptr && out_codebook != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    *out_codebook = new qstbc_codebook{qstbc::Codebook::load(path)};
    return QSTBC_OK;
  });
}

qstbc_status qstbc_codebook_save(const qstbc_codebook* codebook,
                                 const char* path) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(codebook != nullptr && path != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    codebook->codebook.save(std::string(path));
    return QSTBC_OK;
  });
}

void qstbc_codebook_free(qstbc_codebook* codebook) { delete codebook; }

int qstbc_codebook_dim(const qstbc_codebook* codebook) {
  return codebook ? codebook->codebook.dim() : 0;
}

int qstbc_codebook_size(const qstbc_codebook* codebook) {
  return codebook ? codebook->codebook.size() : 0;
}

double qstbc_codebook_min_distance(const qstbc_codebook* codebook) {
  return codebook ? codebook->codebook.min_chordal_distance() : 0.0;
}

int qstbc_codebook_converged(const qstbc_codebook* codebook) {
  return codebook && codebook->codebook.generator_converged() ? 1 : 0;
}

qstbc_status qstbc_codebook_vector(const qstbc_codebook* codebook, int index,
                                   double* out_re_im) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(codebook != nullptr && out_re_im != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::require(index >= 0 && index < codebook->codebook.size(),
                   qstbc::ErrorCode::invalid_argument, "index out of range");
    const auto& v = codebook->codebook.vector(index);
    for (int i = 0; i < codebook->codebook.dim(); ++i) {
      out_re_im[2 * i] = v(i).real();
      out_re_im[2 * i + 1] = v(i).imag();
    }
    return QSTBC_OK;
  });
}

qstbc_status qstbc_codebook_label(const qstbc_codebook* codebook, int index,
                                  char* out_bits) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(codebook != nullptr && out_bits != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::require(index >= 0 && index < codebook->codebook.size(),
                   qstbc::ErrorCode::invalid_argument, "index out of range");
    std::string bits = codebook->codebook.label_string(index);
    std::memcpy(out_bits, bits.c_str(), bits.size() + 1);
    return QSTBC_OK;
  });
}

qstbc_status qstbc_packing_bound(int dim, int size, double* out_bound) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(out_bound != nullptr, qstbc::ErrorCode::invalid_argument,
                   "out_bound is null");
    *out_bound = qstbc::packing_distance_bound(dim, size);
    return QSTBC_OK;
  });
}

qstbc_status qstbc_simulate(const qstbc_sim_spec* spec,
                            const qstbc_codebook* codebook,
                            qstbc_results** out_results) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(spec != nullptr && codebook != nullptr &&
                       out_results != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::require(spec->snr_grid_db != nullptr && spec->snr_points > 0,
                   qstbc::ErrorCode::invalid_argument, "SNR grid is empty");

    qstbc::simkit::ExperimentSpec es;
    es.config =
        qstbc::CodeConfig::validated(spec->m, spec->n, spec->t, spec->d);
    es.snr_grid_db.assign(spec->snr_grid_db,
                          spec->snr_grid_db + spec->snr_points);
    es.trials_per_point = spec->trials_per_point;
    es.seed = spec->seed;
    es.workers = spec->workers;
    es.stop_at_bit_errors = spec->stop_at_bit_errors;

    qstbc::StabilizerCode code(es.config);
    qstbc::simkit::RunCallbacks cb;
    cb.cancel = spec->cancel;
    if (spec->progress != nullptr) {
      auto fn = spec->progress;
      void* user = spec->progress_user;
      cb.progress = [fn, user](int point, long long done, long long total) {
        fn(point, done, total, user);
      };
    }

    auto t0 = std::chrono::steady_clock::now();
    auto points = qstbc::simkit::run(es, code, codebook->codebook, cb);
    auto t1 = std::chrono::steady_clock::now();

    *out_results = new qstbc_results{
        std::move(points), std::move(es), codebook->codebook,
        std::chrono::duration<double>(t1 - t0).count()};
    return QSTBC_OK;
  });
}

void qstbc_results_free(qstbc_results* results) { delete results; }

int qstbc_results_size(const qstbc_results* results) {
  return results ? static_cast<int>(results->points.size()) : 0;
}

qstbc_status qstbc_results_point(const qstbc_results* results, int index,
                                 qstbc_ber_point* out_point) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(results != nullptr && out_point != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::require(
        index >= 0 && index < static_cast<int>(results->points.size()),
        qstbc::ErrorCode::invalid_argument, "index out of range");
    const auto& p = results->points[static_cast<std::size_t>(index)];
    *out_point = qstbc_ber_point{p.snr_db,  p.trials,        p.bits_sent,
                                 p.bit_errors, p.symbol_errors, p.ber,
                                 p.ser,     p.ci_low,        p.ci_high,
                                 p.complete ? 1 : 0};
    return QSTBC_OK;
  });
}

qstbc_status qstbc_results_write_csv(const qstbc_results* results,
                                     const char* path) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(results != nullptr && path != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::simkit::write_csv(results->points, std::string(path));
    return QSTBC_OK;
  });
}

qstbc_status qstbc_results_write_json(const qstbc_results* results,
                                      const char* path) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(results != nullptr && path != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::simkit::write_json(results->points, results->spec,
                              results->codebook, results->runtime_s,
                              std::string(path));
    return QSTBC_OK;
  });
}

qstbc_status qstbc_results_diversity_slope(const qstbc_results* results,
                                           double ber_min, double ber_max,
                                           int64_t min_bit_errors,
                                           double* out_slope) {
  return guarded([&]() -> qstbc_status {
    qstbc::require(results != nullptr && out_slope != nullptr,
                   qstbc::ErrorCode::invalid_argument, "null argument");
    qstbc::simkit::SlopeOptions opts;
    opts.min_bit_errors = min_bit_errors;
    opts.ber_min = ber_min;
    opts.ber_max = ber_max;
    *out_slope = qstbc::simkit::estimate_diversity_slope(results->points, opts);
    return QSTBC_OK;
  });
}

}  // extern "C"
