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

// qstbc command line: `verify` runs the algebraic invariant suite for a
// configuration, `simulate` executes a declarative BER experiment, and
// `codebook generate|inspect` manages Grassmannian packings. Everything goes
// through the public C API in qstbc.h.

#include <qstbc.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

// Exit codes: 0 success, 1 validation or verification failure, 2 I/O,
// 3 bad usage.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 3;

volatile std::sig_atomic_t g_cancel = 0;

void handle_sigint(int) { g_cancel = 1; }

int exit_code_for(qstbc_status status) {
  switch (status) {
    case QSTBC_OK:
      return kExitOk;
    case QSTBC_ERR_IO:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

[[noreturn]] void die(qstbc_status status) {
  std::fprintf(stderr, "error: %s: %s\n", qstbc_status_name(status),
               qstbc_last_error());
  std::exit(exit_code_for(status));
}

void check(qstbc_status status) {
  if (status != QSTBC_OK) die(status);
}

struct CodebookDeleter {
  void operator()(qstbc_codebook* cb) const { qstbc_codebook_free(cb); }
};
using CodebookPtr = std::unique_ptr<qstbc_codebook, CodebookDeleter>;

struct ResultsDeleter {
  void operator()(qstbc_results* r) const { qstbc_results_free(r); }
};
using ResultsPtr = std::unique_ptr<qstbc_results, ResultsDeleter>;

std::string rate_fraction(int codebook_size, int T) {
  int bits = 0;
  while ((1 << bits) < codebook_size) ++bits;
  int g = std::gcd(bits, T);
  return std::to_string(bits / g) + "/" + std::to_string(T / g);
}

// ---- verify -------------------------------------------------------------

int run_verify(int M, int N, int T, int d, const std::string& format,
               const std::string& out_path) {
  char* report_json = nullptr;
  qstbc_status status = qstbc_verify(M, N, T, d, &report_json);
  if (report_json == nullptr) die(status);
  std::string report(report_json);
  qstbc_string_free(report_json);

  if (format == "json") {
    if (out_path.empty()) {
      std::printf("%s\n", report.c_str());
    } else {
      std::ofstream os(out_path);
      if (!os.good()) {
        std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
        return kExitIo;
      }
      os << report << "\n";
    }
  } else {
    json doc = json::parse(report);
    std::printf("configuration M=%d N=%d T=%d d=%d\n", M, N, T, d);
    for (const auto& c : doc["checks"]) {
      std::printf("  [%s] %-34s measured %-12.3e tol %-9.0e %s\n",
                  c["pass"].get<bool>() ? "PASS" : "FAIL",
                  c["name"].get<std::string>().c_str(),
                  c["measured"].get<double>(), c["tolerance"].get<double>(),
                  c["note"].get<std::string>().c_str());
    }
    std::printf("result: %s\n",
                doc["pass"].get<bool>() ? "all checks passed" : "FAILED");
    if (!out_path.empty()) {
      std::ofstream os(out_path);
      if (!os.good()) {
        std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
        return kExitIo;
      }
      os << report << "\n";
    }
  }
  return status == QSTBC_OK ? kExitOk : kExitValidation;
}

// ---- simulate -----------------------------------------------------------

struct RunConfig {
  int M = 0, N = 0, T = 0, d = 0;
  std::string codebook_path;  // exclusive with generate
  bool codebook_generate = false;
  int cb_dim = 0, cb_size = 0, cb_iterations = 0, cb_restarts = 0;
  std::uint64_t cb_seed = 1;
  std::vector<double> snr_db;
  std::int64_t trials_per_point = 0;
  std::uint64_t seed = 1;
  int workers = 0;
  std::int64_t stop_at_bit_errors = 0;
  std::string out_basename = "results";
  bool write_csv = true, write_json = true;
};

[[noreturn]] void config_error(const std::string& where,
                               const std::string& what) {
  std::fprintf(stderr, "error: run config: %s: %s\n", where.c_str(),
               what.c_str());
  std::exit(kExitValidation);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) config_error(where, "unknown key '" + it.key() + "'");
  }
}

template <typename T>
T get_field(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) config_error(where, std::string("missing '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(where + "." + key, e.what());
  }
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is.good()) {
    std::fprintf(stderr, "error: cannot open run config '%s'\n", path.c_str());
    std::exit(kExitIo);
  }
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    config_error(path, e.what());
  }

  RunConfig rc;
  reject_unknown(doc, path,
                 {"config", "codebook", "snr_db", "trials_per_point", "seed",
                  "workers", "stop_at_bit_errors", "output"});

  if (!doc.contains("config")) config_error(path, "missing 'config'");
  const json& cfg = doc.at("config");
  reject_unknown(cfg, "config", {"M", "N", "T", "d"});
  rc.M = get_field<int>(cfg, "config", "M");
  rc.N = get_field<int>(cfg, "config", "N");
  rc.T = get_field<int>(cfg, "config", "T");
  rc.d = get_field<int>(cfg, "config", "d");

  if (!doc.contains("codebook")) config_error(path, "missing 'codebook'");
  const json& cb = doc.at("codebook");
  reject_unknown(cb, "codebook", {"path", "generate"});
  if (cb.contains("path") == cb.contains("generate")) {
    config_error("codebook", "give exactly one of 'path' or 'generate'");
  }
  if (cb.contains("path")) {
    rc.codebook_path = get_field<std::string>(cb, "codebook", "path");
  } else {
    const json& gen = cb.at("generate");
    reject_unknown(gen, "codebook.generate",
                   {"d", "K", "seed", "iterations", "restarts"});
    rc.codebook_generate = true;
    rc.cb_dim = get_field<int>(gen, "codebook.generate", "d");
    rc.cb_size = get_field<int>(gen, "codebook.generate", "K");
    if (gen.contains("seed"))
      rc.cb_seed = get_field<std::uint64_t>(gen, "codebook.generate", "seed");
    if (gen.contains("iterations"))
      rc.cb_iterations = get_field<int>(gen, "codebook.generate", "iterations");
    if (gen.contains("restarts"))
      rc.cb_restarts = get_field<int>(gen, "codebook.generate", "restarts");
  }

  if (!doc.contains("snr_db")) config_error(path, "missing 'snr_db'");
  const json& snr = doc.at("snr_db");
  if (snr.is_array()) {
    for (const auto& v : snr) {
      if (!v.is_number()) config_error("snr_db", "entries must be numbers");
      rc.snr_db.push_back(v.get<double>());
    }
  } else if (snr.is_object()) {
    reject_unknown(snr, "snr_db", {"start", "stop", "step"});
    double start = get_field<double>(snr, "snr_db", "start");
    double stop = get_field<double>(snr, "snr_db", "stop");
    double step = get_field<double>(snr, "snr_db", "step");
    if (step <= 0) config_error("snr_db.step", "must be > 0");
    for (double v = start; v <= stop + 1e-9; v += step) rc.snr_db.push_back(v);
  } else {
    config_error("snr_db", "must be an array or {start, stop, step}");
  }

  rc.trials_per_point = get_field<std::int64_t>(doc, path, "trials_per_point");
  if (doc.contains("seed")) rc.seed = get_field<std::uint64_t>(doc, path, "seed");
  if (doc.contains("workers")) rc.workers = get_field<int>(doc, path, "workers");
  if (doc.contains("stop_at_bit_errors")) {
    rc.stop_at_bit_errors = get_field<std::int64_t>(doc, path, "stop_at_bit_errors");
  }
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    reject_unknown(out, "output", {"basename", "formats"});
    if (out.contains("basename"))
      rc.out_basename = get_field<std::string>(out, "output", "basename");
    if (out.contains("formats")) {
      rc.write_csv = rc.write_json = false;
      for (const auto& f : out.at("formats")) {
        std::string name = f.get<std::string>();
        if (name == "csv") {
          rc.write_csv = true;
        } else if (name == "json") {
          rc.write_json = true;
        } else {
          config_error("output.formats", "unknown format '" + name + "'");
        }
      }
    }
  }
  return rc;
}

std::vector<double> parse_snr_list(const std::string& arg) {
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      std::fprintf(stderr, "error: bad --snr entry '%s'\n", tok.c_str());
      std::exit(kExitUsage);
    }
  }
  return out;
}

void progress_cb(int point, int64_t done, int64_t total, void* user) {
  int points = *static_cast<int*>(user);
  std::fprintf(stderr, "\r  point %d/%d: %5.1f%%", point + 1, points,
               100.0 * static_cast<double>(done) / static_cast<double>(total));
  if (done == total) std::fprintf(stderr, "\n");
  std::fflush(stderr);
}

int run_simulate(const std::string& config_path, bool seed_set,
                 std::uint64_t seed_override, std::int64_t trials_override,
                 const std::string& snr_override,
                 const std::string& out_override, const std::string& format,
                 int workers_override, bool quiet) {
  RunConfig rc = parse_run_config(config_path);
  if (seed_set) rc.seed = seed_override;
  if (trials_override > 0) rc.trials_per_point = trials_override;
  if (!snr_override.empty()) rc.snr_db = parse_snr_list(snr_override);
  if (!out_override.empty()) rc.out_basename = out_override;
  if (workers_override >= 0) rc.workers = workers_override;
  if (format == "csv") rc.write_json = false;
  if (format == "json") rc.write_csv = false;
  if (const char* env = std::getenv("QSTBC_THREADS")) {
    rc.workers = std::atoi(env);
  }

  // Load or generate the codebook before touching any output file, so a bad
  // reference leaves nothing half-written.
  CodebookPtr codebook;
  {
    qstbc_codebook* cb = nullptr;
    if (rc.codebook_generate) {
      check(qstbc_codebook_generate(rc.cb_dim, rc.cb_size, rc.cb_seed,
                                    rc.cb_iterations, rc.cb_restarts, &cb));
    } else {
      check(qstbc_codebook_load(rc.codebook_path.c_str(), &cb));
    }
    codebook.reset(cb);
  }
  if (qstbc_codebook_dim(codebook.get()) != rc.d) {
    std::fprintf(stderr,
                 "error: codebook dimension %d does not match config d=%d\n",
                 qstbc_codebook_dim(codebook.get()), rc.d);
    return kExitValidation;
  }

  const int K = qstbc_codebook_size(codebook.get());
  if (!quiet) {
    std::printf("configuration  M=%d N=%d T=%d d=%d\n", rc.M, rc.N, rc.T, rc.d);
    std::printf("codebook       K=%d, min chordal distance %.6f\n", K,
                qstbc_codebook_min_distance(codebook.get()));
    std::printf("rate           %s bits/channel use\n",
                rate_fraction(K, rc.T).c_str());
    std::printf("trials/point   %" PRId64 ", seed %" PRIu64 ", workers %d\n",
                rc.trials_per_point, rc.seed, rc.workers);
  }

  int points = static_cast<int>(rc.snr_db.size());
  qstbc_sim_spec spec{};
  spec.m = rc.M;
  spec.n = rc.N;
  spec.t = rc.T;
  spec.d = rc.d;
  spec.snr_grid_db = rc.snr_db.data();
  spec.snr_points = points;
  spec.trials_per_point = rc.trials_per_point;
  spec.seed = rc.seed;
  spec.workers = rc.workers;
  spec.stop_at_bit_errors = rc.stop_at_bit_errors;
  spec.cancel = &g_cancel;
  if (!quiet) {
    spec.progress = progress_cb;
    spec.progress_user = &points;
  }

  std::signal(SIGINT, handle_sigint);
  ResultsPtr results;
  {
    qstbc_results* r = nullptr;
    check(qstbc_simulate(&spec, codebook.get(), &r));
    results.reset(r);
  }
  std::signal(SIGINT, SIG_DFL);

  bool incomplete = false;
  int n = qstbc_results_size(results.get());
  std::printf("%8s %12s %12s %14s %26s %14s\n", "snr_db", "trials",
              "bit_errors", "ber", "ci95", "ser");
  for (int i = 0; i < n; ++i) {
    qstbc_ber_point p{};
    check(qstbc_results_point(results.get(), i, &p));
    std::printf("%8.2f %12" PRId64 " %12" PRId64 " %14.6e [%11.5e,%11.5e] %14.6e%s\n",
                p.snr_db, p.trials, p.bit_errors, p.ber, p.ci_low, p.ci_high,
                p.ser, p.complete ? "" : "  (incomplete)");
    incomplete = incomplete || !p.complete;
  }
  incomplete = incomplete || n < points;

  if (rc.write_csv) {
    check(qstbc_results_write_csv(results.get(), (rc.out_basename + ".csv").c_str()));
    if (!quiet) std::printf("wrote %s.csv\n", rc.out_basename.c_str());
  }
  if (rc.write_json) {
    check(qstbc_results_write_json(results.get(), (rc.out_basename + ".json").c_str()));
    if (!quiet) std::printf("wrote %s.json\n", rc.out_basename.c_str());
  }
  if (incomplete) {
    std::fprintf(stderr, "run interrupted: partial results flagged incomplete\n");
    return kExitValidation;
  }
  return kExitOk;
}

// ---- codebook -----------------------------------------------------------

int run_codebook_generate(int dim, int size, std::uint64_t seed,
                          int iterations, int restarts, std::string out_path) {
  qstbc_codebook* cb = nullptr;
  check(qstbc_codebook_generate(dim, size, seed, iterations, restarts, &cb));
  CodebookPtr codebook(cb);
  if (out_path.empty()) {
    out_path = "codebook_d" + std::to_string(dim) + "_K" +
               std::to_string(size) + ".txt";
  }
  check(qstbc_codebook_save(codebook.get(), out_path.c_str()));
  double bound = 0.0;
  check(qstbc_packing_bound(dim, size, &bound));
  std::printf("wrote %s\n", out_path.c_str());
  std::printf("min chordal distance %.9f (upper bound %.9f)\n",
              qstbc_codebook_min_distance(codebook.get()), bound);
  if (!qstbc_codebook_converged(codebook.get())) {
    std::fprintf(stderr,
                 "warning: optimizer had not settled; best packing returned\n");
  }
  return kExitOk;
}

int run_codebook_inspect(const std::string& path) {
  qstbc_codebook* cb = nullptr;
  check(qstbc_codebook_load(path.c_str(), &cb));
  CodebookPtr codebook(cb);
  int dim = qstbc_codebook_dim(codebook.get());
  int size = qstbc_codebook_size(codebook.get());
  std::printf("codebook %s\n", path.c_str());
  std::printf("  d = %d, K = %d\n", dim, size);
  std::printf("  min chordal distance = %.9f\n",
              qstbc_codebook_min_distance(codebook.get()));
  std::printf("  labeling:\n");
  std::vector<double> buf(static_cast<std::size_t>(2 * dim));
  for (int i = 0; i < size; ++i) {
    char bits[33];
    check(qstbc_codebook_label(codebook.get(), i, bits));
    check(qstbc_codebook_vector(codebook.get(), i, buf.data()));
    std::printf("    %2d -> %s  [", i, bits);
    for (int j = 0; j < dim; ++j) {
      std::printf("%s%+.4f%+.4fi", j ? ", " : "", buf[2 * j], buf[2 * j + 1]);
    }
    std::printf("]\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabilizer-based noncoherent space-time block codes"};
  app.set_version_flag("--version", std::string(qstbc_version()));
  app.require_subcommand(1);

  // verify
  int vM = 0, vN = 0, vT = 0, vd = 0;
  std::string v_format = "text", v_out;
  auto* verify = app.add_subcommand(
      "verify", "run the algebraic invariant suite for a configuration");
  verify->add_option("M", vM, "transmit antennas")->required();
  verify->add_option("N", vN, "receive antennas")->required();
  verify->add_option("T", vT, "coherence time")->required();
  verify->add_option("d", vd, "encoded dimension")->required();
  verify->add_option("--format", v_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", v_out, "also write the JSON report here");

  // simulate
  std::string s_config, s_snr, s_out, s_format;
  std::uint64_t s_seed = 0;
  bool s_quiet = false;
  std::int64_t s_trials = 0;
  int s_workers = -1;
  auto* simulate =
      app.add_subcommand("simulate", "run a BER sweep from a run config file");
  simulate->add_option("config", s_config, "run config (JSON)")->required();
  auto* seed_opt = simulate->add_option("--seed", s_seed, "override the seed");
  simulate->add_option("--trials", s_trials, "override trials per point");
  simulate->add_option("--snr", s_snr, "override the SNR grid, e.g. 0,2,4");
  simulate->add_option("--out", s_out, "override the output basename");
  simulate->add_option("--format", s_format, "restrict output to csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--workers", s_workers, "worker threads (0 = auto)");
  simulate->add_flag("--quiet", s_quiet, "suppress progress output");

  // codebook generate|inspect
  auto* codebook = app.add_subcommand("codebook", "codebook tooling");
  codebook->require_subcommand(1);
  int g_dim = 0, g_size = 0, g_iterations = 0, g_restarts = 0;
  std::uint64_t g_seed = 1;
  std::string g_out;
  auto* generate = codebook->add_subcommand("generate",
                                            "optimize a max-min line packing");
  generate->add_option("-d,--dim", g_dim, "ambient dimension")->required();
  generate->add_option("-K,--size", g_size, "number of vectors")->required();
  generate->add_option("--seed", g_seed, "optimizer seed");
  generate->add_option("--iterations", g_iterations,
                       "annealing steps per restart (0 = default)");
  generate->add_option("--restarts", g_restarts, "random restarts (0 = default)");
  generate->add_option("-o,--out", g_out, "output file");
  std::string i_path;
  auto* inspect = codebook->add_subcommand("inspect", "describe a codebook file");
  inspect->add_option("file", i_path, "codebook file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return kExitUsage;
  }

  if (verify->parsed()) return run_verify(vM, vN, vT, vd, v_format, v_out);
  if (simulate->parsed()) {
    return run_simulate(s_config, seed_opt->count() > 0, s_seed, s_trials,
                        s_snr, s_out, s_format, s_workers, s_quiet);
  }
  if (generate->parsed()) {
    return run_codebook_generate(g_dim, g_size, g_seed, g_iterations,
                                 g_restarts, g_out);
  }
  if (inspect->parsed()) return run_codebook_inspect(i_path);
  return kExitUsage;
}
