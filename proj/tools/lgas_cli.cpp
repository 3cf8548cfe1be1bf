// lgas-cli: experiment harness over the lgas C interface.
//
//   lgas-cli run               evolve one field, write profile and conserved-quantity CSVs
//   lgas-cli equilibrium-sweep time-averaged equilibria against theory
//   lgas-cli tau-scan          lambda_s -> best LBM tau correspondence
//
// Every option can also be set in a flat key=value file passed with --config;
// command-line flags win over the file. LGAS_THREADS sets the thread count.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lgas/lgas.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInvalidConfig = 2, kRuntimeFailure = 3, kIoFailure = 4 };

constexpr double kConservationTolerance = 1e-9;

struct Options {
  std::optional<std::string> engine;
  std::optional<std::size_t> n;
  std::optional<std::size_t> steps;
  std::string init = "cosine";
  std::optional<double> n_max;
  double u_bias = 0.0;
  double p0 = 0.2;
  double contrast = 0.5;
  double lambda_s = 0.2;
  double lambda_c = 0.2;
  bool adaptive = true;
  bool integer_cast = false;
  double tau = 1.0;
  double mc_lambda = 1.0;
  std::size_t attempts = 0;
  std::uint64_t seed = 1;
  std::string snapshots;
  std::string output = ".";
  bool circuit_dump = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  // equilibrium-sweep
  std::size_t points = 20;
  double u_min = 0.0;
  double u_max = 1.0;
  std::optional<std::size_t> average_from;
  // tau-scan
  std::size_t compare_at = 450;
  std::size_t lambda_points = 20;
  std::size_t tau_points = 80;
  double tau_max = 20.0;
};

// Carries an exit code and message out of a subcommand.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(lgas_status status) {
  switch (status) {
    case LGAS_OK: return kOk;
    case LGAS_ERR_INVALID_ARGUMENT:
    case LGAS_ERR_NOT_POWER_OF_TWO:
    case LGAS_ERR_UNNORMALIZABLE: return kInvalidConfig;
    case LGAS_ERR_IO: return kIoFailure;
    default: return kRuntimeFailure;
  }
}

void check(lgas_status status, const std::string& context) {
  if (status == LGAS_OK) return;
  throw Failure{exit_code_for(status), context + ": " + lgas_status_string(status) + " (" + lgas_last_error() + ")"};
}

template <typename T, void (*Destroy)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr); }
};
using FieldHandle = Handle<lgas_field, lgas_field_destroy>;
using EngineHandle = Handle<lgas_engine, lgas_engine_destroy>;

std::ofstream open_csv(const fs::path& path, const std::string& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kIoFailure, "cannot open " + path.string() + " for writing"};
  out << std::setprecision(17) << header << '\n';
  return out;
}

void close_csv(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Failure{kIoFailure, "failed writing " + path.string()};
}

fs::path prepare_output(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kIoFailure, "cannot create output directory " + dir + ": " + ec.message()};
  return fs::path(dir);
}

lgas_engine_kind engine_kind(const Options& o, const char* fallback) {
  lgas_engine_kind kind{};
  check(lgas_engine_kind_parse(o.engine.value_or(fallback).c_str(), &kind), "engine");
  return kind;
}

std::vector<std::size_t> parse_snapshots(const std::string& text, std::size_t steps) {
  std::vector<std::size_t> times;
  if (text.empty()) return {0, steps};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long t = 0;
    try {
      t = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Failure{kInvalidConfig, "bad snapshot time '" + item + "'"};
    if (t > steps) throw Failure{kInvalidConfig, "snapshot time " + item + " lies beyond steps"};
    times.push_back(static_cast<std::size_t>(t));
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

void write_profile(const fs::path& dir, std::size_t t, const std::vector<lgas_cell>& cells) {
  const fs::path path = dir / ("profile_t" + std::to_string(t) + ".csv");
  auto out = open_csv(path, "t,x,n_minus,n_zero,n_plus,rho,rho_u");
  for (std::size_t x = 0; x < cells.size(); ++x) {
    const lgas_cell& c = cells[x];
    out << t << ',' << x << ',' << c.n_minus << ',' << c.n_zero << ',' << c.n_plus << ','
        << (c.n_minus + c.n_zero + c.n_plus) << ',' << (c.n_plus - c.n_minus) << '\n';
  }
  close_csv(out, path);
}

int cmd_run(const Options& o) {
  const lgas_engine_kind kind = engine_kind(o, "alga-adaptive");
  const std::size_t n = o.n.value_or(512);
  const std::size_t steps = o.steps.value_or(500);
  const double n_max = o.n_max.value_or(200.0);
  const auto snapshots = parse_snapshots(o.snapshots, steps);
  if (kind == LGAS_ENGINE_QALGA && (n & (n - 1)) != 0) throw Failure{kInvalidConfig, "qalga needs a power-of-two N"};

  FieldHandle field;
  if (o.init == "cosine") {
    check(lgas_field_create_cosine(n, n_max, o.contrast, &field.ptr), "init");
  } else if (o.init == "sine") {
    check(lgas_field_create_sine(n, n_max, o.u_bias, o.p0, &field.ptr), "init");
  } else {
    throw Failure{kInvalidConfig, "init must be sine or cosine"};
  }
  if (kind == LGAS_ENGINE_MCLGA || o.integer_cast) check(lgas_field_round(field.ptr), "init");

  lgas_engine_config cfg;
  lgas_engine_config_default(&cfg);
  cfg.kind = kind;
  cfg.lambda_s = o.lambda_s;
  cfg.lambda_c = o.lambda_c;
  cfg.adaptive = o.adaptive ? 1 : 0;
  cfg.integer_cast = o.integer_cast ? 1 : 0;
  cfg.tau = o.tau;
  cfg.mc_lambda = o.mc_lambda;
  cfg.attempts_per_cell = o.attempts;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  EngineHandle engine;
  check(lgas_engine_create(&cfg, &engine.ptr), "engine");

  const fs::path dir = prepare_output(o.output);
  if (o.circuit_dump) {
    if (kind != LGAS_ENGINE_QALGA) throw Failure{kInvalidConfig, "circuit_dump needs engine=qalga"};
    std::size_t required = 0;
    check(lgas_circuit_dump(n, o.lambda_s, nullptr, 0, &required), "circuit");
    std::string text(required, '\0');
    check(lgas_circuit_dump(n, o.lambda_s, text.data(), text.size(), &required), "circuit");
    text.pop_back();
    const fs::path path = dir / "circuit.txt";
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw Failure{kIoFailure, "failed writing " + path.string()};
  }

  const fs::path conserved_path = dir / "conserved.csv";
  auto conserved = open_csv(conserved_path, "t,total_mass,total_momentum");
  std::vector<lgas_cell> cells(n);
  double mass0 = 0.0;
  double momentum0 = 0.0;
  check(lgas_field_totals(field.ptr, &mass0, &momentum0), "totals");
  const double scale = std::max(std::abs(mass0), 1.0);
  std::size_t next_snapshot = 0;

  for (std::size_t t = 0;; ++t) {
    double mass = 0.0;
    double momentum = 0.0;
    check(lgas_field_totals(field.ptr, &mass, &momentum), "totals");
    conserved << t << ',' << mass << ',' << momentum << '\n';
    if (next_snapshot < snapshots.size() && snapshots[next_snapshot] == t) {
      check(lgas_field_get_cells(field.ptr, cells.data(), cells.size()), "read field");
      write_profile(dir, t, cells);
      ++next_snapshot;
    }
    if (std::abs(mass - mass0) > kConservationTolerance * scale ||
        std::abs(momentum - momentum0) > kConservationTolerance * scale) {
      close_csv(conserved, conserved_path);
      throw Failure{kRuntimeFailure, "conservation violated at t=" + std::to_string(t)};
    }
    if (t == steps) break;
    const lgas_status status = lgas_engine_step(engine.ptr, field.ptr);
    if (status != LGAS_OK) {
      close_csv(conserved, conserved_path);
      check(status, "step " + std::to_string(t + 1));
    }
  }
  close_csv(conserved, conserved_path);
  return kOk;
}

int cmd_sweep(const Options& o) {
  lgas_sweep_config cfg;
  lgas_sweep_config_default(&cfg);
  cfg.engine = engine_kind(o, "alga-const");
  if (o.n) cfg.lattice_size = *o.n;
  if (o.steps) cfg.steps = *o.steps;
  if (o.n_max) cfg.n_max = *o.n_max;
  cfg.average_from = o.average_from.value_or(cfg.steps * 4 / 5);
  cfg.p0 = o.p0;
  cfg.points = o.points;
  cfg.u_min = o.u_min;
  cfg.u_max = o.u_max;
  cfg.lambda_s = o.lambda_s;
  cfg.lambda_c = o.lambda_c;
  cfg.mc_lambda = o.mc_lambda;
  cfg.attempts_per_cell = o.attempts;
  cfg.seed = o.seed;
  cfg.threads = o.threads;

  std::vector<lgas_sweep_row> rows(cfg.points);
  std::size_t written = 0;
  check(lgas_equilibrium_sweep(&cfg, rows.data(), rows.size(), &written), "equilibrium-sweep");

  const fs::path path = prepare_output(o.output) / "equilibrium_sweep.csv";
  auto out = open_csv(path, "u_x,f_minus,f_zero,f_plus,f_minus_theory,f_zero_theory,f_plus_theory");
  for (std::size_t k = 0; k < written; ++k) {
    const auto& r = rows[k];
    out << r.u_x << ',' << r.measured.n_minus << ',' << r.measured.n_zero << ',' << r.measured.n_plus << ','
        << r.theory.n_minus << ',' << r.theory.n_zero << ',' << r.theory.n_plus << '\n';
  }
  close_csv(out, path);
  return kOk;
}

int cmd_tau_scan(const Options& o) {
  lgas_tau_scan_config cfg;
  lgas_tau_scan_config_default(&cfg);
  cfg.engine = engine_kind(o, "qalga");
  if (o.n) cfg.lattice_size = *o.n;
  if (o.steps) cfg.steps = *o.steps;
  if (o.n_max) cfg.n_max = *o.n_max;
  cfg.compare_at = o.compare_at;
  cfg.lambda_points = o.lambda_points;
  cfg.tau_points = o.tau_points;
  cfg.tau_max = o.tau_max;
  cfg.threads = o.threads;

  std::vector<lgas_tau_row> rows(cfg.lambda_points);
  std::size_t written = 0;
  check(lgas_tau_scan(&cfg, rows.data(), rows.size(), &written), "tau-scan");

  const fs::path path = prepare_output(o.output) / "tau_scan.csv";
  auto out = open_csv(path, "lambda_s,best_tau,distance_mass,distance_momentum,stable");
  for (std::size_t k = 0; k < written; ++k) {
    const auto& r = rows[k];
    out << r.lambda_s << ',' << r.best_tau << ',' << r.distance_mass << ',' << r.distance_momentum << ','
        << r.stable << '\n';
  }
  close_csv(out, path);
  return kOk;
}

void add_options(CLI::App& app, Options& o) {
  app.add_option("--engine", o.engine, "alga-const | alga-adaptive | lbm | mclga | qalga");
  app.add_option("--N", o.n, "lattice size");
  app.add_option("--steps", o.steps, "time steps T");
  app.add_option("--init", o.init, "sine | cosine (run only)")->capture_default_str();
  app.add_option("--n_max", o.n_max, "initial peak population scale");
  app.add_option("--U", o.u_bias, "sine momentum bias")->capture_default_str();
  app.add_option("--p0", o.p0, "sine rest fraction")->capture_default_str();
  app.add_option("--contrast", o.contrast, "cosine density contrast in [0, 1]")->capture_default_str();
  app.add_option("--lambda_s", o.lambda_s, "split fraction")->capture_default_str();
  app.add_option("--lambda_c", o.lambda_c, "crunch fraction (constant mode)")->capture_default_str();
  app.add_option("--adaptive", o.adaptive, "qalga: adapt lambda_c per cell")->capture_default_str();
  app.add_option("--integer_cast", o.integer_cast, "alga: integer collisions")->capture_default_str();
  app.add_option("--tau", o.tau, "LBM relaxation time")->capture_default_str();
  app.add_option("--mc_lambda", o.mc_lambda, "MCLGA collision probability")->capture_default_str();
  app.add_option("--attempts", o.attempts, "MCLGA pair draws per cell and step (0 = mean density / 2)")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "MCLGA seed")->capture_default_str();
  app.add_option("--snapshots", o.snapshots, "comma-separated snapshot times (default 0,T)");
  app.add_option("--output", o.output, "output directory")->capture_default_str();
  app.add_option("--circuit_dump", o.circuit_dump, "qalga: write circuit.txt")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads")->envname("LGAS_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--points", o.points, "sweep points M")->capture_default_str();
  app.add_option("--u_min", o.u_min, "smallest sweep bias")->capture_default_str();
  app.add_option("--u_max", o.u_max, "largest sweep bias")->capture_default_str();
  app.add_option("--average_from", o.average_from, "first averaged step (default 4T/5)");
  app.add_option("--compare_at", o.compare_at, "tau-scan comparison time")->capture_default_str();
  app.add_option("--lambda_points", o.lambda_points, "tau-scan lambda_s grid size")->capture_default_str();
  app.add_option("--tau_points", o.tau_points, "tau-scan tau grid size")->capture_default_str();
  app.add_option("--tau_max", o.tau_max, "tau-scan largest tau")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D1Q3 lattice-gas experiments"};
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);
  Options opts;
  add_options(app, opts);
  auto* run = app.add_subcommand("run", "evolve a field and write profile_t<t>.csv and conserved.csv");
  auto* sweep = app.add_subcommand("equilibrium-sweep", "write equilibrium_sweep.csv");
  auto* scan = app.add_subcommand("tau-scan", "write tau_scan.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (scan->parsed()) return cmd_tau_scan(opts);
  } catch (const Failure& f) {
    std::cerr << "lgas-cli: " << f.message << '\n';
    return f.code;
  }
  return kUsage;
}
