#pragma once

/**
 * @file analysis.hpp
 * @brief Equilibrium theory, measurement protocols, macroscopic residuals and
 * the tau / lambda_s correspondence scan.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lgas/alga.hpp"
#include "lgas/core.hpp"

namespace lgas {

// ---------------------------------------------------------------------------
// Theory

/// pi_eq = rho (sqrt2 / 2)(2 lambda_s - lambda_c + 3 lambda_c |u|) / (lambda_c + lambda_s).
[[nodiscard]] double theoretical_pi_eq(double rho, double u, double lambda_s, double lambda_c);

/// Equilibrium of the constant-fraction collision.
[[nodiscard]] Cell theoretical_feq(double rho, double u, double lambda_s, double lambda_c);

/// P0 = rho / 3 + (3 lambda_c |rho u| + 2 lambda_s rho - lambda_c rho) / (3 (lambda_c + lambda_s)).
[[nodiscard]] double pressure_term(double rho, double rho_u, double lambda_s, double lambda_c);

// ---------------------------------------------------------------------------
// Measurement

struct EquilibriumRecord {
  double u_x = 0.0;
  Cell f_avg;     ///< time-averaged populations per site
  Cell f_stderr;  ///< batch-means standard error of f_avg
  std::string source;
};

/// Averages the per-site population means over history[t_start ..].
/// The standard error uses `batches` contiguous batch means (at least 2
/// samples per batch; falls back to fewer batches on short windows).
[[nodiscard]] EquilibriumRecord measure_equilibrium(const History& history, std::size_t t_start,
                                                    std::size_t batches = 20);

struct FieldDistance {
  double mass = 0.0;      ///< mean |rho_a - rho_b|
  double momentum = 0.0;  ///< mean |(rho u)_a - (rho u)_b|
};

[[nodiscard]] FieldDistance field_distance(const PopulationField& a, const PopulationField& b);

/// Local extrema of rho(x) around the periodic lattice, counting only
/// slope changes whose adjacent differences exceed `tolerance`.
[[nodiscard]] std::size_t count_extrema(const PopulationField& field, double tolerance = 1e-9);

// ---------------------------------------------------------------------------
// Macroscopic residuals

struct ResidualReport {
  double r_mass = 0.0;      ///< RMS of d_t rho + d_x (rho u)
  double r_momentum = 0.0;  ///< RMS of d_t (rho u) + a d_x rho + b d_x |rho u|
  /// Second-order diagnostics, reported only.
  double r2_mass = 0.0;
  double r2_momentum = 0.0;
  std::size_t resolution = 0;
};

/// Central differences in x (periodic) and t (one-sided at the ends), unit
/// spacing. a = lambda_s / (lambda_s + lambda_c), b = lambda_c / (lambda_s + lambda_c).
/// Requires at least three time levels.
[[nodiscard]] ResidualReport chapman_residual(const History& history, const CollisionParams& params);

/// Smooth constant-fraction equilibrium wave: theoretical_feq(rho0 (1 + a sin(2 pi x / N)), u0).
[[nodiscard]] PopulationField equilibrium_wave(std::size_t n, double rho0, double amplitude, double u0,
                                               double lambda_s, double lambda_c);

// ---------------------------------------------------------------------------
// Experiments

enum class EngineKind { AlgaConstant, AlgaAdaptive, Lbm, Mclga, Qalga };

[[nodiscard]] std::string to_string(EngineKind kind);
[[nodiscard]] EngineKind parse_engine(const std::string& name);

struct SweepConfig {
  EngineKind engine = EngineKind::AlgaConstant;
  std::size_t lattice_size = 200;
  double n_max = 500.0;
  double p0 = 0.2;
  std::size_t points = 20;
  double u_min = 0.0;
  double u_max = 1.0;
  std::size_t steps = 2000;
  std::size_t average_from = 1600;
  double lambda_s = 0.2;
  double lambda_c = 0.2;
  double mc_lambda = 1.0;
  std::size_t attempts_per_cell = 0;  ///< 0 selects default_attempts()
  std::uint64_t seed = 1;
  unsigned threads = 1;

  void validate() const;
  /// Initial bias U for sweep point m: u_max down to u_min, evenly spaced.
  [[nodiscard]] double bias(std::size_t m) const;
};

struct SweepRow {
  double bias = 0.0;
  EquilibriumRecord measured;
  Cell theory;
};

/// Theory per engine: constant fractions -> theoretical_feq, adaptive -> LBM,
/// Monte Carlo -> mclga_equilibrium_theory; evaluated at the mean density
/// and the measured u_x.
[[nodiscard]] std::vector<SweepRow> equilibrium_sweep(const SweepConfig& config);

struct TauScanConfig {
  /// alga-adaptive (skips out-of-range cells) or qalga (never skips).
  EngineKind engine = EngineKind::Qalga;
  std::size_t lattice_size = 512;
  double n_max = 200.0;
  std::size_t steps = 500;
  std::size_t compare_at = 450;
  std::vector<double> lambda_s_grid;
  std::vector<double> tau_grid;
  unsigned threads = 1;

  void validate() const;
  /// lambda_s = (k + 1) / count, k = 0 .. count-1.
  static std::vector<double> default_lambda_grid(std::size_t count = 20);
  /// tau = (k + 1) tau_max / count, k = 0 .. count-1.
  static std::vector<double> default_tau_grid(std::size_t count = 80, double tau_max = 20.0);
};

struct TauScanRow {
  double lambda_s = 0.0;
  double best_tau = 0.0;
  FieldDistance distance;
  bool stable = true;
};

/// For each lambda_s, the tau whose LBM cosine run is closest (mass distance)
/// to the locally adapted run at compare_at. A row is unstable when the run
/// produced a population below -1e-9, a non-finite value, or a conservation /
/// post-selection failure. Rows that broke down before compare_at keep a NaN
/// best_tau.
[[nodiscard]] std::vector<TauScanRow> tau_scan(const TauScanConfig& config);

}  // namespace lgas
