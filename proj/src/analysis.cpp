#include "lgas/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "lgas/errors.hpp"
#include "lgas/lbm.hpp"
#include "lgas/mclga.hpp"
#include "lgas/quantum.hpp"
#include "parallel.hpp"

namespace lgas {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kStabilityFloor = -1e-9;

void check_fractions(double lambda_s, double lambda_c) {
  if (!(lambda_s + lambda_c > 0.0)) throw std::invalid_argument("lambda_s + lambda_c must be positive");
}

using Grid = std::vector<std::vector<double>>;

// d/dt, central inside, one-sided at both ends.
double time_derivative(const Grid& f, std::size_t t, std::size_t x) {
  const std::size_t last = f.size() - 1;
  if (t == 0) return f[1][x] - f[0][x];
  if (t == last) return f[last][x] - f[last - 1][x];
  return 0.5 * (f[t + 1][x] - f[t - 1][x]);
}

double space_derivative(const std::vector<double>& row, std::size_t x) {
  const std::size_t n = row.size();
  return 0.5 * (row[(x + 1) % n] - row[(x + n - 1) % n]);
}

double second_space(const std::vector<double>& row, std::size_t x) {
  const std::size_t n = row.size();
  return row[(x + 1) % n] - 2.0 * row[x] + row[(x + n - 1) % n];
}

double second_time(const Grid& f, std::size_t t, std::size_t x) { return f[t + 1][x] - 2.0 * f[t][x] + f[t - 1][x]; }

double mixed(const Grid& f, std::size_t t, std::size_t x) {
  return 0.5 * (space_derivative(f[t + 1], x) - space_derivative(f[t - 1], x));
}

double rms(double sum_sq, std::size_t count) { return count == 0 ? 0.0 : std::sqrt(sum_sq / double(count)); }

Cell mean_cell(const PopulationField& field) {
  Cell sum;
  for (const auto& c : field) sum += c;
  return (1.0 / double(field.size())) * sum;
}

}  // namespace

double theoretical_pi_eq(double rho, double u, double lambda_s, double lambda_c) {
  check_fractions(lambda_s, lambda_c);
  return rho * (kSqrt2 / 2.0) * (2.0 * lambda_s - lambda_c + 3.0 * lambda_c * std::abs(u)) / (lambda_c + lambda_s);
}

Cell theoretical_feq(double rho, double u, double lambda_s, double lambda_c) {
  const double pi = theoretical_pi_eq(rho, u, lambda_s, lambda_c);
  const double moving = rho / 6.0 + kSqrt2 * pi / 6.0;
  return {moving - rho * u / 2.0, 2.0 * rho / 3.0 - kSqrt2 * pi / 3.0, moving + rho * u / 2.0};
}

double pressure_term(double rho, double rho_u, double lambda_s, double lambda_c) {
  check_fractions(lambda_s, lambda_c);
  return rho / 3.0 +
         (3.0 * lambda_c * std::abs(rho_u) + 2.0 * lambda_s * rho - lambda_c * rho) / (3.0 * (lambda_c + lambda_s));
}

EquilibriumRecord measure_equilibrium(const History& history, std::size_t t_start, std::size_t batches) {
  if (t_start >= history.size()) throw std::invalid_argument("averaging window is empty");
  const std::size_t window = history.size() - t_start;

  std::vector<Cell> samples;
  samples.reserve(window);
  for (std::size_t t = t_start; t < history.size(); ++t) samples.push_back(mean_cell(history[t]));

  Cell avg;
  for (const auto& s : samples) avg += s;
  avg = (1.0 / double(window)) * avg;

  EquilibriumRecord record;
  record.f_avg = avg;
  record.u_x = local_velocity(avg);

  batches = std::min(batches, window / 2);
  if (batches >= 2) {
    const std::size_t per_batch = window / batches;
    std::array<double, 3> sum_sq{};
    for (std::size_t b = 0; b < batches; ++b) {
      Cell batch_mean;
      for (std::size_t k = 0; k < per_batch; ++k) batch_mean += samples[b * per_batch + k];
      batch_mean = (1.0 / double(per_batch)) * batch_mean;
      const auto bm = batch_mean.as_array();
      const auto a = avg.as_array();
      for (int i = 0; i < 3; ++i) sum_sq[i] += (bm[i] - a[i]) * (bm[i] - a[i]);
    }
    std::array<double, 3> se{};
    for (int i = 0; i < 3; ++i) se[i] = std::sqrt(sum_sq[i] / double(batches - 1) / double(batches));
    record.f_stderr = Cell::from_array(se);
  }
  return record;
}

FieldDistance field_distance(const PopulationField& a, const PopulationField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fields have different lattice sizes");
  if (a.empty()) return {};
  FieldDistance d;
  for (std::size_t x = 0; x < a.size(); ++x) {
    d.mass += std::abs(a[x].density() - b[x].density());
    d.momentum += std::abs(a[x].momentum() - b[x].momentum());
  }
  d.mass /= double(a.size());
  d.momentum /= double(a.size());
  return d;
}

std::size_t count_extrema(const PopulationField& field, double tolerance) {
  const std::size_t n = field.size();
  std::vector<int> signs;
  for (std::size_t x = 0; x < n; ++x) {
    const double diff = field[(x + 1) % n].density() - field[x].density();
    if (std::abs(diff) > tolerance) signs.push_back(diff > 0.0 ? 1 : -1);
  }
  std::size_t changes = 0;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] != signs[(k + 1) % signs.size()]) ++changes;
  }
  return changes;
}

ResidualReport chapman_residual(const History& history, const CollisionParams& params) {
  if (history.size() < 3) throw std::invalid_argument("residuals need at least three time levels");
  check_fractions(params.lambda_s, params.lambda_c);
  const double a = params.lambda_s / (params.lambda_s + params.lambda_c);
  const double b = params.lambda_c / (params.lambda_s + params.lambda_c);

  const std::size_t levels = history.size();
  const std::size_t n = history.front().size();
  Grid rho(levels, std::vector<double>(n));
  Grid mom(levels, std::vector<double>(n));
  Grid abs_mom(levels, std::vector<double>(n));
  Grid pressure(levels, std::vector<double>(n));
  for (std::size_t t = 0; t < levels; ++t) {
    if (history[t].size() != n) throw std::invalid_argument("history mixes lattice sizes");
    for (std::size_t x = 0; x < n; ++x) {
      rho[t][x] = history[t][x].density();
      mom[t][x] = history[t][x].momentum();
      abs_mom[t][x] = std::abs(mom[t][x]);
      pressure[t][x] = pressure_term(rho[t][x], mom[t][x], params.lambda_s, params.lambda_c);
    }
  }

  ResidualReport report;
  report.resolution = n;
  double mass_sq = 0.0;
  double mom_sq = 0.0;
  for (std::size_t t = 0; t < levels; ++t) {
    for (std::size_t x = 0; x < n; ++x) {
      const double rm = time_derivative(rho, t, x) + space_derivative(mom[t], x);
      const double rj = time_derivative(mom, t, x) + a * space_derivative(rho[t], x) +
                        b * space_derivative(abs_mom[t], x);
      mass_sq += rm * rm;
      mom_sq += rj * rj;
    }
  }
  report.r_mass = rms(mass_sq, levels * n);
  report.r_momentum = rms(mom_sq, levels * n);

  double mass2_sq = 0.0;
  double mom2_sq = 0.0;
  for (std::size_t t = 1; t + 1 < levels; ++t) {
    for (std::size_t x = 0; x < n; ++x) {
      const double rm = second_time(rho, t, x) + 2.0 * mixed(mom, t, x) + second_space(pressure[t], x);
      const double rj = second_time(mom, t, x) + 2.0 * (a * mixed(rho, t, x) + b * mixed(abs_mom, t, x)) +
                        second_space(mom[t], x);
      mass2_sq += rm * rm;
      mom2_sq += rj * rj;
    }
  }
  report.r2_mass = rms(mass2_sq, (levels - 2) * n);
  report.r2_momentum = rms(mom2_sq, (levels - 2) * n);
  return report;
}

PopulationField equilibrium_wave(std::size_t n, double rho0, double amplitude, double u0, double lambda_s,
                                 double lambda_c) {
  if (n < 2) throw std::invalid_argument("lattice size must be at least 2");
  PopulationField field(n);
  for (std::size_t x = 0; x < n; ++x) {
    const double rho = rho0 * (1.0 + amplitude * std::sin(2.0 * std::numbers::pi * double(x) / double(n)));
    field[x] = theoretical_feq(rho, u0, lambda_s, lambda_c);
  }
  return field;
}

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::AlgaConstant: return "alga-const";
    case EngineKind::AlgaAdaptive: return "alga-adaptive";
    case EngineKind::Lbm: return "lbm";
    case EngineKind::Mclga: return "mclga";
    case EngineKind::Qalga: return "qalga";
  }
  return "unknown";
}

EngineKind parse_engine(const std::string& name) {
  for (auto kind : {EngineKind::AlgaConstant, EngineKind::AlgaAdaptive, EngineKind::Lbm, EngineKind::Mclga,
                    EngineKind::Qalga}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown engine '" + name + "'");
}

void SweepConfig::validate() const {
  if (lattice_size < 2) throw std::invalid_argument("lattice size must be at least 2");
  if (!(n_max > 0.0)) throw std::invalid_argument("n_max must be positive");
  if (points == 0) throw std::invalid_argument("sweep needs at least one point");
  if (!(std::abs(u_min) <= 1.0 && std::abs(u_max) <= 1.0)) throw std::invalid_argument("|U| must not exceed 1");
  if (average_from > steps) throw std::invalid_argument("averaging start lies beyond the last step");
  if (engine == EngineKind::Lbm || engine == EngineKind::Qalga)
    throw std::invalid_argument("equilibrium sweeps support alga-const, alga-adaptive and mclga");
}

double SweepConfig::bias(std::size_t m) const {
  if (points == 1) return u_min;
  return u_max - double(m) * (u_max - u_min) / double(points - 1);
}

std::vector<SweepRow> equilibrium_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRow> rows(config.points);
  detail::parallel_for(config.points, config.threads, [&](std::size_t m) {
    SweepRow& row = rows[m];
    row.bias = config.bias(m);
    PopulationField init = init_sine(config.lattice_size, config.n_max, row.bias, config.p0);

    History history;
    switch (config.engine) {
      case EngineKind::AlgaConstant:
        history = run(init, {config.lambda_s, CrunchMode::Constant, config.lambda_c, false}, config.steps);
        break;
      case EngineKind::AlgaAdaptive:
        history = run(init, {config.lambda_s, CrunchMode::LocalLbm, 0.0, false}, config.steps);
        break;
      case EngineKind::Mclga: {
        init = round_populations(init);
        McParams mc{config.mc_lambda, config.attempts_per_cell, config.seed};
        if (mc.attempts_per_cell == 0) mc.attempts_per_cell = default_attempts(init);
        history = run_mclga(init, mc, config.steps);
        break;
      }
      default: break;
    }
    row.measured = measure_equilibrium(history, config.average_from);
    row.measured.source = to_string(config.engine);

    const double rho = row.measured.f_avg.density();
    const double u = row.measured.u_x;
    switch (config.engine) {
      case EngineKind::AlgaConstant: row.theory = theoretical_feq(rho, u, config.lambda_s, config.lambda_c); break;
      case EngineKind::AlgaAdaptive: row.theory = lbm_equilibrium(rho, u); break;
      case EngineKind::Mclga: row.theory = mclga_equilibrium_theory(rho, u); break;
      default: break;
    }
  });
  return rows;
}

void TauScanConfig::validate() const {
  if (lattice_size < 2) throw std::invalid_argument("lattice size must be at least 2");
  if (!(n_max > 0.0)) throw std::invalid_argument("n_max must be positive");
  if (compare_at > steps) throw std::invalid_argument("comparison time lies beyond the last step");
  if (engine != EngineKind::AlgaAdaptive && engine != EngineKind::Qalga)
    throw std::invalid_argument("tau scan runs alga-adaptive or qalga");
  if (engine == EngineKind::Qalga && !is_power_of_two(lattice_size))
    throw std::invalid_argument("qalga needs a power-of-two lattice");
  for (double l : lambda_s_grid) {
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("lambda_s grid values must lie in [0, 1]");
  }
  for (double t : tau_grid) {
    if (!(t > 0.0)) throw std::invalid_argument("tau grid values must be positive");
  }
}

std::vector<double> TauScanConfig::default_lambda_grid(std::size_t count) {
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = double(k + 1) / double(count);
  return grid;
}

std::vector<double> TauScanConfig::default_tau_grid(std::size_t count, double tau_max) {
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = double(k + 1) * tau_max / double(count);
  return grid;
}

std::vector<TauScanRow> tau_scan(const TauScanConfig& config) {
  config.validate();
  if (config.lambda_s_grid.empty()) return {};
  const PopulationField init = init_cosine(config.lattice_size, config.n_max);

  // LBM references do not depend on lambda_s: one run per tau.
  std::vector<PopulationField> reference(config.tau_grid.size());
  detail::parallel_for(config.tau_grid.size(), config.threads, [&](std::size_t k) {
    PopulationField f = init;
    for (std::size_t t = 0; t < config.compare_at; ++t) f = lbm_step(f, config.tau_grid[k]);
    reference[k] = std::move(f);
  });

  std::vector<TauScanRow> rows(config.lambda_s_grid.size());
  detail::parallel_for(rows.size(), config.threads, [&](std::size_t k) {
    TauScanRow& row = rows[k];
    row.lambda_s = config.lambda_s_grid[k];
    const CollisionParams params{row.lambda_s, CrunchMode::LocalLbm, 0.0, false};
    row.best_tau = std::numeric_limits<double>::quiet_NaN();
    row.distance = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    PopulationField f = init;
    PopulationField at_compare = init;
    bool reached = config.compare_at == 0;
    try {
      std::optional<CollisionFactorization> fact;
      if (config.engine == EngineKind::Qalga) fact = svd_lcu(collision_matrix(row.lambda_s));
      for (std::size_t t = 0; t < config.steps; ++t) {
        f = fact ? qalga_step(f, params, *fact) : step(f, params);
        if (!f.is_physical(-kStabilityFloor)) row.stable = false;
        if (t + 1 == config.compare_at) {
          at_compare = f;
          reached = true;
        }
      }
    } catch (const ConservationError&) {
      row.stable = false;
    } catch (const PostSelectionError&) {
      row.stable = false;
    }
    // A run that broke down before the comparison time has no best tau.
    if (!reached || !at_compare.is_physical(-kStabilityFloor)) return;

    for (std::size_t j = 0; j < config.tau_grid.size(); ++j) {
      const FieldDistance d = field_distance(at_compare, reference[j]);
      if (std::isfinite(d.mass) && d.mass < row.distance.mass) {
        row.distance = d;
        row.best_tau = config.tau_grid[j];
      }
    }
  });
  return rows;
}

}  // namespace lgas
