#pragma once

/**
 * @file mclga.hpp
 * @brief Monte Carlo lattice gas with counter-based randomness.
 *
 * Each attempt draws two distinct particles from a cell. A (+, -) pair
 * crunches into two rest particles with probability lambda; a (0, 0) pair
 * splits into (+, -) with probability lambda / 8. Ensemble-averaged, this
 * gives the collision term
 *
 *   Xi_+- = lambda / rho^2 (f0^2 / 8 - 2 f- f+),   Xi_0 = -2 Xi_+-
 *
 * whose fixed points are mclga_equilibrium_theory().
 *
 * Random draws are keyed on (seed, time, site, attempt), so results do not
 * depend on the order or the thread that processes a cell.
 */

#include <cstddef>
#include <cstdint>

#include "lgas/core.hpp"

namespace lgas {

struct McParams {
  double lambda = 1.0;
  std::size_t attempts_per_cell = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// ceil(mean density / 2), at least 1.
[[nodiscard]] std::size_t default_attempts(const PopulationField& field);

/// Requires integral, non-negative populations.
[[nodiscard]] Cell mclga_collide(const Cell& cell, const McParams& params, std::uint64_t site_index,
                                 std::uint64_t time_index);

/// Collision at every site followed by streaming. `time_index` keys the RNG.
[[nodiscard]] PopulationField mclga_step(const PopulationField& field, const McParams& params,
                                         std::uint64_t time_index, unsigned threads = 1);

[[nodiscard]] History run_mclga(const PopulationField& field, const McParams& params, std::size_t steps,
                                unsigned threads = 1);

/// f_i = rho w_i [1 + 3 c_i u + (3 c_i^2 - 1)(sqrt(1 + 3u^2) - 1)].
[[nodiscard]] Cell mclga_equilibrium_theory(double rho, double u);

/// Rounds every population to the nearest integer (ties to even).
[[nodiscard]] PopulationField round_populations(const PopulationField& field);

}  // namespace lgas
