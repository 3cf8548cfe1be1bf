#pragma once

// Reference D1Q3 single-relaxation-time (BGK) lattice Boltzmann solver.

#include <cstddef>

#include "lgas/core.hpp"

namespace lgas {

struct LbmParams {
  double tau = 1.0;

  /// Kinematic viscosity (tau - 1/2) / 3 in lattice units.
  [[nodiscard]] double viscosity() const { return (tau - 0.5) / 3.0; }
};

/// g_i = rho w_i (1 + 3 c_i u + 9/2 (c_i u)^2 - 3/2 u^2).
[[nodiscard]] Cell lbm_equilibrium(double rho, double u);

/// g_i += (g_i^eq - g_i) / tau in every cell. Requires tau > 0.
[[nodiscard]] PopulationField bgk_collide(const PopulationField& field, double tau);

[[nodiscard]] PopulationField lbm_step(const PopulationField& field, double tau);

[[nodiscard]] History run_lbm(const PopulationField& field, double tau, std::size_t steps);

}  // namespace lgas
