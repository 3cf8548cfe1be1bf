#include "lgas/lbm.hpp"

#include <stdexcept>

#include "lgas/alga.hpp"

namespace lgas {

Cell lbm_equilibrium(double rho, double u) {
  std::array<double, 3> g{};
  const double u2 = u * u;
  for (int i = 0; i < 3; ++i) {
    const double cu = kVelocities[i] * u;
    g[i] = rho * kWeights[i] * (1.0 + 3.0 * cu + 4.5 * cu * cu - 1.5 * u2);
  }
  return Cell::from_array(g);
}

PopulationField bgk_collide(const PopulationField& field, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const double omega = 1.0 / tau;
  PopulationField out(field.size());
  for (std::size_t x = 0; x < field.size(); ++x) {
    const Cell& g = field[x];
    const Cell eq = lbm_equilibrium(g.density(), local_velocity(g));
    out[x] = {g.n_minus + omega * (eq.n_minus - g.n_minus), g.n_zero + omega * (eq.n_zero - g.n_zero),
              g.n_plus + omega * (eq.n_plus - g.n_plus)};
  }
  return out;
}

PopulationField lbm_step(const PopulationField& field, double tau) { return stream(bgk_collide(field, tau)); }

History run_lbm(const PopulationField& field, double tau, std::size_t steps) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  History history;
  history.reserve(steps + 1);
  history.push_back(field);
  for (std::size_t t = 0; t < steps; ++t) history.push_back(lbm_step(history.back(), tau));
  return history;
}

}  // namespace lgas
