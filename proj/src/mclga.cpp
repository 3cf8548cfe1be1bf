#include "lgas/mclga.hpp"

#include <cmath>
#include <stdexcept>

#include "lgas/alga.hpp"
#include "lgas/philox.hpp"
#include "parallel.hpp"

namespace lgas {

namespace {

enum class Species { Minus, Zero, Plus };

Species species_of(std::uint64_t index, std::uint64_t n_minus, std::uint64_t n_zero) {
  if (index < n_minus) return Species::Minus;
  if (index < n_minus + n_zero) return Species::Zero;
  return Species::Plus;
}

std::uint64_t as_count(double v) {
  if (!(v >= 0.0) || v != std::floor(v)) throw std::invalid_argument("MCLGA requires non-negative integer populations");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

void McParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (attempts_per_cell < 1) throw std::invalid_argument("attempts_per_cell must be at least 1");
}

std::size_t default_attempts(const PopulationField& field) {
  if (field.empty()) return 1;
  const double mean = field.total_mass() / double(field.size());
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(mean / 2.0)));
}

Cell mclga_collide(const Cell& cell, const McParams& params, std::uint64_t site_index, std::uint64_t time_index) {
  std::uint64_t n_minus = as_count(cell.n_minus);
  std::uint64_t n_zero = as_count(cell.n_zero);
  std::uint64_t n_plus = as_count(cell.n_plus);
  const std::uint64_t rho = n_minus + n_zero + n_plus;
  if (rho < 2) return cell;
  if (rho > 0xFFFFFFFFull) throw std::invalid_argument("MCLGA cell population exceeds 2^32");

  const Philox4x32 rng(params.seed);
  const double split_probability = params.lambda / 8.0;
  for (std::size_t attempt = 0; attempt < params.attempts_per_cell; ++attempt) {
    const auto w = rng.at(time_index, site_index, attempt);
    const std::uint64_t first = Philox4x32::to_range(w[0], static_cast<std::uint32_t>(rho));
    // Second particle: one of the other rho - 1, skipping the first index.
    std::uint64_t second = Philox4x32::to_range(w[1], static_cast<std::uint32_t>(rho - 1));
    if (second >= first) ++second;
    const double accept = Philox4x32::to_unit(w[2]);

    const Species a = species_of(first, n_minus, n_zero);
    const Species b = species_of(second, n_minus, n_zero);
    if (a == Species::Zero && b == Species::Zero) {
      if (accept < split_probability) {
        n_zero -= 2;
        ++n_minus;
        ++n_plus;
      }
    } else if ((a == Species::Minus && b == Species::Plus) || (a == Species::Plus && b == Species::Minus)) {
      if (accept < params.lambda) {
        --n_minus;
        --n_plus;
        n_zero += 2;
      }
    }
  }
  return {double(n_minus), double(n_zero), double(n_plus)};
}

PopulationField mclga_step(const PopulationField& field, const McParams& params, std::uint64_t time_index,
                           unsigned threads) {
  params.validate();
  PopulationField collided(field.size());
  detail::parallel_for(field.size(), threads,
                       [&](std::size_t x) { collided[x] = mclga_collide(field[x], params, x, time_index); });
  return stream(collided);
}

History run_mclga(const PopulationField& field, const McParams& params, std::size_t steps, unsigned threads) {
  params.validate();
  History history;
  history.reserve(steps + 1);
  history.push_back(field);
  for (std::size_t t = 0; t < steps; ++t) history.push_back(mclga_step(history.back(), params, t, threads));
  return history;
}

Cell mclga_equilibrium_theory(double rho, double u) {
  const double root = std::sqrt(1.0 + 3.0 * u * u) - 1.0;
  std::array<double, 3> f{};
  for (int i = 0; i < 3; ++i) {
    const double c = kVelocities[i];
    f[i] = rho * kWeights[i] * (1.0 + 3.0 * c * u + (3.0 * c * c - 1.0) * root);
  }
  return Cell::from_array(f);
}

PopulationField round_populations(const PopulationField& field) {
  PopulationField out(field.size());
  for (std::size_t x = 0; x < field.size(); ++x) {
    const Cell& c = field[x];
    out[x] = {std::nearbyint(c.n_minus), std::nearbyint(c.n_zero), std::nearbyint(c.n_plus)};
  }
  return out;
}

}  // namespace lgas
