#include "lgas/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgas {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

void check_lattice_args(std::size_t n, double n_max) {
  if (n < 2) throw std::invalid_argument("lattice size must be at least 2");
  if (!(n_max > 0.0) || !std::isfinite(n_max)) throw std::invalid_argument("n_max must be positive and finite");
}

}  // namespace

double PopulationField::total_mass() const {
  double sum = 0.0;
  for (const auto& c : cells_) sum += c.density();
  return sum;
}

double PopulationField::total_momentum() const {
  double sum = 0.0;
  for (const auto& c : cells_) sum += c.momentum();
  return sum;
}

bool PopulationField::is_physical(double tolerance) const {
  for (const auto& c : cells_) {
    for (double v : c.as_array()) {
      if (!std::isfinite(v) || v < -tolerance) return false;
    }
  }
  return true;
}

// Rows of M: (1, 1, 1), (-sqrt3, 0, sqrt3), (sqrt2, -1/sqrt2, sqrt2).
MomentVector moments(const Cell& c) {
  return {c.n_minus + c.n_zero + c.n_plus, kSqrt3 * (c.n_plus - c.n_minus),
          kSqrt2 * (c.n_minus + c.n_plus) - c.n_zero / kSqrt2};
}

Cell from_moments(const MomentVector& m) {
  const double common = m.rho / 6.0 + kSqrt2 * m.pi / 6.0;
  const double drift = m.j / (2.0 * kSqrt3);
  return {common - drift, (2.0 * m.rho - kSqrt2 * m.pi) / 3.0, common + drift};
}

double local_velocity(const Cell& cell) {
  const double rho = cell.density();
  if (rho == 0.0) return 0.0;
  return (cell.n_plus - cell.n_minus) / rho;
}

PopulationField init_sine(std::size_t n, double n_max, double u_bias, double p0) {
  check_lattice_args(n, n_max);
  if (!(std::abs(u_bias) <= 1.0)) throw std::invalid_argument("|U| must not exceed 1");
  if (!(p0 >= 0.0)) throw std::invalid_argument("p0 must be non-negative");
  const std::array<double, 3> p{(1.0 - u_bias) / 2.0, p0, (1.0 + u_bias) / 2.0};

  PopulationField field(n);
  for (std::size_t j = 0; j < n; ++j) {
    // sin(pi j / N) >= 0 for j in [0, N); clamp the rounding residue at j = 0.
    const double profile = std::max(0.0, std::sin(std::numbers::pi * double(j) / double(n)));
    std::array<double, 3> pops{};
    for (int i = 0; i < 3; ++i) pops[i] = kWeights[i] * n_max * p[i] * profile;
    field[j] = Cell::from_array(pops);
  }
  return field;
}

PopulationField init_cosine(std::size_t n, double n_max, double contrast) {
  check_lattice_args(n, n_max);
  if (!(contrast >= 0.0 && contrast <= 1.0)) throw std::invalid_argument("cosine contrast must lie in [0, 1]");
  PopulationField field(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double wave = std::cos(2.0 * std::numbers::pi * double(j) / double(n));
    const double profile = std::max(0.0, (1.0 + contrast * wave) / (1.0 + contrast));
    std::array<double, 3> pops{};
    for (int i = 0; i < 3; ++i) pops[i] = kWeights[i] * n_max * profile;
    field[j] = Cell::from_array(pops);
  }
  return field;
}

double cosine_amplitude(double n_max, double contrast) { return n_max * contrast / (1.0 + contrast); }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace lgas
