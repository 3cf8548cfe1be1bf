#pragma once

/**
 * @file core.hpp
 * @brief D1Q3 lattice representation shared by every engine.
 *
 * Velocities are ordered (-1, 0, +1). Populations are stored as reals; the
 * integer engines keep integral values inside the same container.
 */

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace lgas {

/// Lattice velocities, indexed like Cell::as_array().
inline constexpr std::array<int, 3> kVelocities{-1, 0, 1};

/// D1Q3 weights (w-, w0, w+).
inline constexpr std::array<double, 3> kWeights{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};

/// Particle counts of one site, by velocity.
struct Cell {
  double n_minus = 0.0;
  double n_zero = 0.0;
  double n_plus = 0.0;

  [[nodiscard]] double density() const { return n_minus + n_zero + n_plus; }
  /// Scaled momentum n+ - n-, equal to rho * u.
  [[nodiscard]] double momentum() const { return n_plus - n_minus; }

  [[nodiscard]] std::array<double, 3> as_array() const { return {n_minus, n_zero, n_plus}; }
  static Cell from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

  Cell& operator+=(const Cell& o) {
    n_minus += o.n_minus;
    n_zero += o.n_zero;
    n_plus += o.n_plus;
    return *this;
  }
  friend Cell operator+(Cell a, const Cell& b) { return a += b; }
  friend Cell operator*(double s, const Cell& c) { return {s * c.n_minus, s * c.n_zero, s * c.n_plus}; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Image of a cell in moment space: (rho, j, pi) with j = sqrt(3) * (n+ - n-).
struct MomentVector {
  double rho = 0.0;
  double j = 0.0;
  double pi = 0.0;
};

/// Periodic one-dimensional lattice of cells.
class PopulationField {
public:
  PopulationField() = default;
  explicit PopulationField(std::size_t size) : cells_(size) {}
  explicit PopulationField(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  [[nodiscard]] std::size_t size() const { return cells_.size(); }
  [[nodiscard]] bool empty() const { return cells_.empty(); }

  Cell& operator[](std::size_t x) { return cells_[x]; }
  const Cell& operator[](std::size_t x) const { return cells_[x]; }

  [[nodiscard]] std::span<Cell> cells() { return cells_; }
  [[nodiscard]] std::span<const Cell> cells() const { return cells_; }

  auto begin() { return cells_.begin(); }
  auto end() { return cells_.end(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  [[nodiscard]] double total_mass() const;
  [[nodiscard]] double total_momentum() const;
  /// True when every population is finite and >= -tolerance.
  [[nodiscard]] bool is_physical(double tolerance = 0.0) const;

  friend bool operator==(const PopulationField&, const PopulationField&) = default;

private:
  std::vector<Cell> cells_;
};

/// Trajectory of fields, index = time step; entry 0 is the initial state.
using History = std::vector<PopulationField>;

[[nodiscard]] MomentVector moments(const Cell& cell);
[[nodiscard]] Cell from_moments(const MomentVector& m);

/// Plain velocity (n+ - n-) / rho; zero for an empty cell.
[[nodiscard]] double local_velocity(const Cell& cell);

/// Half-sine profile n_i(x_j) = w_i * n_max * p_i * sin(pi j / N),
/// with p- = (1 - U)/2, p0 = p0, p+ = (1 + U)/2.
[[nodiscard]] PopulationField init_sine(std::size_t n, double n_max, double u_bias, double p0);

/// Default density contrast of init_cosine().
inline constexpr double kCosineContrast = 0.5;

/// Periodic cosine wave n_i(x_j) = w_i * n_max * (1 + a cos(2 pi j / N)) / (1 + a)
/// with contrast a in [0, 1]: density peaks at n_max (j = 0) and bottoms out at
/// n_max (1 - a) / (1 + a). a = 1 empties the trough cell.
[[nodiscard]] PopulationField init_cosine(std::size_t n, double n_max, double contrast = kCosineContrast);

/// Half the initial peak-to-trough density difference of init_cosine().
[[nodiscard]] double cosine_amplitude(double n_max, double contrast = kCosineContrast);

[[nodiscard]] bool is_power_of_two(std::size_t n);

}  // namespace lgas
