#pragma once

/**
 * @file alga.hpp
 * @brief Adaptive integer lattice gas: split/crunch collision with constant
 * or locally adapted fractions, periodic streaming.
 *
 * A split turns two rest particles into a (+, -) pair; a crunch does the
 * reverse. At most n0/2 splits and min(n+, n-) crunches are possible in a
 * cell; the engine performs the fractions lambda_s and lambda_c of them.
 */

#include <cstddef>
#include <optional>

#include "lgas/core.hpp"

namespace lgas {

enum class CrunchMode {
  Constant,  ///< lambda_c fixed for every cell
  LocalLbm,  ///< lambda_c adapted per cell so LBM equilibria are fixed points
};

struct CollisionParams {
  double lambda_s = 0.2;
  CrunchMode mode = CrunchMode::Constant;
  double lambda_c = 0.2;  ///< used only in Constant mode
  bool integer_cast = false;

  /// Throws std::invalid_argument when a fraction lies outside [0, 1].
  void validate() const;
};

/// Population deltas of one collision. Always of the form (d, -2d, d).
struct CollisionTerm {
  double xi_minus = 0.0;
  double xi_zero = 0.0;
  double xi_plus = 0.0;
};

[[nodiscard]] CollisionTerm collision_term(const Cell& cell, double lambda_s, double lambda_c);

/// Raw crunch fraction lambda_s (2 - 3u^2) / (1 - 3|u| + 3u^2). The
/// denominator is bounded below by 1/4.
[[nodiscard]] double adaptive_lambda_c_raw(double lambda_s, double u);

/// The adapted crunch fraction, or nullopt (skip the collision) when it
/// falls outside (0, 1].
[[nodiscard]] std::optional<double> adaptive_lambda_c(double lambda_s, double u);

/// Rounded collision term: s = round(lambda_s n0 / 2), c = round(lambda_c min),
/// ties to even, then Xi = (s - c, -2(s - c), s - c).
[[nodiscard]] CollisionTerm integer_cast(const Cell& cell, double lambda_s, double lambda_c);

/// Post-collision state of one cell.
[[nodiscard]] Cell collide_cell(const Cell& cell, const CollisionParams& params);

[[nodiscard]] PopulationField collide(const PopulationField& field, const CollisionParams& params);

/// n+ moves to x+1, n- to x-1 (periodic), n0 stays.
[[nodiscard]] PopulationField stream(const PopulationField& field);

/// stream(collide(field)).
[[nodiscard]] PopulationField step(const PopulationField& field, const CollisionParams& params);

/// Trajectory of `steps` updates, including the initial field.
[[nodiscard]] History run(const PopulationField& field, const CollisionParams& params, std::size_t steps);

/// Number of occupied cells whose adapted lambda_c leaves (0, 1]. Always zero
/// in Constant mode.
[[nodiscard]] std::size_t count_skip_cells(const PopulationField& field, const CollisionParams& params);

}  // namespace lgas
