#pragma once

/**
 * @file quantum.hpp
 * @brief Statevector simulation of the quantum adaptive lattice gas.
 *
 * Register layout (qubit index: role):
 *   0          ancilla for the LCU collision
 *   1, 2       occupation qubits; basis code = 2*q2 + q1
 *   3 .. 3+k   position x, least significant bit first (N = 2^k)
 *
 * Occupation codes: 0 = |00> rest (n0), 1 = |01> right-moving (n+),
 * 2 = |10> left-moving (n-), 3 = |11> non-linear term lambda_c min(n+, n-).
 *
 * One time step: encode the classical field, run the collision circuit
 * (H, V, W1 on ancilla 1, W2 on ancilla 0, U, H), post-select ancilla |0>,
 * run the controlled shifts, then read the amplitudes back (perfect
 * tomography). The |11> amplitude is not streamed; it is recomputed by the
 * next encode.
 *
 * Amplitudes are kept at unit norm. `scale` carries the factor that turns
 * them back into absolute populations.
 */

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "lgas/alga.hpp"
#include "lgas/circuit.hpp"
#include "lgas/core.hpp"

namespace lgas {

namespace occupation {
inline constexpr std::size_t kRest = 0;
inline constexpr std::size_t kRight = 1;
inline constexpr std::size_t kLeft = 2;
inline constexpr std::size_t kNonlinear = 3;
}  // namespace occupation

struct QubitLayout {
  int position_qubits = 1;

  static constexpr int kAncilla = 0;
  static constexpr int kOccupationLow = 1;
  static constexpr int kOccupationHigh = 2;

  static QubitLayout for_lattice(std::size_t n);

  [[nodiscard]] int total_qubits() const { return position_qubits + 3; }
  [[nodiscard]] std::size_t lattice_size() const { return std::size_t{1} << position_qubits; }
  [[nodiscard]] std::size_t dimension() const { return std::size_t{1} << total_qubits(); }
  [[nodiscard]] int position_qubit(int bit) const { return 3 + bit; }

  [[nodiscard]] static std::size_t index(std::size_t x, std::size_t code, std::size_t ancilla = 0) {
    return (x << 3) | (code << 1) | ancilla;
  }
};

struct QuantumState {
  QubitLayout layout;
  std::vector<Complex> amplitudes;
  double scale = 1.0;
  /// Total mass at encode time; decode() checks against it.
  double reference_mass = 0.0;
  /// Occupied cells whose adapted lambda_c fell outside (0, 1] at encode.
  std::size_t out_of_range_cells = 0;

  /// Ancilla-|0> amplitudes in (x, code) order, length 4N.
  [[nodiscard]] std::vector<Complex> occupation_amplitudes() const;
  [[nodiscard]] double norm() const;
};

struct CollisionFactorization {
  Eigen::Matrix4d c;
  Eigen::Matrix4d u;
  Eigen::Matrix4d f;  ///< diagonal, non-negative, descending
  Eigen::Matrix4d v;  ///< c = u * f * v
  double sigma_max = 0.0;
  Eigen::Vector4d theta;  ///< arccos(F_kk / sigma_max)
  Eigen::Vector4cd w1;    ///< diag(e^{+i theta})
  Eigen::Vector4cd w2;    ///< diag(e^{-i theta})
};

/// Throws std::invalid_argument when N is not a power of two, the field is
/// all zero, or integer casting is requested.
[[nodiscard]] QuantumState encode(const PopulationField& field, const CollisionParams& params);

/// Linear collision on (n0, n+, n-, m).
[[nodiscard]] Eigen::Matrix4d collision_matrix(double lambda_s);

[[nodiscard]] CollisionFactorization svd_lcu(const Eigen::Matrix4d& c);

[[nodiscard]] Circuit collision_circuit(const CollisionFactorization& fact, const QubitLayout& layout);
[[nodiscard]] Circuit streaming_circuit(const QubitLayout& layout);
/// Collision, streaming and the final ancilla post-selection as one gate list.
[[nodiscard]] Circuit step_circuit(const CollisionFactorization& fact, const QubitLayout& layout);

/// Throws PostSelectionError when the ancilla |0> branch norm is below 1e-14.
[[nodiscard]] QuantumState apply_collision(const QuantumState& state, const CollisionFactorization& fact);
[[nodiscard]] QuantumState apply_streaming(const QuantumState& state);

/// Throws ConservationError when the decoded mass drifts more than 1e-9
/// (relative) from the reference mass.
[[nodiscard]] PopulationField decode(const QuantumState& state);

struct QalgaRun {
  History history;
  /// Per step: occupied cells where the classical engine would have skipped.
  std::vector<std::size_t> out_of_range_cells;

  [[nodiscard]] std::size_t total_out_of_range() const;
};

[[nodiscard]] PopulationField qalga_step(const PopulationField& field, const CollisionParams& params,
                                         const CollisionFactorization& fact, std::size_t* out_of_range = nullptr);

[[nodiscard]] QalgaRun run_qalga(const PopulationField& field, const CollisionParams& params, std::size_t steps);

}  // namespace lgas
