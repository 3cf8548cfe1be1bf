#pragma once

/**
 * @file circuit.hpp
 * @brief Minimal gate-list circuit and dense statevector application.
 *
 * Basis index bit q holds qubit q. A gate acts on one or two target qubits
 * with a dense 2^k x 2^k matrix; the matrix sub-index takes bit k from
 * targets[k]. Controls may be closed (fire on 1) or open (fire on 0).
 *
 * Text dump, one gate per line:
 *
 *   # circuit qubits=<n> gates=<count>
 *   <NAME> t=<q>[,<q>] c=<ctrl>[,<ctrl>] p=<v>[,<v>...]
 *
 * where <ctrl> is `q` for a closed control and `!q` for an open one, and
 * `c=`/`p=` are written as `-` when empty. p lists the gate's parameters:
 * phase angles for diagonal gates, row-major real entries for real 4x4
 * unitaries, nothing for H and X. A trailing `POSTSELECT t=<q> p=0` line
 * marks projection of qubit q onto |0>.
 */

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace lgas {

using Complex = std::complex<double>;

struct Control {
  int qubit = 0;
  bool on_one = true;
};

struct Gate {
  std::string name;
  std::vector<int> targets;
  std::vector<Control> controls;
  std::vector<Complex> matrix;  ///< row-major, (2^k)^2 entries
  std::vector<double> params;   ///< reported in the dump only
};

class Circuit {
public:
  explicit Circuit(int qubits) : qubits_(qubits) {}

  [[nodiscard]] int qubits() const { return qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }

  Circuit& add(Gate gate);
  Circuit& append(const Circuit& other);
  Circuit& postselect_zero(int qubit);
  [[nodiscard]] const std::vector<int>& postselected() const { return postselected_; }

  /// Applies every gate in order. Post-selection marks are ignored here.
  void apply(std::vector<Complex>& amplitudes) const;

  [[nodiscard]] std::string dump() const;

private:
  int qubits_;
  std::vector<Gate> gates_;
  std::vector<int> postselected_;
};

void apply_gate(const Gate& gate, std::vector<Complex>& amplitudes);

[[nodiscard]] Gate hadamard(int qubit);
[[nodiscard]] Gate pauli_x(int qubit, std::vector<Control> controls = {});

/// Adds X gates realising x -> x + 1 mod 2^k on `bits` (LSB first).
void add_increment(Circuit& circuit, const std::vector<int>& bits, const std::vector<Control>& controls,
                   const std::string& name);
/// Adds X gates realising x -> x - 1 mod 2^k on `bits` (LSB first).
void add_decrement(Circuit& circuit, const std::vector<int>& bits, const std::vector<Control>& controls,
                   const std::string& name);

}  // namespace lgas
