#include "lgas/circuit.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lgas {

Circuit& Circuit::add(Gate gate) {
  const std::size_t dim = std::size_t{1} << gate.targets.size();
  if (gate.targets.empty() || gate.targets.size() > 2) throw std::invalid_argument("gates act on one or two qubits");
  if (gate.matrix.size() != dim * dim) throw std::invalid_argument("gate matrix has the wrong size");
  for (int q : gate.targets) {
    if (q < 0 || q >= qubits_) throw std::out_of_range("gate target outside the register");
  }
  for (const auto& c : gate.controls) {
    if (c.qubit < 0 || c.qubit >= qubits_) throw std::out_of_range("gate control outside the register");
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.qubits_ != qubits_) throw std::invalid_argument("circuit widths differ");
  for (const auto& g : other.gates_) gates_.push_back(g);
  for (int q : other.postselected_) postselected_.push_back(q);
  return *this;
}

Circuit& Circuit::postselect_zero(int qubit) {
  postselected_.push_back(qubit);
  return *this;
}

void Circuit::apply(std::vector<Complex>& amplitudes) const {
  if (amplitudes.size() != (std::size_t{1} << qubits_)) throw std::invalid_argument("state size does not match circuit");
  for (const auto& g : gates_) apply_gate(g, amplitudes);
}

void apply_gate(const Gate& gate, std::vector<Complex>& amplitudes) {
  const std::size_t k = gate.targets.size();
  const std::size_t dim = std::size_t{1} << k;

  std::size_t target_mask = 0;
  for (int q : gate.targets) target_mask |= std::size_t{1} << q;
  std::size_t control_mask = 0;
  std::size_t control_value = 0;
  for (const auto& c : gate.controls) {
    control_mask |= std::size_t{1} << c.qubit;
    if (c.on_one) control_value |= std::size_t{1} << c.qubit;
  }

  std::array<std::size_t, 4> index{};
  std::array<Complex, 4> in{};
  for (std::size_t base = 0; base < amplitudes.size(); ++base) {
    if ((base & target_mask) != 0 || (base & control_mask) != control_value) continue;
    for (std::size_t s = 0; s < dim; ++s) {
      std::size_t i = base;
      for (std::size_t b = 0; b < k; ++b) {
        if ((s >> b) & 1u) i |= std::size_t{1} << gate.targets[b];
      }
      index[s] = i;
      in[s] = amplitudes[i];
    }
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{};
      for (std::size_t s = 0; s < dim; ++s) acc += gate.matrix[r * dim + s] * in[s];
      amplitudes[index[r]] = acc;
    }
  }
}

Gate hadamard(int qubit) {
  const double h = 1.0 / std::numbers::sqrt2;
  return {"H", {qubit}, {}, {h, h, h, -h}, {}};
}

Gate pauli_x(int qubit, std::vector<Control> controls) {
  return {"X", {qubit}, std::move(controls), {0.0, 1.0, 1.0, 0.0}, {}};
}

// Bit k flips when all lower bits are 1 (increment) or all 0 (decrement);
// processing from the top bit down reads the lower bits before they change.
static void add_ripple(Circuit& circuit, const std::vector<int>& bits, const std::vector<Control>& controls,
                       const std::string& name, bool lower_on_one) {
  for (std::size_t k = bits.size(); k-- > 0;) {
    Gate g = pauli_x(bits[k], controls);
    for (std::size_t b = 0; b < k; ++b) g.controls.push_back({bits[b], lower_on_one});
    g.name = name;
    circuit.add(std::move(g));
  }
}

void add_increment(Circuit& circuit, const std::vector<int>& bits, const std::vector<Control>& controls,
                   const std::string& name) {
  add_ripple(circuit, bits, controls, name, true);
}

void add_decrement(Circuit& circuit, const std::vector<int>& bits, const std::vector<Control>& controls,
                   const std::string& name) {
  add_ripple(circuit, bits, controls, name, false);
}

std::string Circuit::dump() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# circuit qubits=" << qubits_ << " gates=" << gates_.size() << '\n';
  auto join = [&os](const auto& items, auto&& write) {
    if (items.empty()) {
      os << '-';
      return;
    }
    bool first = true;
    for (const auto& item : items) {
      if (!first) os << ',';
      first = false;
      write(item);
    }
  };
  for (const auto& g : gates_) {
    os << g.name << " t=";
    join(g.targets, [&os](int q) { os << q; });
    os << " c=";
    join(g.controls, [&os](const Control& c) { os << (c.on_one ? "" : "!") << c.qubit; });
    os << " p=";
    join(g.params, [&os](double v) { os << v; });
    os << '\n';
  }
  for (int q : postselected_) os << "POSTSELECT t=" << q << " p=0\n";
  return os.str();
}

}  // namespace lgas
