#include "lgas/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "lgas/errors.hpp"

namespace lgas {

namespace {

constexpr double kPostSelectionFloor = 1e-14;
constexpr double kMassTolerance = 1e-9;

std::vector<Complex> dense(const Eigen::Matrix4d& m) {
  std::vector<Complex> out(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r * 4 + c] = m(r, c);
  return out;
}

std::vector<Complex> diagonal(const Eigen::Vector4cd& d) {
  std::vector<Complex> out(16, Complex{});
  for (int k = 0; k < 4; ++k) out[k * 5] = d(k);
  return out;
}

std::vector<double> entries(const Eigen::Matrix4d& m) {
  std::vector<double> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.push_back(m(r, c));
  return out;
}

const std::vector<int> kOccupation{QubitLayout::kOccupationLow, QubitLayout::kOccupationHigh};

}  // namespace

QubitLayout QubitLayout::for_lattice(std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("lattice size must be a power of two >= 2");
  return {static_cast<int>(std::countr_zero(n))};
}

std::vector<Complex> QuantumState::occupation_amplitudes() const {
  const std::size_t n = layout.lattice_size();
  std::vector<Complex> out(4 * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t code = 0; code < 4; ++code) out[4 * x + code] = amplitudes[QubitLayout::index(x, code)];
  return out;
}

double QuantumState::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

QuantumState encode(const PopulationField& field, const CollisionParams& params) {
  params.validate();
  if (params.integer_cast) throw std::invalid_argument("integer casting has no amplitude encoding");
  QuantumState state;
  state.layout = QubitLayout::for_lattice(field.size());
  state.amplitudes.assign(state.layout.dimension(), Complex{});

  double sum_sq = 0.0;
  for (std::size_t x = 0; x < field.size(); ++x) {
    const Cell& c = field[x];
    double lambda_c = params.lambda_c;
    if (params.mode == CrunchMode::LocalLbm) {
      // No skipping is possible here: the raw adapted value is encoded as is.
      lambda_c = adaptive_lambda_c_raw(params.lambda_s, local_velocity(c));
      if (c.density() > 0.0 && !(lambda_c > 0.0 && lambda_c <= 1.0)) ++state.out_of_range_cells;
    }
    const double nonlinear = lambda_c * std::min(c.n_plus, c.n_minus);
    const std::array<double, 4> raw{c.n_zero, c.n_plus, c.n_minus, nonlinear};
    for (std::size_t code = 0; code < 4; ++code) {
      state.amplitudes[QubitLayout::index(x, code)] = raw[code];
      sum_sq += raw[code] * raw[code];
    }
  }
  if (!(sum_sq > 0.0) || !std::isfinite(sum_sq)) throw std::invalid_argument("cannot normalize an all-zero field");

  state.scale = std::sqrt(sum_sq);
  for (auto& a : state.amplitudes) a /= state.scale;
  state.reference_mass = field.total_mass();
  return state;
}

Eigen::Matrix4d collision_matrix(double lambda_s) {
  Eigen::Matrix4d c;
  // clang-format off
  c << 1.0 - lambda_s, 0.0, 0.0,  2.0,
       lambda_s / 2.0, 1.0, 0.0, -1.0,
       lambda_s / 2.0, 0.0, 1.0, -1.0,
       0.0,            0.0, 0.0,  1.0;
  // clang-format on
  return c;
}

CollisionFactorization svd_lcu(const Eigen::Matrix4d& c) {
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CollisionFactorization fact;
  fact.c = c;
  fact.u = svd.matrixU();
  fact.v = svd.matrixV().transpose();
  fact.f = svd.singularValues().asDiagonal();
  fact.sigma_max = svd.singularValues()(0);
  if (!(fact.sigma_max > 0.0)) throw std::invalid_argument("collision matrix is zero");
  for (int k = 0; k < 4; ++k) {
    const double ratio = std::clamp(fact.f(k, k) / fact.sigma_max, 0.0, 1.0);
    fact.theta(k) = std::acos(ratio);
    fact.w1(k) = std::polar(1.0, fact.theta(k));
    fact.w2(k) = std::polar(1.0, -fact.theta(k));
  }
  return fact;
}

Circuit collision_circuit(const CollisionFactorization& fact, const QubitLayout& layout) {
  const int anc = QubitLayout::kAncilla;
  Circuit circuit(layout.total_qubits());
  std::vector<double> minus_theta(4);
  for (int k = 0; k < 4; ++k) minus_theta[k] = 0.0 - fact.theta(k);  // no -0 in dumps

  circuit.add(hadamard(anc));
  circuit.add({"V", kOccupation, {}, dense(fact.v), entries(fact.v)});
  circuit.add({"W1", kOccupation, {{anc, true}}, diagonal(fact.w1), {fact.theta.data(), fact.theta.data() + 4}});
  circuit.add({"W2", kOccupation, {{anc, false}}, diagonal(fact.w2), minus_theta});
  circuit.add({"U", kOccupation, {}, dense(fact.u), entries(fact.u)});
  circuit.add(hadamard(anc));
  return circuit;
}

Circuit streaming_circuit(const QubitLayout& layout) {
  Circuit circuit(layout.total_qubits());
  std::vector<int> position;
  for (int b = 0; b < layout.position_qubits; ++b) position.push_back(layout.position_qubit(b));
  // S+ fires on |01> (q2 = 0, q1 = 1); S- fires on |10>.
  add_increment(circuit, position, {{QubitLayout::kOccupationHigh, false}, {QubitLayout::kOccupationLow, true}}, "S+");
  add_decrement(circuit, position, {{QubitLayout::kOccupationHigh, true}, {QubitLayout::kOccupationLow, false}}, "S-");
  return circuit;
}

Circuit step_circuit(const CollisionFactorization& fact, const QubitLayout& layout) {
  Circuit circuit = collision_circuit(fact, layout);
  circuit.append(streaming_circuit(layout));
  circuit.postselect_zero(QubitLayout::kAncilla);
  return circuit;
}

QuantumState apply_collision(const QuantumState& state, const CollisionFactorization& fact) {
  QuantumState out = state;
  collision_circuit(fact, state.layout).apply(out.amplitudes);

  double branch_sq = 0.0;
  for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
    if (i & 1u) {
      out.amplitudes[i] = Complex{};
    } else {
      branch_sq += std::norm(out.amplitudes[i]);
    }
  }
  const double branch = std::sqrt(branch_sq);
  if (branch < kPostSelectionFloor) throw PostSelectionError("ancilla |0> branch vanished during collision");
  for (auto& a : out.amplitudes) a /= branch;
  // The |0> branch holds (C / sigma_max) psi; undo both factors in the scale.
  out.scale = state.scale * fact.sigma_max * branch;
  return out;
}

QuantumState apply_streaming(const QuantumState& state) {
  QuantumState out = state;
  streaming_circuit(state.layout).apply(out.amplitudes);
  return out;
}

PopulationField decode(const QuantumState& state) {
  const std::size_t n = state.layout.lattice_size();
  PopulationField field(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto read = [&](std::size_t code) { return state.scale * state.amplitudes[QubitLayout::index(x, code)].real(); };
    field[x] = {read(occupation::kLeft), read(occupation::kRest), read(occupation::kRight)};
  }
  const double mass = field.total_mass();
  if (std::abs(mass - state.reference_mass) > kMassTolerance * std::abs(state.reference_mass))
    throw ConservationError("decoded mass deviates from the conserved total");
  return field;
}

std::size_t QalgaRun::total_out_of_range() const {
  std::size_t sum = 0;
  for (auto c : out_of_range_cells) sum += c;
  return sum;
}

PopulationField qalga_step(const PopulationField& field, const CollisionParams& params,
                           const CollisionFactorization& fact, std::size_t* out_of_range) {
  const QuantumState encoded = encode(field, params);
  if (out_of_range) *out_of_range = encoded.out_of_range_cells;
  return decode(apply_streaming(apply_collision(encoded, fact)));
}

QalgaRun run_qalga(const PopulationField& field, const CollisionParams& params, std::size_t steps) {
  params.validate();
  QubitLayout::for_lattice(field.size());
  const CollisionFactorization fact = svd_lcu(collision_matrix(params.lambda_s));
  QalgaRun result;
  result.history.reserve(steps + 1);
  result.history.push_back(field);
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t skipped = 0;
    result.history.push_back(qalga_step(result.history.back(), params, fact, &skipped));
    result.out_of_range_cells.push_back(skipped);
  }
  return result;
}

}  // namespace lgas
