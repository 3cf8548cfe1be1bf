#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "lgas/alga.hpp"
#include "lgas/errors.hpp"
#include "lgas/quantum.hpp"
#include "oracles.hpp"

using namespace lgas;
using doctest::Approx;

namespace {

const CollisionParams kConstant{0.2, CrunchMode::Constant, 0.2, false};
const CollisionParams kAdaptive{0.2, CrunchMode::LocalLbm, 0.0, false};

std::vector<Complex> random_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<Complex> psi(dim);
  double norm = 0.0;
  for (std::size_t i = 0; i < dim; i += 2) {  // ancilla |0> only
    psi[i] = {g(rng), g(rng)};
    norm += std::norm(psi[i]);
  }
  for (auto& a : psi) a /= std::sqrt(norm);
  return psi;
}

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("layout") {
  for (int k = 1; k <= 9; ++k) {
    const auto layout = QubitLayout::for_lattice(std::size_t{1} << k);
    CHECK(layout.total_qubits() == k + 3);
    CHECK(layout.dimension() == (std::size_t{1} << (k + 3)));
  }
  CHECK(QubitLayout::index(5, occupation::kLeft) == ((5u << 3) | (2u << 1)));
  CHECK_THROWS_AS((void)QubitLayout::for_lattice(6), std::invalid_argument);
  CHECK_THROWS_AS((void)QubitLayout::for_lattice(1), std::invalid_argument);
}

TEST_CASE("encode example") {
  PopulationField f(std::vector<Cell>{{1, 2, 1}, {0, 0, 0}});
  const auto s = encode(f, {0.2, CrunchMode::Constant, 0.5, false});
  CHECK(s.scale == Approx(2.5));
  const auto occ = s.occupation_amplitudes();
  const double expect[8] = {0.8, 0.4, 0.4, 0.2, 0, 0, 0, 0};
  for (int i = 0; i < 8; ++i) CHECK(occ[i].real() == Approx(expect[i]));
  CHECK(s.norm() == Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < s.amplitudes.size(); i += 2) CHECK(s.amplitudes[i] == Complex{});
  CHECK(s.reference_mass == Approx(4.0));
}

TEST_CASE("encode without right movers has an empty nonlinear slot") {
  std::mt19937_64 rng(41);
  auto f = oracle::random_field(rng, 16);
  for (auto& c : f) c.n_plus = 0.0;
  const auto s = encode(f, kConstant);
  for (std::size_t x = 0; x < 16; ++x) CHECK(s.amplitudes[QubitLayout::index(x, occupation::kNonlinear)] == Complex{});
}

TEST_CASE("encode / decode round trip") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_field(rng, 8);
    const auto back = decode(encode(f, trial % 2 ? kConstant : kAdaptive));
    for (std::size_t x = 0; x < 8; ++x) {
      for (int i = 0; i < 3; ++i)
        REQUIRE(back[x].as_array()[i] == Approx(f[x].as_array()[i]).epsilon(1e-12).scale(1e-12));
    }
  }
  PopulationField lone(8);
  lone[3] = {0.0, 5.0, 0.0};
  const auto back = decode(encode(lone, kConstant));
  CHECK(oracle::max_abs_diff(back, lone) < 1e-12);
}

TEST_CASE("encode rejects bad input") {
  CHECK_THROWS_AS((void)encode(PopulationField(std::vector<Cell>(6, Cell{1, 1, 1})), kConstant), std::invalid_argument);
  CHECK_THROWS_AS((void)encode(PopulationField(8), kConstant), std::invalid_argument);
  CHECK_THROWS_AS((void)encode(PopulationField(std::vector<Cell>(8, Cell{1, 2, 1})),
                              {0.2, CrunchMode::Constant, 0.2, true}),
                  std::invalid_argument);
}

TEST_CASE("encode counts out-of-range adapted cells") {
  PopulationField f(std::vector<Cell>{{10, 20, 10}, {0, 1, 50}, {0, 0, 0}, {1, 1, 40}});
  CHECK(encode(f, kAdaptive).out_of_range_cells == 2);
  CHECK(encode(f, kConstant).out_of_range_cells == 0);
}

TEST_CASE("collision matrix") {
  auto apply = [](double ls, Eigen::Vector4d v) { return Eigen::Vector4d(collision_matrix(ls) * v); };
  CHECK((apply(0.2, {2, 1, 1, 0.2}) - Eigen::Vector4d(2, 1, 1, 0.2)).norm() < 1e-15);
  CHECK((apply(0.5, {4, 0, 0, 0}) - Eigen::Vector4d(2, 1, 1, 0)).norm() < 1e-15);
  CHECK((apply(0.0, {3, 7, 5, 0}) - Eigen::Vector4d(3, 7, 5, 0)).norm() < 1e-15);

  // Agrees with the classical collision on (n0, n+, n-, lambda_c min).
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> pop(0, 100);
  std::uniform_real_distribution<double> frac(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const oracle::Triple n{pop(rng), pop(rng), pop(rng)};
    const double ls = frac(rng);
    const double lc = frac(rng);
    const auto out = apply(ls, {n[1], n[2], n[0], lc * std::min(n[0], n[2])});
    const auto expect = oracle::collide(n, ls, lc);
    CHECK(out(0) == Approx(expect[1]).scale(100));
    CHECK(out(1) == Approx(expect[2]).scale(100));
    CHECK(out(2) == Approx(expect[0]).scale(100));
  }
}

TEST_CASE("svd / lcu reconstruction") {
  for (int k = 0; k <= 10; ++k) {
    const double ls = k / 10.0;
    const auto c = collision_matrix(ls);
    const auto fact = svd_lcu(c);
    CAPTURE(ls);
    CHECK(max_abs(fact.u * fact.f * fact.v - c) <= 1e-12);
    CHECK(max_abs(fact.u.transpose() * fact.u - Eigen::Matrix4d::Identity()) <= 1e-12);
    CHECK(max_abs(fact.v.transpose() * fact.v - Eigen::Matrix4d::Identity()) <= 1e-12);
    for (int i = 0; i < 4; ++i) {
      CHECK(fact.f(i, i) >= 0.0);
      if (i > 0) CHECK(fact.f(i, i) <= fact.f(i - 1, i - 1));
      CHECK(std::abs(fact.sigma_max * (fact.w1(i) + fact.w2(i)).real() / 2.0 - fact.f(i, i)) <= 1e-12);
      CHECK(std::abs(fact.sigma_max * (fact.w1(i) + fact.w2(i)).imag() / 2.0) <= 1e-12);
      CHECK(std::abs(std::abs(fact.w1(i)) - 1.0) <= 1e-15);
    }
    const Eigen::Matrix4d off = fact.f - Eigen::Matrix4d(fact.f.diagonal().asDiagonal());
    CHECK(max_abs(off) == 0.0);

    oracle::Mat4 m{};
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) m[r][s] = c(r, s);
    CHECK(fact.sigma_max == Approx(oracle::largest_singular_value(m)).epsilon(1e-12));
    CHECK(fact.sigma_max == Approx(oracle::largest_singular_value(oracle::collision_matrix(ls))).epsilon(1e-12));
  }

  const auto id = svd_lcu(Eigen::Matrix4d::Identity());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(id.w1(i) * id.w2(i) - 1.0) < 1e-15);
  CHECK_THROWS_AS((void)svd_lcu(Eigen::Matrix4d::Zero()), std::invalid_argument);
}

TEST_CASE("collision circuit equals C / sigma_max on the ancilla-0 branch") {
  std::mt19937_64 rng(44);
  for (std::size_t n : {4u, 8u}) {
    const auto layout = QubitLayout::for_lattice(n);
    for (double ls : {0.0, 0.2, 0.7, 1.0}) {
      const auto fact = svd_lcu(collision_matrix(ls));
      auto psi = random_state(rng, layout.dimension());
      const auto before = psi;
      collision_circuit(fact, layout).apply(psi);
      double worst = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t r = 0; r < 4; ++r) {
          Complex expect{};
          for (std::size_t s = 0; s < 4; ++s)
            expect += fact.c(r, s) / fact.sigma_max * before[QubitLayout::index(x, s)];
          worst = std::max(worst, std::abs(psi[QubitLayout::index(x, r)] - expect));
        }
      }
      CHECK(worst <= 1e-12);
      double total = 0.0;
      for (const auto& a : psi) total += std::norm(a);
      CHECK(total == Approx(1.0).epsilon(1e-12));  // the circuit itself is unitary
    }
  }
}

TEST_CASE("apply_collision") {
  SUBCASE("fixed point") {
    PopulationField f(std::vector<Cell>{{1, 2, 1}, {0, 0, 0}});
    const auto fact = svd_lcu(collision_matrix(0.2));
    const auto out = decode(apply_collision(encode(f, kConstant), fact));
    CHECK(oracle::max_abs_diff(out, f) < 1e-10);
  }
  SUBCASE("no splits and no crunches") {
    std::mt19937_64 rng(45);
    auto f = oracle::random_field(rng, 8);
    for (auto& c : f) c.n_plus = 0.0;
    const auto fact = svd_lcu(collision_matrix(0.0));
    const auto s = encode(f, kConstant);
    const auto out = apply_collision(s, fact);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) CHECK(std::abs(out.amplitudes[i] - s.amplitudes[i]) < 1e-12);
    CHECK(oracle::max_abs_diff(decode(out), f) < 1e-12 * f.total_mass());
  }
  SUBCASE("random fields match the classical collision") {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> frac(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = oracle::random_field(rng, 8);
      const CollisionParams p{frac(rng), CrunchMode::Constant, frac(rng), false};
      const auto out = decode(apply_collision(encode(f, p), svd_lcu(collision_matrix(p.lambda_s))));
      CHECK(oracle::max_abs_diff(out, collide(f, p)) < 1e-10);
    }
  }
  SUBCASE("vanishing branch") {
    // (1, -1/2, -1/2, 0) spans the null space of C at lambda_s = 1.
    QuantumState s;
    s.layout = QubitLayout::for_lattice(2);
    s.amplitudes.assign(s.layout.dimension(), Complex{});
    const double norm = std::sqrt(1.5);
    s.amplitudes[QubitLayout::index(0, occupation::kRest)] = 1.0 / norm;
    s.amplitudes[QubitLayout::index(0, occupation::kRight)] = -0.5 / norm;
    s.amplitudes[QubitLayout::index(0, occupation::kLeft)] = -0.5 / norm;
    CHECK_THROWS_AS((void)apply_collision(s, svd_lcu(collision_matrix(1.0))), PostSelectionError);
  }
}

TEST_CASE("streaming") {
  const auto layout = QubitLayout::for_lattice(4);
  QuantumState s;
  s.layout = layout;
  s.amplitudes.assign(layout.dimension(), Complex{});
  s.amplitudes[QubitLayout::index(1, occupation::kRight)] = 0.6;
  s.amplitudes[QubitLayout::index(0, occupation::kLeft)] = 0.8;
  const auto out = apply_streaming(s);
  CHECK(out.amplitudes[QubitLayout::index(2, occupation::kRight)].real() == Approx(0.6));
  CHECK(out.amplitudes[QubitLayout::index(3, occupation::kLeft)].real() == Approx(0.8));
  CHECK(out.norm() == Approx(1.0));

  std::mt19937_64 rng(47);
  for (std::size_t n : {2u, 4u, 8u, 32u}) {
    const auto f = oracle::random_field(rng, n);
    const auto st = encode(f, kConstant);
    const auto moved = apply_streaming(st);
    CHECK(std::abs(moved.norm() - 1.0) < 1e-15);
    CHECK(oracle::max_abs_diff(decode(moved), stream(f)) < 1e-12 * f.total_mass());
    for (std::size_t x = 0; x < n; ++x) {
      const auto k = QubitLayout::index(x, occupation::kNonlinear);
      CHECK(moved.amplitudes[k] == st.amplitudes[k]);
    }
  }
}

TEST_CASE("decode detects lost mass") {
  PopulationField f(std::vector<Cell>(4, Cell{1, 2, 1}));
  auto s = encode(f, kConstant);
  s.amplitudes[QubitLayout::index(1, occupation::kRest)] *= 0.5;
  CHECK_THROWS_AS((void)decode(s), ConservationError);
}

TEST_CASE("property: one quantum step equals one classical step") {
  std::mt19937_64 rng(48);
  std::uniform_real_distribution<double> frac(0, 1);
  for (std::size_t n : {4u, 8u, 16u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = oracle::random_field(rng, n);
      const CollisionParams p{frac(rng), CrunchMode::Constant, frac(rng), false};
      const auto fact = svd_lcu(collision_matrix(p.lambda_s));
      CHECK(oracle::max_abs_diff(qalga_step(f, p, fact), step(f, p)) < 1e-8);

      const auto g = oracle::random_smooth_field(rng, n);
      std::size_t oor = 99;
      const auto q = qalga_step(g, kAdaptive, svd_lcu(collision_matrix(kAdaptive.lambda_s)), &oor);
      REQUIRE(oor == 0);
      CHECK(oracle::max_abs_diff(q, step(g, kAdaptive)) < 1e-8);
    }
  }
}

TEST_CASE("run_qalga") {
  std::mt19937_64 rng(49);
  const auto f = oracle::random_smooth_field(rng, 16);
  const auto r0 = run_qalga(f, kAdaptive, 0);
  REQUIRE(r0.history.size() == 1);
  CHECK(r0.history[0] == f);

  const auto r = run_qalga(f, kAdaptive, 40);
  const auto classical = run(f, kAdaptive, 40);
  REQUIRE(r.history.size() == 41);
  CHECK(r.total_out_of_range() == 0);
  const double m0 = f.total_mass();
  for (std::size_t t = 0; t <= 40; ++t) {
    CHECK(oracle::max_abs_diff(r.history[t], classical[t]) < 1e-8);
    CHECK(std::abs(r.history[t].total_mass() - m0) <= 1e-8 * m0);
  }
  CHECK_THROWS_AS((void)run_qalga(PopulationField(std::vector<Cell>(6, Cell{1, 1, 1})), kAdaptive, 1),
                  std::invalid_argument);
}

TEST_CASE("circuit dump") {
  const auto layout = QubitLayout::for_lattice(8);
  const auto circuit = step_circuit(svd_lcu(collision_matrix(0.2)), layout);
  const std::string text = circuit.dump();
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "# circuit qubits=6 gates=" + std::to_string(circuit.gates().size()));
  // 6 collision gates, then 3 + 3 controlled X gates for the two shifts.
  CHECK(circuit.gates().size() == 12);

  const std::regex gate(R"(^[A-Z0-9+\-]+ t=\d+(,\d+)? c=(-|!?\d+(,!?\d+)*) p=(-|[-+0-9.eE]+(,[-+0-9.eE]+)*)$)");
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    if (line.rfind("POSTSELECT", 0) == 0) {
      CHECK(line == "POSTSELECT t=0 p=0");
      CHECK_FALSE(std::getline(in, line));
      break;
    }
    CHECK_MESSAGE(std::regex_match(line, gate), line);
    names.push_back(line.substr(0, line.find(' ')));
  }
  const std::vector<std::string> expect{"H", "V", "W1", "W2", "U", "H", "S+", "S+", "S+", "S-", "S-", "S-"};
  CHECK(names == expect);
  CHECK(text.find("W1 t=1,2 c=0 ") != std::string::npos);
  CHECK(text.find("W2 t=1,2 c=!0 ") != std::string::npos);
  CHECK(text.find("S+ t=5 c=!2,1,3,4 ") != std::string::npos);  // top position bit first, gated on |01>
  CHECK(text.find("-0,") == std::string::npos);
}

TEST_CASE("circuit gate validation") {
  Circuit c(3);
  CHECK_THROWS_AS(c.add(hadamard(3)), std::out_of_range);
  CHECK_THROWS_AS(c.add(pauli_x(0, {{5, true}})), std::out_of_range);
  CHECK_THROWS_AS(c.add({"bad", {0}, {}, {1.0}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(c.append(Circuit(2)), std::invalid_argument);
  std::vector<Complex> psi(4);
  CHECK_THROWS_AS(c.apply(psi), std::invalid_argument);
}
