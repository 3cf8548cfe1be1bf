#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lgas/core.hpp"
#include "oracles.hpp"

using namespace lgas;
using doctest::Approx;

TEST_CASE("weights form a probability vector") {
  CHECK(kWeights[0] + kWeights[1] + kWeights[2] == Approx(1.0));
  CHECK(kWeights[0] == kWeights[2]);
  CHECK(kVelocities[0] == -1);
  CHECK(kVelocities[2] == 1);
}

TEST_CASE("moments match the matrix product") {
  SUBCASE("(1,1,1)") {
    const auto m = moments({1, 1, 1});
    CHECK(m.rho == Approx(3.0));
    CHECK(m.j == Approx(0.0));
    CHECK(m.pi == Approx(3.0 / std::numbers::sqrt2));
  }
  SUBCASE("(0,1,0)") {
    const auto m = moments({0, 1, 0});
    CHECK(m.rho == Approx(1.0));
    CHECK(m.j == Approx(0.0));
    CHECK(m.pi == Approx(-1.0 / std::numbers::sqrt2));
  }
  SUBCASE("zero") {
    const auto m = moments({0, 0, 0});
    CHECK(m.rho == 0.0);
    CHECK(m.j == 0.0);
    CHECK(m.pi == 0.0);
  }
  SUBCASE("random cells against the oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-50, 50);
    for (int k = 0; k < 1000; ++k) {
      const Cell c{d(rng), d(rng), d(rng)};
      const auto m = moments(c);
      const auto o = oracle::moments(c.as_array());
      CHECK(m.rho == Approx(o[0]).epsilon(1e-13));
      CHECK(m.j == Approx(o[1]).epsilon(1e-13));
      CHECK(m.pi == Approx(o[2]).epsilon(1e-13));
    }
  }
}

TEST_CASE("from_moments inverts moments") {
  const Cell c = from_moments({3.0, 0.0, 3.0 / std::numbers::sqrt2});
  CHECK(c.n_minus == Approx(1.0));
  CHECK(c.n_zero == Approx(1.0));
  CHECK(c.n_plus == Approx(1.0));
  CHECK(from_moments({0, 0, 0}) == Cell{});

  const Cell eq = from_moments({40.0, 4.0 * std::numbers::sqrt3, 18.385});
  CHECK(eq.n_minus == Approx(9.0).epsilon(1e-3));
  CHECK(eq.n_zero == Approx(18.0).epsilon(1e-3));
  CHECK(eq.n_plus == Approx(13.0).epsilon(1e-3));
}

TEST_CASE("moment round trip over random cells") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.0, 1000.0);
  for (int k = 0; k < 10000; ++k) {
    const Cell c{d(rng), d(rng), d(rng)};
    const Cell back = from_moments(moments(c));
    const double scale = c.density();
    REQUIRE(std::abs(back.n_minus - c.n_minus) <= 1e-12 * scale);
    REQUIRE(std::abs(back.n_zero - c.n_zero) <= 1e-12 * scale);
    REQUIRE(std::abs(back.n_plus - c.n_plus) <= 1e-12 * scale);
  }
}

TEST_CASE("moments are linear") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const Cell a{d(rng), d(rng), d(rng)};
    const Cell b{d(rng), d(rng), d(rng)};
    const double s = d(rng);
    const auto lhs = moments(s * a + b);
    const auto ma = moments(a);
    const auto mb = moments(b);
    CHECK(lhs.rho == Approx(s * ma.rho + mb.rho).epsilon(1e-12).scale(100));
    CHECK(lhs.j == Approx(s * ma.j + mb.j).epsilon(1e-12).scale(100));
    CHECK(lhs.pi == Approx(s * ma.pi + mb.pi).epsilon(1e-12).scale(100));
  }
}

TEST_CASE("local velocity") {
  CHECK(local_velocity({10, 20, 10}) == 0.0);
  CHECK(local_velocity({9, 18, 13}) == Approx(0.1));
  CHECK(local_velocity({0, 0, 0}) == 0.0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  for (int k = 0; k < 1000; ++k) {
    const double side = d(rng);
    REQUIRE(local_velocity({side, d(rng), side}) == 0.0);
    const Cell c{d(rng), d(rng), d(rng)};
    CHECK(c.density() * local_velocity(c) == Approx(c.momentum()).epsilon(1e-12));
  }
}

TEST_CASE("sine initializer") {
  const std::size_t n = 200;
  const auto f = init_sine(n, 500.0, 0.0, 0.2);
  CHECK(f[0] == Cell{});
  CHECK(f[n / 2].n_zero == Approx(500.0 * 0.2 * 2.0 / 3.0));
  CHECK(f[n / 2].n_minus == Approx(500.0 * 0.5 / 6.0));
  CHECK(f[n / 2].n_plus == Approx(500.0 * 0.5 / 6.0));
  CHECK(f.is_physical());

  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::sin(std::numbers::pi * double(j) / double(n));
    CHECK(f[j].n_zero == Approx(500.0 * 0.2 * 2.0 / 3.0 * s).epsilon(1e-14).scale(1));
  }

  const auto right = init_sine(n, 500.0, 1.0, 0.2);
  for (const auto& c : right) CHECK(c.n_minus == 0.0);
  CHECK(right.total_momentum() > 0.0);

  CHECK_THROWS_AS((void)init_sine(n, -1.0, 0.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS((void)init_sine(1, 1.0, 0.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS((void)init_sine(n, 1.0, 1.5, 0.2), std::invalid_argument);
}

TEST_CASE("cosine initializer") {
  const std::size_t n = 64;
  const double n_max = 200.0;

  SUBCASE("default contrast") {
    const auto f = init_cosine(n, n_max);
    CHECK(f[0].density() == Approx(n_max));
    CHECK(f[n / 2].density() == Approx(n_max * (1 - kCosineContrast) / (1 + kCosineContrast)));
    CHECK(cosine_amplitude(n_max) == Approx((f[0].density() - f[n / 2].density()) / 2.0));
    for (std::size_t j = 0; j < n; ++j) {
      const double expect = n_max * (1 + kCosineContrast * std::cos(2 * std::numbers::pi * double(j) / double(n))) /
                            (1 + kCosineContrast);
      CHECK(f[j].density() == Approx(expect));
      CHECK(f[j].n_zero == Approx(expect * 2.0 / 3.0));
    }
    CHECK(f.total_momentum() == Approx(0.0));
    CHECK(f.is_physical());
  }
  SUBCASE("full contrast empties the trough") {
    const auto f = init_cosine(n, n_max, 1.0);
    CHECK(f[0].density() == Approx(n_max));
    CHECK(f[n / 2].density() == Approx(0.0).scale(1.0));
    CHECK(f.is_physical(1e-12));
  }
  CHECK_THROWS_AS((void)init_cosine(n, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)init_cosine(n, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("field totals and physicality") {
  PopulationField f(std::vector<Cell>{{1, 2, 3}, {4, 5, 6}});
  CHECK(f.total_mass() == 21.0);
  CHECK(f.total_momentum() == 4.0);
  CHECK(f.is_physical());
  f[0].n_zero = -1e-12;
  CHECK_FALSE(f.is_physical());
  CHECK(f.is_physical(1e-9));
  f[0].n_zero = std::nan("");
  CHECK_FALSE(f.is_physical(1.0));
}

TEST_CASE("power of two") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(2));
  CHECK(is_power_of_two(512));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(200));
}
