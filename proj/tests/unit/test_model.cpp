// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "fracbin/errors.hpp"
#include "fracbin/model.hpp"

using fracbin::ProcessParams;
using fracbin::Regime;

TEST_SUITE("model") {

TEST_CASE("regime classification") {
  CHECK(classify(ProcessParams(1, 1, 10, 3, 0.7)) == Regime::General);
  CHECK(classify(ProcessParams(1, 0, 10, 3, 0.7)) == Regime::PureBirth);
  CHECK(classify(ProcessParams(0, 1, 10, 3, 0.7)) == Regime::PureDeath);
  CHECK(to_string(Regime::PureBirth) == "pure-birth");
}

TEST_CASE("equilibrium success probability") {
  CHECK(equilibrium_p(ProcessParams(1, 1, 100, 40, 0.7)) == 0.5);
  CHECK(equilibrium_p(ProcessParams(1, 3, 100, 40, 0.7)) == 0.25);
  CHECK(equilibrium_p(ProcessParams(0, 1, 100, 40, 0.7)) == 0.0);
  CHECK(equilibrium_p(ProcessParams(2, 0, 100, 40, 0.7)) == 1.0);
}

TEST_CASE("derived rates") {
  const ProcessParams p(2.0, 0.5, 10, 4, 0.9);
  CHECK(p.birth_rate(4) == 12.0);
  CHECK(p.death_rate(4) == 2.0);
  CHECK(p.total_rate() == 2.5);
  CHECK(p.with_nu(1.0).nu() == 1.0);
  CHECK(p.with_nu(1.0).lambda() == 2.0);
}

TEST_CASE("boundary tuples are accepted") {
  CHECK_NOTHROW(ProcessParams(1, 1, 1, 1, 1.0));
  CHECK_NOTHROW(ProcessParams(0, 1e-300, 5, 5, 1e-6));
}

TEST_CASE("invalid tuples are rejected with a descriptive error") {
  using fracbin::InvalidParams;
  CHECK_THROWS_AS(ProcessParams(0, 0, 10, 3, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(-1, 1, 10, 3, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, -1, 10, 3, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, 1, 0, 0, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, 1, 10, 0, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, 1, 10, 11, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, 1, 10, 3, 0.0), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, 1, 10, 3, 1.01), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(NAN, 1, 10, 3, 0.5), InvalidParams);
  CHECK_THROWS_AS(ProcessParams(1, INFINITY, 10, 3, 0.5), InvalidParams);
  CHECK_THROWS_WITH_AS(ProcessParams(1, 1, 10, 12, 0.5),
                       doctest::Contains("M must satisfy 1 <= M <= N"), InvalidParams);
}

TEST_CASE("random invalid tuples never construct") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> real(-3.0, 3.0);
  std::uniform_int_distribution<int> integer(-5, 20);
  int rejected = 0;
  for (int i = 0; i < 20000; ++i) {
    const double lambda = real(gen);
    const double mu = real(gen);
    const int N = integer(gen);
    const int M = integer(gen);
    const double nu = real(gen);
    const bool valid = lambda >= 0 && mu >= 0 && lambda + mu > 0 && N >= 1 && M >= 1 && M <= N &&
                       nu > 0 && nu <= 1;
    bool threw = false;
    try {
      ProcessParams p(lambda, mu, N, M, nu);
    } catch (const fracbin::InvalidParams&) {
      threw = true;
    }
    REQUIRE(threw == !valid);
    rejected += threw;
  }
  CHECK(rejected > 15000);
}

}  // TEST_SUITE
