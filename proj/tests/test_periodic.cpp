// Weight tables for the doubly periodic kernel.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "wsq/periodic.hpp"

using namespace wsq;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("regularization parameter laws") {
  // h = n^(-2(2 lambda + alpha)/(1 - lambda))
  const RegParams p = choose_regularization(8, 0.5, 0.5);
  CHECK(p.h == doctest::Approx(std::pow(8.0, -6.0)).epsilon(1e-14));
  CHECK(p.clamped);       // raw order is 8^9.5
  CHECK(p.m_gauss == 64); // default cap

  const RegParams q = choose_regularization(8, 0.5, 0.5, 16);
  CHECK(q.m_gauss == 16);
  CHECK(q.clamped);

  // small exponents keep the raw order at the floor of 1
  const RegParams r = choose_regularization(2, 0.1, 0.1);
  CHECK(!r.clamped);
  CHECK(r.m_gauss == 1);
  CHECK(r.h == doctest::Approx(std::pow(2.0, -2.0 / 3.0)).epsilon(1e-14));

  CHECK_THROWS_AS(choose_regularization(1, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(choose_regularization(8, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(choose_regularization(8, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(choose_regularization(8, 0.5, 0.5, 0),
                  std::invalid_argument);
}

TEST_CASE("off diagonal weights by hand at n = 4") {
  // p*_{kl} = (4 pi^2/n^2) (sin^2(pi(k-i)/n) + sin^2(pi(l-j)/n))^(-lambda)
  const PeriodicWeightTable t = periodic_weights(4, 0.5, 0.5, 0, 0);
  CHECK(t.at(1, 0) ==
        doctest::Approx(pi * pi * std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(t.at(0, 2) == doctest::Approx(pi * pi / 4.0).epsilon(1e-14));
  CHECK(t.at(0, 1) == t.at(1, 0));  // i = j: transpose symmetry
  CHECK(t.at(3, 0) == t.at(1, 0));  // cyclic distance 3 == 1
  CHECK(t.midpoint(0) == doctest::Approx(pi / 4.0).epsilon(1e-15));
  // all weights positive, diagonal finite
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) CHECK(t.at(k, l) > 0.0);
}

TEST_CASE("weight table shifts with the evaluation point") {
  const PeriodicWeightTable a = periodic_weights(8, 0.3, 0.6, 2, 5);
  const PeriodicWeightTable b = periodic_weights(8, 0.3, 0.6, 3, 1);
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l)
      CHECK(a.at((2 + k) % 8, (5 + l) % 8) ==
            b.at((3 + k) % 8, (1 + l) % 8));
}

TEST_CASE("alpha only touches the diagonal cell") {
  const PeriodicWeightTable a = periodic_weights(8, 0.4, 0.4, 3, 3);
  const PeriodicWeightTable b = periodic_weights(8, 0.4, 0.9, 3, 3);
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l) {
      if (k == 3 && l == 3) continue;
      CHECK(a.at(k, l) == b.at(k, l));
    }
  CHECK(a.at(3, 3) != b.at(3, 3));
}

TEST_CASE("weight sum tends to the kernel constant") {
  // f = 1 turns the cubature into the weight sum and the integral into
  // gamma(lambda)
  const double g = gamma_constant(0.5, 1e-8);
  double prev = 1.0;
  for (int n : {8, 16, 32}) {
    const PeriodicWeightTable t = periodic_weights(n, 0.5, 1.0, n / 2, n / 2);
    const double ws = t.weight_sum(SumPolicy::PairwiseDeterministic);
    const double rel = std::abs(ws - g) / g;
    CHECK(rel < 2e-2);
    CHECK(rel < prev);
    prev = rel;
    const double ev = eval_Kf(t, [](double, double) { return 1.0; });
    CHECK(ev == doctest::Approx(ws).epsilon(1e-13));
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(periodic_weights(1, 0.5, 0.5, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(periodic_weights(8, 0.5, 0.5, 8, 0), std::invalid_argument);
  CHECK_THROWS_AS(periodic_weights(8, 0.5, 0.5, 0, -1),
                  std::invalid_argument);
  CHECK_THROWS_AS(periodic_weights(8, -0.5, 0.5, 0, 0),
                  std::invalid_argument);
}
