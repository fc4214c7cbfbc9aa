#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hubatom/errors.hpp"
#include "hubatom/subtlety.hpp"
#include "reference_values.hpp"

using namespace hubatom;
using cd = std::complex<double>;

TEST_CASE("coherent matrix element: direct route") {
  const CoherentAmplitudes a{{0.3, -0.4}, {0.5, 0.2}};
  const auto free = coherent_matrix_element_direct(a, 0.0, 1.7, 40);
  const auto expect = std::exp(-0.5 * (std::norm(a.z) + std::norm(a.w)) + std::conj(a.z) * a.w);
  CHECK(std::abs(free - expect) < 1e-15);
  CHECK(std::abs(coherent_matrix_element_direct({0.0, 0.0}, 1.0, 2.0, 40) - 1.0) < 1e-15);
  const auto m = coherent_matrix_element_direct({1.0, 1.0}, 1.0, std::numbers::pi, 40);
  CHECK(std::abs(m - cd(ref::coherent_pi_re, ref::coherent_pi_im)) < 1e-15);
  CHECK_THROWS_AS(coherent_matrix_element_direct({3.0, 3.0}, 1.0, 1.0, 10), TruncationError);
}

TEST_CASE("property: direct and decoupled routes agree") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const CoherentAmplitudes a{{amp(rng), amp(rng)}, {amp(rng), amp(rng)}};
    const double U = 0.5 + std::abs(amp(rng));
    const double t = time(rng);
    const auto d = coherent_matrix_element_direct(a, U, t, 40);
    const auto h = coherent_matrix_element_hs(a, U, t, 40);
    INFO("trial " << trial);
    REQUIRE(std::abs(d - h) < 1e-14);
  }
}

TEST_CASE("short-time coefficients") {
  const auto c = short_time_mismatch({1.0, 1.0}, 1.0, 1e-7, 40);
  CHECK(std::abs(c.exact_coeff - cd(0.0, -1.0)) < 1e-12);
  CHECK(c.naive_coeff == cd(0.0, 0.0));
  CHECK(std::abs(c.finite_difference - c.exact_coeff) < 1e-5);
  CHECK(std::abs(ref::sum_n2_over_nfact - 2.0 * std::exp(1.0)) < 1e-15);

  const auto zero = short_time_mismatch({{0.4, 0.1}, {0.2, -0.6}}, 0.0, 1e-3, 40);
  CHECK(zero.exact_coeff == cd(0.0, 0.0));
  CHECK(zero.naive_coeff == cd(0.0, 0.0));

  CHECK_THROWS(short_time_mismatch({1.0, 1.0}, 1.0, 0.0, 40));
}

TEST_CASE("property: mismatch magnitude matches the second moment") {
  std::mt19937_64 rng(161803);
  std::uniform_real_distribution<double> amp(-1.2, 1.2);
  for (int trial = 0; trial < 100; ++trial) {
    const CoherentAmplitudes a{{amp(rng), amp(rng)}, {amp(rng), amp(rng)}};
    const double U = 0.1 + std::abs(amp(rng));
    const auto c = short_time_mismatch(a, U, 1e-4, 60);
    const cd x = std::conj(a.z) * a.w;
    cd moment = 0.0, term = 1.0;
    for (int n = 1; n <= 60; ++n) {
      term *= x / double(n);
      moment += double(n) * double(n) * term;
    }
    const double expect = 0.5 * U * std::abs(moment) * std::exp(-0.5 * (std::norm(a.z) + std::norm(a.w)));
    REQUIRE(std::abs(std::abs(c.exact_coeff - c.naive_coeff) - expect) < 1e-14);
    if (std::abs(x) > 1e-8) REQUIRE(std::abs(c.exact_coeff) > 0.0);
    REQUIRE(c.naive_coeff == cd(0.0, 0.0));
  }
}

TEST_CASE("generalized HS") {
  TruncationPolicy t;
  t.n_max_per_level = 1;
  const std::vector<std::vector<double>> u = {{1.0, 0.5}, {0.5, 1.0}};
  CHECK(generalized_hs_residual({0.0, 0.0}, u, 1.0, t, 64) < 1e-8);
  CHECK(std::abs(ref::gen_hs_lhs_11 - std::exp(-1.5)) < 1e-16);

  // diagonal coupling factorises into one-level checks
  t.n_max_per_level = 3;
  CHECK(generalized_hs_residual({0.0, 0.0, 0.0}, {{0.7, 0, 0}, {0, 1.1, 0}, {0, 0, 0.4}}, 0.8, t, 32) < 1e-12);
  CHECK(generalized_hs_residual({0.0}, {{1.0}}, 1.0, t, 32) < 1e-13);

  const double coarse = generalized_hs_residual({0.0, 0.0}, u, 2.0, t, 4);
  const double fine = generalized_hs_residual({0.0, 0.0}, u, 2.0, t, 32);
  CHECK(fine < coarse);

  CHECK_THROWS_AS(generalized_hs_residual({0.0, 0.0}, {{0.0, 0.0}, {0.0, 0.0}}, 1.0, t), DomainError);
  try {
    generalized_hs_residual({0.0, 0.0}, {{1.0, 2.0}, {2.0, 1.0}}, 1.0, t);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("eigenvalues") != std::string::npos);
  }
  CHECK_THROWS(generalized_hs_residual({0.0, 0.0, 0.0, 0.0},
                                       {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 1.0, t));
}

TEST_CASE("spin-1/2 traces") {
  const auto zero = spin_hs_counterexample(0.0);
  CHECK(zero.lhs == 2.0);
  CHECK(zero.rhs_closed == 2.0);
  CHECK(std::abs(zero.rhs_quadrature - 2.0) < 1e-14);

  const auto one = spin_hs_counterexample(1.0, 32);
  CHECK(std::abs(one.lhs - ref::spin_lhs_1) < 1e-14);
  CHECK(std::abs(one.rhs_closed - ref::spin_rhs_1) < 1e-14);
  CHECK(std::abs(one.rhs_quadrature - ref::spin_rhs_quad_1) / ref::spin_rhs_1 < 1e-10);

  for (double bj : {0.1, 1.0, 5.0}) {
    const auto s = spin_hs_counterexample(bj, 32);
    CHECK(s.lhs > s.rhs_closed);
    CHECK(std::abs(s.lhs / s.rhs_closed - std::exp(0.5 * bj) / (1.0 + 0.5 * bj)) < 1e-14);
    CHECK(std::abs(s.rhs_quadrature - s.rhs_closed) / s.rhs_closed < 1e-10);
  }
  CHECK_THROWS_AS(spin_hs_counterexample(-1.0), DomainError);
}

TEST_CASE("serial and parallel tensor quadrature agree bit for bit") {
  const auto a = spin_hs_counterexample(2.0, 24, Execution::serial);
  const auto b = spin_hs_counterexample(2.0, 24, Execution::parallel);
  CHECK(a.rhs_quadrature == b.rhs_quadrature);
  TruncationPolicy t;
  t.n_max_per_level = 2;
  const std::vector<std::vector<double>> u = {{1.0, 0.3}, {0.3, 0.8}};
  CHECK(generalized_hs_residual({0.0, 0.0}, u, 1.0, t, 40, Execution::serial) ==
        generalized_hs_residual({0.0, 0.0}, u, 1.0, t, 40, Execution::parallel));
}
