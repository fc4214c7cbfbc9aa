#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "hubatom/errors.hpp"
#include "hubatom/oracle.hpp"
#include "hubatom/thermo.hpp"
#include "reference_values.hpp"

using namespace hubatom;
using testing::bosons;
using testing::fermions;

TEST_CASE("basis enumeration") {
  CHECK(enumerate_basis(fermions({0.0, 0.5}, 1.0, 1.0, 0.0), {}).size() == 4);
  TruncationPolicy t = testing::per_level(2);
  t.n_max = 4;
  CHECK(enumerate_basis(bosons({0.0, 0.5}, 1.0, 1.0, -1.0), t).size() == 9);
  CHECK(enumerate_basis(fermions({0.0, 0.5, 1.0}, 1.0, 1.0, 0.0), {}, 2).size() == 3);
}

TEST_CASE("basis order, invariants and guard") {
  const auto m = bosons({0.25, -0.5}, 0.5, 1.0, -2.0);
  TruncationPolicy t = testing::per_level(3);
  t.n_max = 6;
  const auto basis = enumerate_basis(m, t);
  REQUIRE(basis.size() == 16);
  CHECK(basis[0].occupations == std::vector<int>{0, 0});
  CHECK(basis[1].occupations == std::vector<int>{0, 1});
  CHECK(basis[4].occupations == std::vector<int>{1, 0});
  for (const auto& s : basis) {
    CHECK(s.total_n == s.occupations[0] + s.occupations[1]);
    CHECK(s.energy_free == 0.25 * s.occupations[0] - 0.5 * s.occupations[1]);
    CHECK(s.energy_int == 0.5 * 0.5 * s.total_n * (s.total_n - 1.0));
  }
  TruncationPolicy huge = testing::per_level(40);
  huge.n_max = 10;
  CHECK_THROWS_AS(enumerate_basis(bosons({0.0, 0.1, 0.2, 0.3, 0.4}, 1.0, 1.0, -1.0), huge), ConfigError);
}

TEST_CASE("grand partition by enumeration") {
  CHECK(testing::rel(exact_grand_partition(fermions({0.0, 0.5}, 1.0, 1.0, 0.0), {}), ref::fermion2_xi) <
        1e-15);
  const auto free = fermions({0.2, -0.3}, 0.0, 0.8, 0.1);
  CHECK(testing::rel(exact_grand_partition(free, {}), grand_partition_noninteracting(free, free.mu).real()) <
        1e-14);
  CHECK(std::abs(exact_grand_partition(fermions({0.2, -0.3, 1.0}, 1.0, 1e-12, 0.1), {}) - 8.0) < 1e-9);
}

TEST_CASE("time functions at t = 0 and the single fermion level") {
  const auto m = fermions({0.0, 0.5}, 1.0, 1.0, 0.0);
  const ExactOracle ed(m, {});
  CHECK(std::abs(ed.lesser_time(0, 0.0) - std::complex<double>(0.0, ref::fermion2_n1)) < 1e-15);

  // one level: only the N = 1 state contributes to G^<, so U never enters its phase
  const auto one_a = fermions({0.3}, 0.0, 1.0, 0.2);
  const auto one_b = fermions({0.3}, 5.0, 1.0, 0.2);
  for (double t : {0.0, 1.0, 7.5}) {
    CHECK(std::abs(exact_lesser_time(one_a, {}, "1", t) - exact_lesser_time(one_b, {}, "1", t)) < 1e-15);
  }
}

TEST_CASE("operator HS identity") {
  TruncationPolicy t;
  CHECK(verify_operator_hs(fermions({0.0, 0.5}, 1.0, 1.0, 0.0), t, 1e-13) < 1e-13);
  TruncationPolicy five = testing::per_level(5);
  five.n_max = 5;
  CHECK(verify_operator_hs(bosons({0.0}, 2.0, 0.5, -1.0), five, 1e-13) < 1e-13);
  CHECK_THROWS_AS(verify_operator_hs(fermions({0.0}, 0.0, 1.0, 0.0), t, 1e-13), DomainError);
}

TEST_CASE("shifted Fermi-Dirac occupation") {
  const auto m = fermions({0.0, 0.5, 1.0}, 1.0, 2.0, 0.7);
  for (const char* a : {"1", "2", "3"}) CHECK(fermi_shifted_occupation_check(m, {}, a) < 1e-12);
  const ExactOracle ed(m, {});
  CHECK(testing::rel(ed.grand_partition(), ref::fermion3_xi) < 1e-15);
  CHECK(testing::rel(ed.occupation(0), ref::fermion3_n1) < 1e-14);
  CHECK(testing::rel(ed.occupation(1), ref::fermion3_n2) < 1e-14);
  CHECK(testing::rel(ed.occupation(2), ref::fermion3_n3) < 1e-14);

  const auto free = fermions({0.3, 0.9}, 0.0, 1.5, 0.2);
  const ExactOracle fd(free, {});
  CHECK(std::abs(fd.occupation(0) - 1.0 / (std::exp(1.5 * 0.1) + 1.0)) < 1e-15);
  CHECK(fermi_shifted_occupation_check(fermions({0.4}, 3.0, 1.0, 0.0), {}, "1") < 1e-15);
  CHECK_THROWS_AS(fermi_shifted_occupation_check(bosons({0.4}, 3.0, 1.0, 0.0), testing::per_level(3), "1"),
                  DomainError);
}

TEST_CASE("fermion three-route spectral check") {
  const auto m = fermions({-0.5, 0.0, 0.25, 1.0}, 1.0, 2.0, 0.5);
  const ExactOracle ed(m, {});
  for (std::size_t a = 0; a < m.size(); ++a) {
    const auto lehmann = ed.spectral_lines(a, LineKind::spectral);
    const auto special = ed.fermion_special_form(a);
    const auto closed = spectral_lines(m, {}, m.levels[a].label);
    std::set<double> energies;
    for (const auto* set : {&lehmann, &special, &closed})
      for (const auto& l : set->lines) energies.insert(l.energy);
    for (double e : energies) {
      auto at = [e](const SpectralLineSet& s) {
        double w = 0.0;
        for (const auto& l : s.lines)
          if (std::abs(l.energy - e) < 1e-12) w += l.weight;
        return w;
      };
      CHECK(std::abs(at(lehmann) - at(special)) < 1e-12);
      CHECK(std::abs(at(lehmann) - at(closed)) < 1e-12);
    }
  }
}

TEST_CASE("serial and parallel oracle agree bit for bit") {
  const auto m = bosons({0.1, 0.2, 0.35}, 0.3, 1.0, -1.0);
  TruncationPolicy t = testing::per_level(30);
  t.n_max = 90;
  const ExactOracle a(m, t, Execution::serial);
  const ExactOracle b(m, t, Execution::parallel);
  CHECK(a.log_grand_partition() == b.log_grand_partition());
  CHECK(a.occupation(2) == b.occupation(2));
  CHECK(a.lesser_time(1, 2.5) == b.lesser_time(1, 2.5));
}
