#pragma once

#include <cmath>
#include <random>
#include <string>

#include "hubatom/config.hpp"
#include "hubatom/model.hpp"

namespace testing {

inline hubatom::ModelSpec fermions(std::initializer_list<double> energies, double U, double beta,
                                   double mu) {
  hubatom::ModelSpec m;
  m.statistics = hubatom::Statistics::fermion;
  int k = 1;
  for (double e : energies) m.levels.push_back({std::to_string(k++), e});
  m.U = U;
  m.beta = beta;
  m.mu = mu;
  return m;
}

inline hubatom::ModelSpec bosons(std::initializer_list<double> energies, double U, double beta,
                                 double mu) {
  auto m = fermions(energies, U, beta, mu);
  m.statistics = hubatom::Statistics::boson;
  return m;
}

inline hubatom::TruncationPolicy per_level(int n) {
  hubatom::TruncationPolicy t;
  t.n_max_per_level = n;
  return t;
}

inline double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

inline hubatom::RunConfig demo(const std::string& name) {
  return hubatom::load_run_config(std::string(HUBATOM_CONFIG_DIR) + "/" + name + ".json");
}

// Random model with 1-3 levels; bosons get U > 0 and mu + U/2 below every level.
inline hubatom::ModelSpec random_model(std::mt19937_64& rng, bool boson) {
  std::uniform_real_distribution<double> energy(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.1, 2.0);
  std::uniform_int_distribution<int> count(1, 3);
  hubatom::ModelSpec m;
  m.statistics = boson ? hubatom::Statistics::boson : hubatom::Statistics::fermion;
  const int n = count(rng);
  for (int k = 0; k < n; ++k) m.levels.push_back({"l" + std::to_string(k), energy(rng)});
  m.U = unit(rng);
  m.beta = unit(rng);
  double lowest = m.levels[0].energy;
  for (const auto& l : m.levels) lowest = std::min(lowest, l.energy);
  m.mu = boson ? lowest - 0.5 * m.U - unit(rng) : energy(rng);
  return m;
}

inline double hs_pole_distance(const hubatom::ModelSpec& m) {
  double lowest = m.levels[0].energy;
  for (const auto& l : m.levels) lowest = std::min(lowest, l.energy);
  return lowest - m.mu - 0.5 * m.U;
}

}  // namespace testing
