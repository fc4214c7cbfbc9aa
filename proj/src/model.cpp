#include "hubatom/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hubatom/canonical.hpp"
#include "hubatom/errors.hpp"
#include "sectors.hpp"

namespace hubatom {

std::string_view to_string(Statistics s) { return s == Statistics::boson ? "boson" : "fermion"; }

int occupancy_cap(const ModelSpec& model, const TruncationPolicy& trunc) {
  return model.statistics == Statistics::fermion ? 1 : trunc.n_max_per_level;
}

int particle_capacity(const ModelSpec& model, const TruncationPolicy& trunc) {
  return static_cast<int>(model.levels.size()) * occupancy_cap(model, trunc);
}

double min_level_energy(const ModelSpec& model) {
  double m = INFINITY;
  for (const auto& l : model.levels) m = std::min(m, l.energy);
  return m;
}

namespace {

std::vector<std::string> invariant_failures(const ModelSpec& model, const TruncationPolicy& trunc) {
  std::vector<std::string> failures;
  if (model.levels.empty()) failures.emplace_back("levels must be non-empty");

  std::set<std::string> seen;
  for (const auto& l : model.levels) {
    if (!seen.insert(l.label).second) failures.push_back("duplicate level label '" + l.label + "'");
    if (!std::isfinite(l.energy)) failures.push_back("energy of level '" + l.label + "' must be finite");
  }
  if (!(model.beta > 0.0) || !std::isfinite(model.beta)) failures.emplace_back("beta must be positive");
  if (!(model.U >= 0.0) || !std::isfinite(model.U)) failures.emplace_back("U must be non-negative");
  if (!std::isfinite(model.mu)) failures.emplace_back("mu must be finite");

  if (model.statistics == Statistics::boson && trunc.n_max_per_level < 1) {
    failures.emplace_back("n_max_per_level must be >= 1");
  }
  if (trunc.n_max && *trunc.n_max < 0) failures.emplace_back("N_max must be non-negative");
  if (!(trunc.tail_tol > 0.0)) failures.emplace_back("tail_tol must be positive");
  if (trunc.is_auto() && model.statistics == Statistics::boson && !(model.U > 0.0)) {
    failures.emplace_back("Auto truncation requires U>0 for bosons");
  }
  return failures;
}

}  // namespace

ValidationReport validate(const ModelSpec& model, const TruncationPolicy& trunc) {
  ValidationReport report;
  report.failures = invariant_failures(model, trunc);
  if (report.ok()) report.n_max = detail::resolve_n_max_unchecked(model, trunc);
  return report;
}

int resolve_n_max(const ModelSpec& model, const TruncationPolicy& trunc) {
  auto failures = invariant_failures(model, trunc);
  if (!failures.empty()) {
    std::string msg = "invalid model:";
    for (const auto& f : failures) msg += " " + f + ";";
    throw ConfigError(msg);
  }
  return detail::resolve_n_max_unchecked(model, trunc);
}

std::size_t level_index(const ModelSpec& model, std::string_view label) {
  for (std::size_t i = 0; i < model.levels.size(); ++i) {
    if (model.levels[i].label == label) return i;
  }
  std::string known;
  for (const auto& l : model.levels) known += (known.empty() ? "" : ", ") + l.label;
  throw UnknownLabel("unknown level label '" + std::string(label) + "'; available: " + known);
}

}  // namespace hubatom
