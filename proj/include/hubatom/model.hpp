#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hubatom {

enum class Statistics { boson, fermion };

/// +1 for bosons, -1 for fermions. Every "upper sign = boson" ladder in the
/// closed forms reduces to this one number.
constexpr int statistics_sign(Statistics s) { return s == Statistics::boson ? 1 : -1; }

std::string_view to_string(Statistics s);

struct Level {
  std::string label;
  double energy = 0.0;

  bool operator==(const Level&) const = default;
};

/// Levels with a single interaction U N(N-1)/2 on the total particle number.
/// Units: energies in E, beta in 1/E, hbar = 1 so times are in 1/E.
struct ModelSpec {
  Statistics statistics = Statistics::fermion;
  std::vector<Level> levels;
  double U = 0.0;
  double beta = 1.0;
  double mu = 0.0;

  int sign() const { return statistics_sign(statistics); }
  std::size_t size() const { return levels.size(); }
  bool operator==(const ModelSpec&) const = default;
};

struct TruncationPolicy {
  int n_max_per_level = 6;      // bosons only
  std::optional<int> n_max;     // empty = auto
  double tail_tol = 1e-12;

  bool is_auto() const { return !n_max.has_value(); }
  bool operator==(const TruncationPolicy&) const = default;
};

struct ValidationReport {
  std::vector<std::string> failures;
  std::optional<int> n_max;  // resolved N_max when validation passes

  bool ok() const { return failures.empty(); }
};

/// Checks every model and truncation invariant; never throws.
ValidationReport validate(const ModelSpec& model, const TruncationPolicy& trunc);

/// Largest occupancy of a single level (1 for fermions).
int occupancy_cap(const ModelSpec& model, const TruncationPolicy& trunc);

/// Largest total particle number the truncated basis can hold.
int particle_capacity(const ModelSpec& model, const TruncationPolicy& trunc);

/// Resolved N_max (auto rule or clamped explicit value). Throws ConfigError
/// if the model does not validate.
int resolve_n_max(const ModelSpec& model, const TruncationPolicy& trunc);

/// Index of the level with the given label; throws UnknownLabel listing the
/// available labels.
std::size_t level_index(const ModelSpec& model, std::string_view label);

double min_level_energy(const ModelSpec& model);

}  // namespace hubatom
