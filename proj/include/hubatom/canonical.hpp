#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hubatom/model.hpp"
#include "hubatom/parallel.hpp"

namespace hubatom {

/// Canonical partition functions Z_N of the noninteracting levels and the
/// occupation-resolved weights W[alpha][N] = -(1/beta) dZ_N/d eps_alpha
/// (= sum over N-particle states of n_alpha e^{-beta E}).
///
/// Values are stored rescaled so that every per-level Boltzmann factor is
/// at most one: Z_N = z[N] * exp(N * log_unit), same factor for W.
struct CanonicalTable {
  int n_max = 0;
  double log_unit = 0.0;
  std::vector<double> z;
  std::vector<std::vector<double>> w;  // [alpha][N]

  double Z(int n) const;
  double W(std::size_t alpha, int n) const;
  double log_Z(int n) const;
  std::size_t levels() const { return w.size(); }
};

/// Level-by-level dynamic programme up to the resolved N_max.
CanonicalTable canonical_partitions(const ModelSpec& model, const TruncationPolicy& trunc);

/// Same programme up to an explicit bound (clamped to the basis capacity).
CanonicalTable canonical_partitions_upto(const ModelSpec& model, const TruncationPolicy& trunc,
                                         int n_upper);

struct ContourResult {
  double value = 0.0;
  double imag_residue = 0.0;
  int nodes = 0;
};

/// Z_N from the discrete circle average of e^{-i N theta} Xi_0(beta mu = i theta),
/// with the bosonic factors cut at n_max_per_level so the integrand is a
/// trigonometric polynomial. Requires M > particle_capacity.
ContourResult canonical_partition_contour(const ModelSpec& model, const TruncationPolicy& trunc,
                                          int n, int m, Execution exec = Execution::parallel);

/// Smallest admissible circle-rule size for the contour route.
int minimum_contour_nodes(const ModelSpec& model, const TruncationPolicy& trunc);

/// CSV: N, Z_N, then one W column per level label.
void write_canonical_csv(std::ostream& out, const ModelSpec& model, const CanonicalTable& table);

}  // namespace hubatom
