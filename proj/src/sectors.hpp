#pragma once

// Fixed-N sector bookkeeping shared by thermo and green: the interacting
// weight of each N sector and the fractional parentages built from it.

#include <cstddef>
#include <vector>

#include "hubatom/canonical.hpp"
#include "hubatom/model.hpp"

namespace hubatom::detail {

/// N*log_unit + beta*mu*N - beta*U*N(N-1)/2, i.e. log of the factor that turns
/// the rescaled z[N] into the N-th term of Xi_U.
double log_sector_factor(const ModelSpec& model, double log_unit, int n);

/// Auto/explicit N_max resolution without re-validating the model.
int resolve_n_max_unchecked(const ModelSpec& model, const TruncationPolicy& trunc);

struct SectorWeights {
  CanonicalTable table;             // truncated at the resolved N_max
  std::vector<double> log_factor;   // per N, see log_sector_factor
  double log_xi = 0.0;              // log Xi_U
  double tail = 0.0;                // omitted weight / kept weight
};

/// Throws TruncationError when an explicit N_max drops more than tail_tol.
SectorWeights sector_weights(const ModelSpec& model, const TruncationPolicy& trunc);

/// n_{alpha|N} = W[alpha][N] e^{beta mu N - beta U N(N-1)/2} / Xi_U.
std::vector<double> parentage_n(const SectorWeights& s, std::size_t alpha);

/// p_{alpha|N} = (Z_N + sign W[alpha][N]) e^{beta mu N - beta U N(N-1)/2} / Xi_U.
std::vector<double> parentage_p(const SectorWeights& s, std::size_t alpha, int sign);

}  // namespace hubatom::detail
