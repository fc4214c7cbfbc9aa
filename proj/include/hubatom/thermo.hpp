#pragma once

#include <complex>
#include <vector>

#include "hubatom/model.hpp"
#include "hubatom/parallel.hpp"

namespace hubatom {

/// Noninteracting grand partition function prod_a [1 - s e^{-beta(eps_a - mu_eff)}]^{-s}
/// at a complex chemical potential, accumulated in log space.
/// Bosons require Re(mu_eff) < min eps (DomainError otherwise).
std::complex<double> grand_partition_noninteracting(const ModelSpec& model,
                                                    std::complex<double> mu_eff);

struct GrandResult {
  double xi_U = 0.0;
  double log_xi_U = 0.0;
  std::vector<double> per_N_terms;      // Z_N e^{beta mu N - beta U N(N-1)/2}
  double mean_N = 0.0;
  std::vector<double> mean_occupation;  // per level
  int n_max = 0;
};

GrandResult grand_partition_interacting(const ModelSpec& model, const TruncationPolicy& trunc);

struct HsIdentityResult {
  double xi_U = 0.0;
  std::complex<double> average;         // <Xi_0(mu + U/2 - i phi)>
  std::complex<double> naive_average;   // <Xi_0(mu - i phi)>
  double residual = 0.0;                // |average - Xi_U| / Xi_U
  double naive_residual = 0.0;
  double imag_ratio = 0.0;              // |Im average| / |average|
  int nodes_used = 0;
  int naive_nodes_used = 0;
};

/// Gaussian average of the noninteracting grand partition function over a
/// static field of variance U/beta, with and without the +U/2 level shift,
/// compared against Xi_U. Requires U > 0; bosons also mu + U/2 < min eps.
HsIdentityResult hs_identity_residual(const ModelSpec& model, const TruncationPolicy& trunc,
                                      double rel_tol, Execution exec = Execution::parallel);

/// True when the bosonic product formula converges on the shifted contour.
bool hs_domain_ok(const ModelSpec& model);

struct OneSiteSeries {
  double naive = 0.0;  // sum e^{beta mu n - beta U n^2 / 2}
  double exact = 0.0;  // sum e^{beta mu n - beta U n(n-1) / 2}
};

/// Single bosonic level at zero energy, summed to n_max. Throws
/// TruncationError unless both tails are below 1e-14 relative.
OneSiteSeries naive_vs_exact_one_site(double U, double beta, double mu, int n_max);

}  // namespace hubatom
