#pragma once

// Brute-force reference: enumerates the occupation-number basis of the
// truncated model and sums Boltzmann weights state by state. The Hamiltonian
// is diagonal in this basis, so no matrix is ever built. Nothing here reuses
// the canonical/sector machinery of the closed-form modules.

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hubatom/green.hpp"
#include "hubatom/model.hpp"
#include "hubatom/parallel.hpp"

namespace hubatom {

struct OccupationVector {
  std::vector<int> occupations;
  int total_n = 0;
  double energy_free = 0.0;  // sum_a eps_a n_a
  double energy_int = 0.0;   // U/2 N(N-1)
};

/// Upper bound on the raw product basis (cap+1)^levels.
inline constexpr double kMaxBasisSize = 1e7;

/// States with n_a <= cap and N <= resolved N_max, in lexicographic order
/// (last level fastest). Optionally only one total N.
std::vector<OccupationVector> enumerate_basis(const ModelSpec& model, const TruncationPolicy& trunc,
                                              std::optional<int> total_n = std::nullopt);

class ExactOracle {
 public:
  ExactOracle(const ModelSpec& model, const TruncationPolicy& trunc,
              Execution exec = Execution::parallel);

  const ModelSpec& model() const { return model_; }
  const std::vector<OccupationVector>& basis() const { return basis_; }

  double grand_partition() const;
  double log_grand_partition() const { return log_xi_; }
  double occupation(std::size_t alpha) const;
  double mean_n() const;

  std::complex<double> lesser_time(std::size_t alpha, double t) const;
  std::complex<double> greater_time(std::size_t alpha, double t) const;

  /// Thermal weights accumulated onto eps_a + U(N-1) (lesser, states with
  /// N >= 1) and eps_a + U N (greater); spectral = greater - s lesser.
  SpectralLineSet spectral_lines(std::size_t alpha, LineKind kind) const;

  /// Fermions only: rho = <delta(eps - eps_a - U N'_a)>, N'_a = N - n_a.
  SpectralLineSet fermion_special_form(std::size_t alpha) const;

  /// Fermions only: |<n_a> - <1/(e^{beta(eps_a + U N'_a - mu)} + 1)>| / <n_a>.
  double fermi_shifted_residual(std::size_t alpha) const;

 private:
  template <class F>
  double thermal_sum(F&& per_state) const;
  template <class F>
  std::complex<double> thermal_sum_complex(F&& per_state) const;

  ModelSpec model_;
  Execution exec_;
  std::vector<OccupationVector> basis_;
  std::vector<double> prob_;  // normalised Boltzmann weights
  double log_xi_ = 0.0;
};

double exact_grand_partition(const ModelSpec& model, const TruncationPolicy& trunc);
std::complex<double> exact_lesser_time(const ModelSpec& model, const TruncationPolicy& trunc,
                                       std::string_view alpha, double t);
std::complex<double> exact_greater_time(const ModelSpec& model, const TruncationPolicy& trunc,
                                        std::string_view alpha, double t);
SpectralLineSet exact_spectral_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                                     std::string_view alpha, LineKind kind = LineKind::spectral);

/// e^{-beta U N^2 / 2} against the Gaussian average of e^{-i beta phi N}
/// (variance U/beta) for every N present in the basis. Returns the largest
/// deviation relative to the operator norm of the left-hand side.
double verify_operator_hs(const ModelSpec& model, const TruncationPolicy& trunc, double rel_tol,
                          Execution exec = Execution::parallel);

double fermi_shifted_occupation_check(const ModelSpec& model, const TruncationPolicy& trunc,
                                      std::string_view alpha);

}  // namespace hubatom
