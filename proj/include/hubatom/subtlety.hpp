#pragma once

// Demonstrations of where the continuous-time HS decoupling goes wrong:
// the coherent-state matrix element of e^{-i t U n^2 / 2}, its short-time
// expansion, the commuting-operator generalisation, and the spin-1/2
// counterexample for non-commuting operators.

#include <complex>
#include <vector>

#include "hubatom/model.hpp"
#include "hubatom/parallel.hpp"

namespace hubatom {

/// Bosonic coherent-state labels |z>, |w>.
struct CoherentAmplitudes {
  std::complex<double> z;
  std::complex<double> w;
};

/// <z| e^{-i t U n^2/2} |w> by direct summation over n <= n_max.
/// Throws TruncationError unless |conj(z) w|^{n_max} / n_max! < 1e-16.
std::complex<double> coherent_matrix_element_direct(const CoherentAmplitudes& amp, double U,
                                                    double t, int n_max);

/// Same element with the interaction decoupled by a Gaussian field of
/// variance <phi^2> = U/(-i t); each term's phase is the Wick exponent
/// exp[<(-i t phi n)^2>/2].
std::complex<double> coherent_matrix_element_hs(const CoherentAmplitudes& amp, double U, double t,
                                                int n_max);

struct ShortTimeCoefficients {
  std::complex<double> exact_coeff;   // d/dt of the matrix element at t = 0
  std::complex<double> naive_coeff;   // linear term of the per-slice average
  std::complex<double> finite_difference;  // (M(dt) - M(0)) / dt
};

/// Linear-in-dt coefficients: exact = -(iU/2) e^{-(|z|^2+|w|^2)/2} sum (z*w)^n n^2/n!,
/// naive = coefficient after expanding e^{-i dt phi n} to first order and
/// averaging (<phi> = 0). The finite difference at dt tracks the exact one.
ShortTimeCoefficients short_time_mismatch(const CoherentAmplitudes& amp, double U, double dt,
                                          int n_max);

/// Max over basis states {n_a} (n_a <= trunc.n_max_per_level) of
/// |e^{-(beta/2) n.U.n} - <e^{-i beta phi.n}>| with phi ~ N(0, U/beta), the
/// average taken by a tensor Gauss-Hermite rule after a symmetric square
/// root of the covariance. Deviation is relative to the operator norm (1).
/// Coupling must be symmetric positive definite, at most 3 levels.
double generalized_hs_residual(const std::vector<double>& levels,
                               const std::vector<std::vector<double>>& coupling, double beta,
                               const TruncationPolicy& trunc, int nodes_per_dim = 64,
                               Execution exec = Execution::parallel);

struct SpinTraces {
  double lhs = 0.0;             // Tr e^{beta J S^2} = 2 e^{3 beta J / 4}
  double rhs_closed = 0.0;      // 2 e^{beta J / 4} (1 + beta J / 2)
  double rhs_quadrature = 0.0;  // Gaussian average of Tr e^{-beta m.S} = 2 cosh(beta |m| / 2)
};

/// Spin-1/2 traces of both sides of the rotationally symmetric decoupling.
SpinTraces spin_hs_counterexample(double beta_j, int nodes_per_dim = 32,
                                  Execution exec = Execution::parallel);

}  // namespace hubatom
