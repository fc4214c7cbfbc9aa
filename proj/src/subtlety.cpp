#include "hubatom/subtlety.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hubatom/errors.hpp"
#include "hubatom/quad.hpp"

namespace hubatom {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Coherent-state series coefficients (z* w)^n / n! for n = 0..n_max.
std::vector<std::complex<double>> coherent_terms(const CoherentAmplitudes& amp, int n_max) {
  if (n_max < 0) throw std::invalid_argument("coherent series: n_max must be >= 0");
  const std::complex<double> x = std::conj(amp.z) * amp.w;
  const double ax = std::abs(x);
  if (ax > 0.0) {
    const double log_last = n_max * std::log(ax) - std::lgamma(n_max + 1.0);
    if (!(log_last < std::log(1e-16))) {
      std::ostringstream msg;
      msg << "coherent series: |z* w|^n_max / n_max! = " << std::exp(log_last)
          << " is not below 1e-16 at n_max=" << n_max;
      throw TruncationError(msg.str());
    }
  }
  std::vector<std::complex<double>> terms(n_max + 1);
  terms[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) terms[n] = terms[n - 1] * x / static_cast<double>(n);
  return terms;
}

double overlap_prefactor(const CoherentAmplitudes& amp) {
  return std::exp(-0.5 * (std::norm(amp.z) + std::norm(amp.w)));
}

// Normalised average over the d-dimensional weight e^{-|x|^2} with an
// n-point Gauss-Hermite rule per axis. Row-major flattening, pairwise sum.
template <class T, class F>
T tensor_average(int dims, const QuadratureRule& rule, F&& f, Execution exec) {
  const std::size_t n = rule.size();
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= n;
  auto terms = tabulate<T>(
      total,
      [&](std::size_t flat) {
        std::array<double, 3> x{};
        double weight = 1.0;
        for (int d = dims - 1; d >= 0; --d) {
          const std::size_t i = flat % n;
          flat /= n;
          x[d] = rule.nodes[i];
          weight *= rule.weights[i];
        }
        return weight * f(x);
      },
      exec);
  return pairwise_sum(terms) / std::pow(std::numbers::pi, 0.5 * dims);
}

}  // namespace

std::complex<double> coherent_matrix_element_direct(const CoherentAmplitudes& amp, double U,
                                                    double t, int n_max) {
  const auto terms = coherent_terms(amp, n_max);
  std::complex<double> acc = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    acc += terms[n] * std::polar(1.0, -0.5 * t * U * n * n);
  }
  return overlap_prefactor(amp) * acc;
}

std::complex<double> coherent_matrix_element_hs(const CoherentAmplitudes& amp, double U, double t,
                                                int n_max) {
  const auto terms = coherent_terms(amp, n_max);
  std::complex<double> acc = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    std::complex<double> wick = 1.0;
    if (t != 0.0) {
      // <phi^2> = U / (-i t); the decoupled vertex is e^{-i t phi n}.
      const std::complex<double> variance = U / (-kI * t);
      const std::complex<double> vertex = -kI * t * static_cast<double>(n);
      wick = std::exp(0.5 * vertex * vertex * variance);
    }
    acc += terms[n] * wick;
  }
  return overlap_prefactor(amp) * acc;
}

ShortTimeCoefficients short_time_mismatch(const CoherentAmplitudes& amp, double U, double dt,
                                          int n_max) {
  if (!(dt > 0.0)) throw std::invalid_argument("short_time_mismatch: dt must be > 0");
  const auto terms = coherent_terms(amp, n_max);
  const double pre = overlap_prefactor(amp);

  std::complex<double> second_moment = 0.0;
  for (int n = 0; n <= n_max; ++n) second_moment += terms[n] * static_cast<double>(n) * static_cast<double>(n);

  // First-order expansion of each slice, e^{-i dt phi n} ~ 1 - i dt phi n,
  // averaged before exponentiating: only <phi> survives, and it vanishes.
  constexpr double mean_phi = 0.0;
  std::complex<double> naive = 0.0;
  for (int n = 0; n <= n_max; ++n) naive += terms[n] * (-kI * static_cast<double>(n) * mean_phi);

  ShortTimeCoefficients out;
  out.exact_coeff = -0.5 * kI * U * pre * second_moment;
  out.naive_coeff = pre * naive;
  out.finite_difference = (coherent_matrix_element_direct(amp, U, dt, n_max) -
                           coherent_matrix_element_direct(amp, U, 0.0, n_max)) /
                          dt;
  return out;
}

double generalized_hs_residual(const std::vector<double>& levels,
                               const std::vector<std::vector<double>>& coupling, double beta,
                               const TruncationPolicy& trunc, int nodes_per_dim, Execution exec) {
  const int dims = static_cast<int>(levels.size());
  if (dims < 1 || dims > 3) throw std::invalid_argument("generalized HS check supports 1 to 3 levels");
  if (!(beta > 0.0)) throw std::invalid_argument("generalized HS check: beta must be > 0");
  if (static_cast<int>(coupling.size()) != dims) {
    throw std::invalid_argument("coupling matrix must be levels x levels");
  }
  Eigen::MatrixXd u(dims, dims);
  for (int a = 0; a < dims; ++a) {
    if (static_cast<int>(coupling[a].size()) != dims) {
      throw std::invalid_argument("coupling matrix must be levels x levels");
    }
    for (int b = 0; b < dims; ++b) u(a, b) = coupling[a][b];
  }
  if (!u.isApprox(u.transpose(), 1e-12) && u.norm() > 0.0) {
    throw DomainError("coupling matrix must be symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(u);
  const auto& evals = eig.eigenvalues();
  const double largest = evals.cwiseAbs().maxCoeff();
  if (!(evals.minCoeff() > 1e-12 * largest) || largest == 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "coupling matrix is not positive definite; eigenvalues:";
    for (int i = 0; i < dims; ++i) msg << ' ' << evals[i];
    throw DomainError(msg.str());
  }
  // phi = R xi with R = (U/beta)^{1/2} symmetric, xi standard normal = sqrt(2) x.
  const Eigen::MatrixXd root =
      eig.eigenvectors() * (evals / beta).cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();

  const int cap = trunc.n_max_per_level;
  if (cap < 1) throw std::invalid_argument("generalized HS check: n_max_per_level must be >= 1");
  const auto rule = gauss_hermite(nodes_per_dim);

  std::vector<int> occ(dims, 0);
  double worst = 0.0;
  while (true) {
    Eigen::VectorXd n(dims);
    for (int a = 0; a < dims; ++a) n[a] = occ[a];
    const double lhs = std::exp(-0.5 * beta * n.dot(u * n));
    const Eigen::VectorXd c = std::sqrt(2.0) * beta * (root * n);
    const auto rhs = tensor_average<std::complex<double>>(
        dims, rule,
        [&](const std::array<double, 3>& x) {
          double phase = 0.0;
          for (int a = 0; a < dims; ++a) phase += c[a] * x[a];
          return std::polar(1.0, -phase);
        },
        exec);
    worst = std::max(worst, std::abs(rhs - lhs));

    int pos = dims;
    while (pos > 0 && occ[pos - 1] == cap) {
      occ[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++occ[pos - 1];
  }
  return worst;
}

SpinTraces spin_hs_counterexample(double beta_j, int nodes_per_dim, Execution exec) {
  if (!(beta_j >= 0.0)) throw DomainError("spin counterexample needs beta J >= 0 for a normalisable Gaussian");
  SpinTraces out;
  out.lhs = 2.0 * std::exp(0.75 * beta_j);
  out.rhs_closed = 2.0 * std::exp(0.25 * beta_j) * (1.0 + 0.5 * beta_j);

  // m has per-component variance 2J/beta; in Gauss-Hermite variables
  // beta |m| / 2 = sqrt(beta J) |x|.
  const double c = std::sqrt(beta_j);
  const auto rule = gauss_hermite(nodes_per_dim);
  out.rhs_quadrature = tensor_average<double>(
      3, rule,
      [c](const std::array<double, 3>& x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        return 2.0 * std::cosh(c * r);
      },
      exec);
  return out;
}

}  // namespace hubatom
