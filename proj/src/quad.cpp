#include "hubatom/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hubatom/errors.hpp"

namespace hubatom {

namespace {

// Orthonormal Hermite polynomials p_0..p_n at x, for the weight e^{-x^2}.
// The recurrence is rescaled whenever it grows past 1e150 so that large n
// (outer nodes near sqrt(2n)) stay finite; log_scale collects the factors.
struct HermiteEval {
  double p_n = 0.0;
  double p_nm1 = 0.0;
  double log_scale = 0.0;
};

HermiteEval hermite_orthonormal(int n, double x) {
  constexpr double kBig = 1e150;
  double pm1 = 0.0;
  double p = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double log_scale = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double next = x * std::sqrt(2.0 / j) * p - std::sqrt((j - 1.0) / j) * pm1;
    pm1 = p;
    p = next;
    if (std::abs(p) > kBig) {
      p /= kBig;
      pm1 /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return {p, pm1, log_scale};
}

QuadratureRule build_gauss_hermite(int n) {
  // Seeds from the eigenvalues of the Jacobi matrix, then Newton polish on the
  // three-term recurrence; weights from w = 1 / (n p_{n-1}^2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);

  std::vector<double> seeds(n, 0.0);
  if (n > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("Gauss-Hermite: tridiagonal eigensolver failed for n=" +
                             std::to_string(n));
    }
    for (int i = 0; i < n; ++i) seeds[i] = solver.eigenvalues()[i];
  }

  QuadratureRule rule;
  rule.kind = RuleKind::gauss_hermite;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const int half = n / 2;
  auto polish = [n](double x) {
    for (int it = 0; it < 100; ++it) {
      const auto h = hermite_orthonormal(n, x);
      const double dx = h.p_n / (std::sqrt(2.0 * n) * h.p_nm1);
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
  };
  auto weight_at = [n](double x) {
    const auto h = hermite_orthonormal(n, x);
    const double log_w = -std::log(static_cast<double>(n)) -
                         2.0 * (std::log(std::abs(h.p_nm1)) + h.log_scale);
    return std::exp(log_w);
  };

  // Positive roots are polished and mirrored so the rule is exactly symmetric.
  for (int i = 0; i < half; ++i) {
    const double x = polish(std::abs(seeds[n - 1 - i]));
    const double w = weight_at(x);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[half] = 0.0;
    rule.weights[half] = weight_at(0.0);
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_hermite(n)).first;
  return it->second;
}

QuadratureRule circle_rule(int m) {
  if (m < 1) throw std::invalid_argument("circle_rule: M must be >= 1");
  QuadratureRule rule;
  rule.kind = RuleKind::uniform_circle;
  rule.nodes.resize(m);
  rule.weights.assign(m, 1.0 / m);
  for (int k = 0; k < m; ++k) rule.nodes[k] = 2.0 * std::numbers::pi * k / m;
  return rule;
}

std::complex<double> gaussian_average(const QuadratureRule& rule, const ComplexIntegrand& f,
                                      double variance, Execution exec) {
  if (rule.kind != RuleKind::gauss_hermite) {
    throw std::invalid_argument("gaussian_average needs a Gauss-Hermite rule");
  }
  if (!(variance > 0.0)) throw std::invalid_argument("gaussian_average: variance must be > 0");
  const double scale = std::sqrt(2.0 * variance);
  auto terms = tabulate<std::complex<double>>(
      rule.size(), [&](std::size_t i) { return rule.weights[i] * f(scale * rule.nodes[i]); }, exec);
  return pairwise_sum(terms) / std::sqrt(std::numbers::pi);
}

std::complex<double> circle_average(const QuadratureRule& rule, const ComplexIntegrand& f,
                                    Execution exec) {
  if (rule.kind != RuleKind::uniform_circle) {
    throw std::invalid_argument("circle_average needs a uniform circle rule");
  }
  auto terms = tabulate<std::complex<double>>(
      rule.size(), [&](std::size_t i) { return f(rule.nodes[i]); }, exec);
  return pairwise_sum(terms) / static_cast<double>(rule.size());
}

GaussianAverage adaptive_gaussian_average(const ComplexIntegrand& f, double variance,
                                          double rel_tol, const AdaptiveOptions& opts) {
  if (!(variance > 0.0)) throw std::invalid_argument("adaptive_gaussian_average: variance must be > 0");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("adaptive_gaussian_average: rel_tol must be > 0");
  if (opts.initial_nodes < 1 || opts.max_nodes < opts.initial_nodes) {
    throw std::invalid_argument("adaptive_gaussian_average: bad node limits");
  }

  const double scale = std::sqrt(2.0 * variance);
  auto estimate = [&](int n, double& magnitude) {
    const auto rule = gauss_hermite(n);
    auto terms = tabulate<std::complex<double>>(
        rule.size(), [&](std::size_t i) { return rule.weights[i] * f(scale * rule.nodes[i]); },
        opts.exec);
    std::vector<double> mags(terms.size());
    std::transform(terms.begin(), terms.end(), mags.begin(), [](auto c) { return std::abs(c); });
    magnitude = pairwise_sum(mags) / std::sqrt(std::numbers::pi);
    return pairwise_sum(terms) / std::sqrt(std::numbers::pi);
  };

  double magnitude = 0.0;
  int n = opts.initial_nodes;
  auto current = estimate(n, magnitude);
  auto previous = current;
  while (2 * n <= opts.max_nodes) {
    n *= 2;
    previous = current;
    current = estimate(n, magnitude);
    const double diff = std::abs(current - previous);
    // Agreement is relative, except at the rounding floor of the node sum,
    // which is the only meaningful scale when the average itself is ~0.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (diff <= std::max(rel_tol * std::abs(current), floor)) return {current, n};
  }

  std::ostringstream msg;
  msg.precision(17);
  msg << "Gaussian average did not converge to rel_tol=" << rel_tol << " within "
      << opts.max_nodes << " nodes; last estimates " << previous << " (n=" << n / 2
      << ") and " << current << " (n=" << n << ")";
  throw ConvergenceError(msg.str());
}

}  // namespace hubatom
