#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "hubatom/parallel.hpp"

namespace hubatom {

enum class RuleKind { gauss_hermite, uniform_circle };

struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_hermite;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Hermite rule for the weight e^{-x^2}; exact for x^k, k <= 2n-1.
/// Nodes ascending. Rules are cached, so repeated requests are cheap.
QuadratureRule gauss_hermite(int n);

/// theta_k = 2 pi k / M with weights 1/M.
QuadratureRule circle_rule(int m);

using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// <f(x)> over a centred normal distribution with the given variance,
/// using a fixed Gauss-Hermite rule.
std::complex<double> gaussian_average(const QuadratureRule& rule, const ComplexIntegrand& f,
                                      double variance, Execution exec = Execution::parallel);

/// (1/M) sum_k f(theta_k) for a circle rule.
std::complex<double> circle_average(const QuadratureRule& rule, const ComplexIntegrand& f,
                                    Execution exec = Execution::parallel);

struct AdaptiveOptions {
  int initial_nodes = 8;
  int max_nodes = 1 << 12;
  Execution exec = Execution::parallel;
};

struct GaussianAverage {
  std::complex<double> value;
  int nodes_used = 0;
};

/// Gaussian average with node doubling until two successive estimates agree
/// to rel_tol. Throws ConvergenceError naming the last two estimates.
GaussianAverage adaptive_gaussian_average(const ComplexIntegrand& f, double variance,
                                          double rel_tol, const AdaptiveOptions& opts = {});

}  // namespace hubatom
