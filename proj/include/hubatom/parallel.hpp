#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hubatom {

/// Selects between the OpenMP kernel and the serial reference loop.
/// Both produce bit-identical results: values are tabulated per index and
/// reduced afterwards in a fixed pairwise order.
enum class Execution { serial, parallel };

/// Evaluates f(i) for i in [0, n) into a vector.
template <class T, class F>
std::vector<T> tabulate(std::size_t n, F&& f, Execution exec = Execution::parallel) {
  std::vector<T> out(n);
  if (exec == Execution::parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = f(i);
    }
  }
  return out;
}

/// Index-ordered pairwise summation. The reduction tree depends only on
/// the length, so the result is reproducible bit for bit.
double pairwise_sum(std::span<const double> values);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

/// Number of OpenMP threads a parallel region would use (1 without OpenMP).
int max_threads();

}  // namespace hubatom
