#include "hubatom/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hubatom {

namespace {

constexpr std::size_t kLeafSize = 8;

template <class T>
T pairwise(std::span<const T> v) {
  if (v.size() <= kLeafSize) {
    T acc{};
    for (const auto& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise(values); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) {
  return pairwise(values);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hubatom
