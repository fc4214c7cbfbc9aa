#include "sectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hubatom/errors.hpp"

namespace hubatom::detail {

namespace {

// Linear-scale sector terms normalised by their maximum.
std::vector<double> relative_terms(const ModelSpec& model, const CanonicalTable& table) {
  std::vector<double> logs(table.z.size(), -INFINITY);
  double peak = -INFINITY;
  for (int n = 0; n <= table.n_max; ++n) {
    if (table.z[n] > 0.0) {
      logs[n] = std::log(table.z[n]) + log_sector_factor(model, table.log_unit, n);
      peak = std::max(peak, logs[n]);
    }
  }
  std::vector<double> terms(logs.size(), 0.0);
  for (std::size_t n = 0; n < logs.size(); ++n) {
    if (std::isfinite(logs[n])) terms[n] = std::exp(logs[n] - peak);
  }
  return terms;
}

CanonicalTable truncated(CanonicalTable t, int n_max) {
  t.n_max = n_max;
  t.z.resize(n_max + 1);
  for (auto& row : t.w) row.resize(n_max + 1);
  return t;
}

}  // namespace

double log_sector_factor(const ModelSpec& model, double log_unit, int n) {
  const double dn = n;
  return dn * log_unit + model.beta * model.mu * dn - 0.5 * model.beta * model.U * dn * (dn - 1.0);
}

int resolve_n_max_unchecked(const ModelSpec& model, const TruncationPolicy& trunc) {
  const int capacity = particle_capacity(model, trunc);
  if (!trunc.is_auto()) return std::min(*trunc.n_max, capacity);

  const auto full = canonical_partitions_upto(model, trunc, capacity);
  const auto terms = relative_terms(model, full);
  double running = terms[0];
  for (int n = 1; n <= capacity; ++n) {
    if (terms[n] < trunc.tail_tol * running) return n;
    running += terms[n];
  }
  return capacity;
}

SectorWeights sector_weights(const ModelSpec& model, const TruncationPolicy& trunc) {
  const int n_max = resolve_n_max(model, trunc);
  const int capacity = particle_capacity(model, trunc);
  const auto full = canonical_partitions_upto(model, trunc, capacity);

  const auto terms = relative_terms(model, full);
  double kept = 0.0;
  double dropped = 0.0;
  for (int n = 0; n <= capacity; ++n) (n <= n_max ? kept : dropped) += terms[n];

  SectorWeights s;
  s.tail = dropped / kept;
  if (!trunc.is_auto() && s.tail > trunc.tail_tol) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "truncation tail " << s.tail << " exceeds tail_tol " << trunc.tail_tol
        << " at N_max=" << n_max << "; increase N_max (capacity " << capacity << ") or use auto";
    throw TruncationError(msg.str());
  }

  s.table = truncated(full, n_max);
  s.log_factor.resize(n_max + 1);
  double peak = -INFINITY;
  std::vector<double> logs(n_max + 1, -INFINITY);
  for (int n = 0; n <= n_max; ++n) {
    s.log_factor[n] = log_sector_factor(model, s.table.log_unit, n);
    if (s.table.z[n] > 0.0) {
      logs[n] = std::log(s.table.z[n]) + s.log_factor[n];
      peak = std::max(peak, logs[n]);
    }
  }
  double sum = 0.0;
  for (double l : logs) {
    if (std::isfinite(l)) sum += std::exp(l - peak);
  }
  s.log_xi = peak + std::log(sum);
  return s;
}

std::vector<double> parentage_n(const SectorWeights& s, std::size_t alpha) {
  const auto& w = s.table.w.at(alpha);
  std::vector<double> out(w.size(), 0.0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] > 0.0) out[n] = w[n] * std::exp(s.log_factor[n] - s.log_xi);
  }
  return out;
}

std::vector<double> parentage_p(const SectorWeights& s, std::size_t alpha, int sign) {
  const auto& w = s.table.w.at(alpha);
  const auto& z = s.table.z;
  std::vector<double> out(w.size(), 0.0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    const double hole = z[n] + sign * w[n];
    const double p = hole * std::exp(s.log_factor[n] - s.log_xi);
    if (p < -1e-14) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "negative hole parentage p=" << p << " at N=" << n << "; sign convention broken";
      throw Error(msg.str());
    }
    out[n] = std::max(p, 0.0);
  }
  return out;
}

}  // namespace hubatom::detail
