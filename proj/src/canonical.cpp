#include "hubatom/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "hubatom/errors.hpp"
#include "hubatom/io.hpp"
#include "hubatom/quad.hpp"

namespace hubatom {

double CanonicalTable::Z(int n) const { return z.at(n) * std::exp(n * log_unit); }

double CanonicalTable::W(std::size_t alpha, int n) const {
  return w.at(alpha).at(n) * std::exp(n * log_unit);
}

double CanonicalTable::log_Z(int n) const { return std::log(z.at(n)) + n * log_unit; }

namespace {

// Per-level Boltzmann factors relative to the lowest level, so each is <= 1.
// The common factor e^{-beta eps_min} per particle goes into log_unit.
std::vector<double> scaled_factors(const ModelSpec& model, double& log_unit) {
  const double eps_ref = min_level_energy(model);
  log_unit = -model.beta * eps_ref;
  std::vector<double> x(model.levels.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    x[a] = std::exp(-model.beta * (model.levels[a].energy - eps_ref));
  }
  return x;
}

void require_basic(const ModelSpec& model) {
  if (model.levels.empty()) throw ConfigError("levels must be non-empty");
  if (!(model.beta > 0.0)) throw ConfigError("beta must be positive");
}

}  // namespace

CanonicalTable canonical_partitions_upto(const ModelSpec& model, const TruncationPolicy& trunc,
                                         int n_upper) {
  require_basic(model);
  const int cap = occupancy_cap(model, trunc);
  const int n_top = std::clamp(n_upper, 0, particle_capacity(model, trunc));
  const std::size_t levels = model.levels.size();

  CanonicalTable t;
  t.n_max = n_top;
  const auto x = scaled_factors(model, t.log_unit);
  t.z.assign(n_top + 1, 0.0);
  t.z[0] = 1.0;
  t.w.assign(levels, std::vector<double>(n_top + 1, 0.0));

  std::vector<double> xp(cap + 1);
  std::vector<double> z_next(n_top + 1);
  std::vector<double> w_next(n_top + 1);
  for (std::size_t b = 0; b < levels; ++b) {
    xp[0] = 1.0;
    for (int k = 1; k <= cap; ++k) xp[k] = xp[k - 1] * x[b];

    // W rows first: level b's own row needs the Z from before b was added.
    for (std::size_t a = 0; a < levels; ++a) {
      for (int n = 0; n <= n_top; ++n) {
        double acc = 0.0;
        for (int k = 0; k <= std::min(cap, n); ++k) {
          acc += xp[k] * t.w[a][n - k];
          if (a == b) acc += k * xp[k] * t.z[n - k];
        }
        w_next[n] = acc;
      }
      t.w[a].swap(w_next);
    }
    for (int n = 0; n <= n_top; ++n) {
      double acc = 0.0;
      for (int k = 0; k <= std::min(cap, n); ++k) acc += xp[k] * t.z[n - k];
      z_next[n] = acc;
    }
    t.z.swap(z_next);
  }
  return t;
}

CanonicalTable canonical_partitions(const ModelSpec& model, const TruncationPolicy& trunc) {
  return canonical_partitions_upto(model, trunc, resolve_n_max(model, trunc));
}

int minimum_contour_nodes(const ModelSpec& model, const TruncationPolicy& trunc) {
  return particle_capacity(model, trunc) + 1;
}

ContourResult canonical_partition_contour(const ModelSpec& model, const TruncationPolicy& trunc,
                                          int n, int m, Execution exec) {
  require_basic(model);
  if (n < 0) throw std::invalid_argument("canonical_partition_contour: N must be >= 0");
  const int m_min = minimum_contour_nodes(model, trunc);
  if (m < m_min) {
    throw std::invalid_argument("canonical_partition_contour: M=" + std::to_string(m) +
                                " aliases the trigonometric polynomial; need M >= " +
                                std::to_string(m_min));
  }
  ContourResult result;
  result.nodes = m;
  if (n > particle_capacity(model, trunc)) return result;

  double log_unit = 0.0;
  const auto x = scaled_factors(model, log_unit);
  const int cap = occupancy_cap(model, trunc);
  const auto rule = circle_rule(m);

  // Grand partition function of the truncated free levels at beta*mu = i*theta,
  // each level a finite geometric series in q = x e^{i theta}.
  auto integrand = [&](double theta) {
    const std::complex<double> phase = std::polar(1.0, theta);
    std::complex<double> product = 1.0;
    for (double xa : x) {
      const std::complex<double> q = xa * phase;
      std::complex<double> factor = 1.0;
      for (int k = 0; k < cap; ++k) factor = 1.0 + q * factor;
      product *= factor;
    }
    return product * std::polar(1.0, -n * theta);
  };

  auto terms = tabulate<std::complex<double>>(
      rule.size(), [&](std::size_t k) { return integrand(rule.nodes[k]); }, exec);
  std::vector<double> mags(terms.size());
  std::transform(terms.begin(), terms.end(), mags.begin(), [](auto c) { return std::abs(c); });
  const std::complex<double> avg = pairwise_sum(terms) / static_cast<double>(m);
  const double magnitude = pairwise_sum(mags) / m;

  const double unit = std::exp(n * log_unit);
  result.value = avg.real() * unit;
  result.imag_residue = std::abs(avg.imag()) * unit;

  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
  if (std::abs(avg.imag()) > 1e-12 * std::abs(avg.real()) + floor) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "contour route for Z_" << n << ": imaginary residue " << avg.imag()
        << " is not negligible against " << avg.real();
    throw ConvergenceError(msg.str());
  }
  return result;
}

void write_canonical_csv(std::ostream& out, const ModelSpec& model, const CanonicalTable& table) {
  std::vector<std::string> header{"N", "Z_N"};
  for (const auto& l : model.levels) header.push_back("W_" + l.label);
  write_csv_row(out, header);
  std::vector<double> row;
  for (int n = 0; n <= table.n_max; ++n) {
    row.assign({static_cast<double>(n), table.Z(n)});
    for (std::size_t a = 0; a < table.levels(); ++a) row.push_back(table.W(a, n));
    write_csv_row(out, row);
  }
}

}  // namespace hubatom
