#include "hubatom/thermo.hpp"

#include <cmath>
#include <numeric>
#include <limits>
#include <sstream>

#include "hubatom/errors.hpp"
#include "hubatom/quad.hpp"
#include "sectors.hpp"

namespace hubatom {

namespace {

// log(1 + e^z) without overflow; equal to the principal log modulo 2 pi i,
// which exp() does not see.
std::complex<double> log1p_exp(std::complex<double> z) {
  if (z.real() > 0.0) return z + std::log(1.0 + std::exp(-z));
  return std::log(1.0 + std::exp(z));
}

}  // namespace

std::complex<double> grand_partition_noninteracting(const ModelSpec& model,
                                                    std::complex<double> mu_eff) {
  if (model.statistics == Statistics::boson) {
    const double eps_min = min_level_energy(model);
    if (!(mu_eff.real() < eps_min)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "divergent noninteracting grand partition: Re(mu_eff)=" << mu_eff.real()
          << " must lie below min eps=" << eps_min;
      throw DomainError(msg.str());
    }
  }
  std::complex<double> log_xi = 0.0;
  for (const auto& level : model.levels) {
    const std::complex<double> z = -model.beta * (level.energy - mu_eff);
    if (model.statistics == Statistics::fermion) {
      log_xi += log1p_exp(z);
    } else {
      log_xi -= std::log(1.0 - std::exp(z));
    }
  }
  return std::exp(log_xi);
}

GrandResult grand_partition_interacting(const ModelSpec& model, const TruncationPolicy& trunc) {
  const auto s = detail::sector_weights(model, trunc);
  GrandResult r;
  r.n_max = s.table.n_max;
  r.log_xi_U = s.log_xi;
  r.xi_U = std::exp(s.log_xi);
  r.per_N_terms.resize(r.n_max + 1);
  double mean_n = 0.0;
  for (int n = 0; n <= r.n_max; ++n) {
    const double rel = s.table.z[n] > 0.0 ? s.table.z[n] * std::exp(s.log_factor[n] - s.log_xi) : 0.0;
    r.per_N_terms[n] = rel * r.xi_U;
    mean_n += n * rel;
  }
  r.mean_N = mean_n;
  r.mean_occupation.resize(model.levels.size());
  for (std::size_t a = 0; a < model.levels.size(); ++a) {
    const auto n_alpha = detail::parentage_n(s, a);
    r.mean_occupation[a] = std::accumulate(n_alpha.begin(), n_alpha.end(), 0.0);
  }
  return r;
}

bool hs_domain_ok(const ModelSpec& model) {
  if (model.statistics == Statistics::fermion) return true;
  return model.mu + 0.5 * model.U < min_level_energy(model);
}

HsIdentityResult hs_identity_residual(const ModelSpec& model, const TruncationPolicy& trunc,
                                      double rel_tol, Execution exec) {
  if (!(model.U > 0.0)) throw DomainError("HS identity check requires U > 0");
  if (!hs_domain_ok(model)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "HS identity for bosons requires mu + U/2 < min eps (mu + U/2 = "
        << model.mu + 0.5 * model.U << ", min eps = " << min_level_energy(model) << ")";
    throw DomainError(msg.str());
  }
  const auto grand = grand_partition_interacting(model, trunc);
  const double variance = model.U / model.beta;
  AdaptiveOptions opts;
  opts.exec = exec;

  auto shifted = [&](double phi) {
    return grand_partition_noninteracting(model, {model.mu + 0.5 * model.U, -phi});
  };
  auto unshifted = [&](double phi) {
    return grand_partition_noninteracting(model, {model.mu, -phi});
  };
  const auto modified = adaptive_gaussian_average(shifted, variance, rel_tol, opts);
  const auto naive = adaptive_gaussian_average(unshifted, variance, rel_tol, opts);

  HsIdentityResult r;
  r.xi_U = grand.xi_U;
  r.average = modified.value;
  r.naive_average = naive.value;
  r.nodes_used = modified.nodes_used;
  r.naive_nodes_used = naive.nodes_used;
  r.residual = std::abs(modified.value - grand.xi_U) / grand.xi_U;
  r.naive_residual = std::abs(naive.value - grand.xi_U) / grand.xi_U;
  r.imag_ratio = std::abs(modified.value.imag()) / std::abs(modified.value);
  return r;
}

OneSiteSeries naive_vs_exact_one_site(double U, double beta, double mu, int n_max) {
  if (!(U >= 0.0) || !(beta > 0.0) || n_max < 0) {
    throw std::invalid_argument("naive_vs_exact_one_site: need U >= 0, beta > 0, n_max >= 0");
  }
  // log of the n-th term; both series differ only in the interaction exponent.
  auto log_exact = [&](double n) { return beta * mu * n - 0.5 * beta * U * n * (n - 1.0); };
  auto log_naive = [&](double n) { return beta * mu * n - 0.5 * beta * U * n * n; };

  OneSiteSeries out;
  for (int n = 0; n <= n_max; ++n) {
    out.exact += std::exp(log_exact(n));
    out.naive += std::exp(log_naive(n));
  }

  // Term ratios decrease with n, so the omitted tail is bounded by a
  // geometric series starting at n_max + 1.
  auto tail_bound = [&](auto log_term) {
    const double next = n_max + 1.0;
    const double ratio = std::exp(log_term(next + 1.0) - log_term(next));
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return std::exp(log_term(next)) / (1.0 - ratio);
  };
  const double tail_exact = tail_bound(log_exact) / out.exact;
  const double tail_naive = tail_bound(log_naive) / out.naive;
  if (!(tail_exact < 1e-14) || !(tail_naive < 1e-14)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "one-site series truncated at n_max=" << n_max << " leaves relative tails "
        << tail_exact << " (exact) and " << tail_naive << " (naive); need < 1e-14";
    throw TruncationError(msg.str());
  }
  return out;
}

}  // namespace hubatom
