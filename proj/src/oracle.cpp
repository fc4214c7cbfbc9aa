#include "hubatom/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hubatom/errors.hpp"
#include "hubatom/quad.hpp"

namespace hubatom {

std::vector<OccupationVector> enumerate_basis(const ModelSpec& model, const TruncationPolicy& trunc,
                                              std::optional<int> total_n) {
  const int n_max = resolve_n_max(model, trunc);
  const int cap = occupancy_cap(model, trunc);
  const std::size_t levels = model.levels.size();
  if (std::pow(cap + 1.0, static_cast<double>(levels)) > kMaxBasisSize) {
    throw ConfigError("oracle basis (" + std::to_string(cap + 1) + ")^" + std::to_string(levels) +
                      " exceeds the 1e7 state guard");
  }

  std::vector<OccupationVector> basis;
  std::vector<int> occ(levels, 0);
  while (true) {
    int n = 0;
    for (int k : occ) n += k;
    if (n <= n_max && (!total_n || n == *total_n)) {
      OccupationVector v;
      v.occupations = occ;
      v.total_n = n;
      for (std::size_t a = 0; a < levels; ++a) v.energy_free += model.levels[a].energy * occ[a];
      v.energy_int = 0.5 * model.U * n * (n - 1.0);
      basis.push_back(std::move(v));
    }
    // odometer, last level fastest
    std::size_t pos = levels;
    while (pos > 0 && occ[pos - 1] == cap) {
      occ[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++occ[pos - 1];
  }
  return basis;
}

ExactOracle::ExactOracle(const ModelSpec& model, const TruncationPolicy& trunc, Execution exec)
    : model_(model), exec_(exec), basis_(enumerate_basis(model, trunc)) {
  std::vector<double> log_w(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& s = basis_[i];
    log_w[i] = -model.beta * (s.energy_free + s.energy_int - model.mu * s.total_n);
  }
  const double peak = *std::max_element(log_w.begin(), log_w.end());
  prob_ = tabulate<double>(basis_.size(), [&](std::size_t i) { return std::exp(log_w[i] - peak); },
                           exec_);
  const double norm = pairwise_sum(prob_);
  for (auto& p : prob_) p /= norm;
  log_xi_ = peak + std::log(norm);
}

template <class F>
double ExactOracle::thermal_sum(F&& per_state) const {
  auto terms = tabulate<double>(
      basis_.size(), [&](std::size_t i) { return prob_[i] * per_state(basis_[i]); }, exec_);
  return pairwise_sum(terms);
}

template <class F>
std::complex<double> ExactOracle::thermal_sum_complex(F&& per_state) const {
  auto terms = tabulate<std::complex<double>>(
      basis_.size(), [&](std::size_t i) { return prob_[i] * per_state(basis_[i]); }, exec_);
  return pairwise_sum(terms);
}

double ExactOracle::grand_partition() const { return std::exp(log_xi_); }

double ExactOracle::occupation(std::size_t alpha) const {
  return thermal_sum([alpha](const OccupationVector& s) { return double(s.occupations[alpha]); });
}

double ExactOracle::mean_n() const {
  return thermal_sum([](const OccupationVector& s) { return double(s.total_n); });
}

std::complex<double> ExactOracle::lesser_time(std::size_t alpha, double t) const {
  const double eps = model_.levels.at(alpha).energy;
  const double U = model_.U;
  const auto sum = thermal_sum_complex([&](const OccupationVector& s) {
    const double n_a = s.occupations[alpha];
    return n_a * std::polar(1.0, -(eps + U * (s.total_n - 1)) * t);
  });
  return std::complex<double>(0.0, -1.0) * double(model_.sign()) * sum;
}

std::complex<double> ExactOracle::greater_time(std::size_t alpha, double t) const {
  const double eps = model_.levels.at(alpha).energy;
  const double U = model_.U;
  const int s_sign = model_.sign();
  const auto sum = thermal_sum_complex([&](const OccupationVector& s) {
    const double hole = 1.0 + s_sign * s.occupations[alpha];
    return hole * std::polar(1.0, -(eps + U * s.total_n) * t);
  });
  return std::complex<double>(0.0, -1.0) * sum;
}

namespace {

struct Contribution {
  double energy;
  double weight;
};

// Groups contributions whose energies agree to 1e-12 max(1,|E|), summing
// weights in basis order within each group.
std::vector<SpectralLine> accumulate(std::vector<Contribution> contributions) {
  std::stable_sort(contributions.begin(), contributions.end(),
                   [](const Contribution& a, const Contribution& b) { return a.energy < b.energy; });
  std::vector<SpectralLine> out;
  for (const auto& c : contributions) {
    if (!out.empty() &&
        std::abs(c.energy - out.back().energy) <= 1e-12 * std::max(1.0, std::abs(out.back().energy))) {
      out.back().weight += c.weight;
    } else {
      out.push_back({c.energy, c.weight});
    }
  }
  return out;
}

}  // namespace

SpectralLineSet ExactOracle::spectral_lines(std::size_t alpha, LineKind kind) const {
  const double eps = model_.levels.at(alpha).energy;
  const double U = model_.U;
  const int s_sign = model_.sign();
  std::vector<Contribution> contributions;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& s = basis_[i];
    const double n_a = s.occupations[alpha];
    if (kind != LineKind::lesser) {
      contributions.push_back({eps + U * s.total_n, (1.0 + s_sign * n_a) * prob_[i]});
    }
    if (kind != LineKind::greater && s.total_n >= 1) {
      const double sign = kind == LineKind::spectral ? -s_sign : 1.0;
      contributions.push_back({eps + U * (s.total_n - 1), sign * n_a * prob_[i]});
    }
  }
  SpectralLineSet set;
  set.kind = kind;
  set.alpha = model_.levels.at(alpha).label;
  set.lines = accumulate(std::move(contributions));
  set.convention_note = "exact enumeration";
  return set;
}

SpectralLineSet ExactOracle::fermion_special_form(std::size_t alpha) const {
  if (model_.statistics != Statistics::fermion) {
    throw DomainError("special spectral form holds for fermions only");
  }
  const double eps = model_.levels.at(alpha).energy;
  std::vector<Contribution> contributions;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const int others = basis_[i].total_n - basis_[i].occupations[alpha];
    contributions.push_back({eps + model_.U * others, prob_[i]});
  }
  SpectralLineSet set;
  set.kind = LineKind::spectral;
  set.alpha = model_.levels.at(alpha).label;
  set.lines = accumulate(std::move(contributions));
  set.convention_note = "rho = <delta(eps - eps_a - U N'_a)>";
  return set;
}

double ExactOracle::fermi_shifted_residual(std::size_t alpha) const {
  if (model_.statistics != Statistics::fermion) {
    throw DomainError("shifted Fermi-Dirac relation holds for fermions only");
  }
  const double eps = model_.levels.at(alpha).energy;
  const double occ = occupation(alpha);
  const double fd = thermal_sum([&](const OccupationVector& s) {
    const int others = s.total_n - s.occupations[alpha];
    return 1.0 / (std::exp(model_.beta * (eps + model_.U * others - model_.mu)) + 1.0);
  });
  return std::abs(occ - fd) / occ;
}

double exact_grand_partition(const ModelSpec& model, const TruncationPolicy& trunc) {
  return ExactOracle(model, trunc).grand_partition();
}

std::complex<double> exact_lesser_time(const ModelSpec& model, const TruncationPolicy& trunc,
                                       std::string_view alpha, double t) {
  return ExactOracle(model, trunc).lesser_time(level_index(model, alpha), t);
}

std::complex<double> exact_greater_time(const ModelSpec& model, const TruncationPolicy& trunc,
                                        std::string_view alpha, double t) {
  return ExactOracle(model, trunc).greater_time(level_index(model, alpha), t);
}

SpectralLineSet exact_spectral_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                                     std::string_view alpha, LineKind kind) {
  return ExactOracle(model, trunc).spectral_lines(level_index(model, alpha), kind);
}

double verify_operator_hs(const ModelSpec& model, const TruncationPolicy& trunc, double rel_tol,
                          Execution exec) {
  if (!(model.U > 0.0)) throw DomainError("operator HS identity requires U > 0");
  std::set<int> sectors;
  for (const auto& s : enumerate_basis(model, trunc)) sectors.insert(s.total_n);

  const double variance = model.U / model.beta;
  AdaptiveOptions opts;
  opts.exec = exec;
  double worst = 0.0;
  for (int n : sectors) {
    const double lhs = std::exp(-0.5 * model.beta * model.U * n * n);
    auto f = [&](double phi) { return std::polar(1.0, -model.beta * phi * n); };
    const auto rhs = adaptive_gaussian_average(f, variance, rel_tol, opts);
    worst = std::max(worst, std::abs(rhs.value - lhs));
  }
  // The N = 0 sector gives the operator norm, which is 1.
  return worst;
}

double fermi_shifted_occupation_check(const ModelSpec& model, const TruncationPolicy& trunc,
                                      std::string_view alpha) {
  return ExactOracle(model, trunc).fermi_shifted_residual(level_index(model, alpha));
}

}  // namespace hubatom
