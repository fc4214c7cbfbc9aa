#include "hubatom/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hubatom/errors.hpp"
#include "sectors.hpp"

namespace hubatom {

std::string_view to_string(LineKind k) {
  switch (k) {
    case LineKind::lesser: return "lesser";
    case LineKind::greater: return "greater";
    case LineKind::spectral: return "spectral";
  }
  return "spectral";
}

LineKind parse_line_kind(std::string_view s) {
  if (s == "lesser") return LineKind::lesser;
  if (s == "greater") return LineKind::greater;
  if (s == "spectral") return LineKind::spectral;
  throw ConfigError("unknown kind '" + std::string(s) + "'; expected lesser|greater|spectral");
}

double SpectralLineSet::total_weight() const {
  double sum = 0.0;
  for (const auto& l : lines) sum += l.weight;
  return sum;
}

std::vector<std::pair<double, double>> SpectralLineSet::as_pairs() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.emplace_back(l.energy, l.weight);
  return out;
}

std::vector<SpectralLine> merge_lines(std::vector<SpectralLine> lines) {
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& a, const auto& b) { return a.energy < b.energy; });
  std::vector<SpectralLine> merged;
  for (const auto& l : lines) {
    if (!merged.empty()) {
      auto& last = merged.back();
      const double tol = 1e-12 * std::max(1.0, std::abs(last.energy));
      if (std::abs(l.energy - last.energy) <= tol) {
        last.weight += l.weight;
        continue;
      }
    }
    merged.push_back(l);
  }
  return merged;
}

namespace {

struct LevelParentage {
  double energy = 0.0;
  std::vector<double> n;
  std::vector<double> p;
};

LevelParentage level_parentage(const ModelSpec& model, const TruncationPolicy& trunc,
                               std::string_view alpha) {
  const std::size_t a = level_index(model, alpha);
  const auto s = detail::sector_weights(model, trunc);
  return {model.levels[a].energy, detail::parentage_n(s, a), detail::parentage_p(s, a, model.sign())};
}

std::string convention_for(LineKind kind) {
  switch (kind) {
    case LineKind::lesser:
      return "G^<(eps) = -2 i pi s sum_lines w delta(eps - E), s = +1 boson / -1 fermion";
    case LineKind::greater:
      return "G^>(eps) = -2 i pi sum_lines w delta(eps - E)";
    case LineKind::spectral:
      return "rho(eps) = sum_lines w delta(eps - E)";
  }
  return {};
}

SpectralLineSet make_set(LineKind kind, std::string_view alpha, std::vector<SpectralLine> raw) {
  SpectralLineSet set;
  set.kind = kind;
  set.alpha = std::string(alpha);
  set.lines = merge_lines(std::move(raw));
  set.convention_note = convention_for(kind);
  return set;
}

SpectralLineSet lines_from(const LevelParentage& lp, double U, int sign, LineKind kind,
                           std::string_view alpha) {
  const int n_max = static_cast<int>(lp.n.size()) - 1;
  std::vector<SpectralLine> raw;
  switch (kind) {
    case LineKind::lesser:
      for (int n = 1; n <= n_max; ++n) raw.push_back({lp.energy + U * (n - 1), lp.n[n]});
      break;
    case LineKind::greater:
      for (int n = 0; n <= n_max; ++n) raw.push_back({lp.energy + U * n, lp.p[n]});
      break;
    case LineKind::spectral:
      for (int n = 0; n <= n_max; ++n) {
        const double particle = n < n_max ? lp.n[n + 1] : 0.0;
        raw.push_back({lp.energy + U * n, lp.p[n] - sign * particle});
      }
      break;
  }
  return make_set(kind, alpha, std::move(raw));
}

}  // namespace

std::vector<double> fractional_parentage_n(const ModelSpec& model, const TruncationPolicy& trunc,
                                           std::string_view alpha) {
  const std::size_t a = level_index(model, alpha);
  return detail::parentage_n(detail::sector_weights(model, trunc), a);
}

std::vector<double> fractional_parentage_p(const ModelSpec& model, const TruncationPolicy& trunc,
                                           std::string_view alpha) {
  const std::size_t a = level_index(model, alpha);
  return detail::parentage_p(detail::sector_weights(model, trunc), a, model.sign());
}

SpectralLineSet line_set(const ModelSpec& model, const TruncationPolicy& trunc,
                         std::string_view alpha, LineKind kind) {
  return lines_from(level_parentage(model, trunc, alpha), model.U, model.sign(), kind, alpha);
}

SpectralLineSet lesser_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                             std::string_view alpha) {
  return line_set(model, trunc, alpha, LineKind::lesser);
}

SpectralLineSet greater_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                              std::string_view alpha) {
  return line_set(model, trunc, alpha, LineKind::greater);
}

SpectralLineSet spectral_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                               std::string_view alpha) {
  return line_set(model, trunc, alpha, LineKind::spectral);
}

std::complex<double> green_prefactor(Statistics statistics, GreenKind kind) {
  const std::complex<double> one_over_i{0.0, -1.0};
  return kind == GreenKind::lesser ? double(statistics_sign(statistics)) * one_over_i : one_over_i;
}

GreenSeries green_time_series(const ModelSpec& model, const TruncationPolicy& trunc,
                              std::string_view alpha, GreenKind kind,
                              const std::vector<double>& times) {
  const auto lp = level_parentage(model, trunc, alpha);
  const int n_max = static_cast<int>(lp.n.size()) - 1;
  const auto pre = green_prefactor(model.statistics, kind);

  GreenSeries series;
  series.kind = kind;
  series.alpha = std::string(alpha);
  series.times = times;
  series.values.reserve(times.size());
  for (double t : times) {
    std::complex<double> acc = 0.0;
    if (kind == GreenKind::lesser) {
      for (int n = 1; n <= n_max; ++n) acc += lp.n[n] * std::polar(1.0, -(lp.energy + model.U * (n - 1)) * t);
    } else {
      for (int n = 0; n <= n_max; ++n) acc += lp.p[n] * std::polar(1.0, -(lp.energy + model.U * n) * t);
    }
    series.values.push_back(pre * acc);
  }
  return series;
}

std::complex<double> series_from_lines(const SpectralLineSet& lines, std::complex<double> prefactor,
                                       double t) {
  std::complex<double> acc = 0.0;
  for (const auto& l : lines.lines) acc += l.weight * std::polar(1.0, -l.energy * t);
  return prefactor * acc;
}

Matrix2c vertex_correlator(double U, double t) {
  const double half = 0.5 * U;
  return {{{std::polar(1.0, -half * std::abs(t)), std::polar(1.0, half * t)},
           {std::polar(1.0, -half * t), std::polar(1.0, half * std::abs(t))}}};
}

std::vector<std::pair<double, double>> broadened_spectrum(const SpectralLineSet& lines, double eta,
                                                          const std::vector<double>& grid) {
  if (!(eta > 0.0)) throw std::invalid_argument("broadened_spectrum: eta must be > 0");
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double e : grid) {
    double rho = 0.0;
    for (const auto& l : lines.lines) {
      const double d = e - l.energy;
      rho += l.weight * (eta / std::numbers::pi) / (d * d + eta * eta);
    }
    out.emplace_back(e, rho);
  }
  return out;
}

double kms_check(const ModelSpec& model, const TruncationPolicy& trunc, std::string_view alpha) {
  const auto lp = level_parentage(model, trunc, alpha);
  const int n_max = static_cast<int>(lp.n.size()) - 1;
  const double total = std::accumulate(lp.n.begin(), lp.n.end(), 0.0) +
                       std::accumulate(lp.p.begin(), lp.p.end(), 0.0);
  double worst = 0.0;
  for (int n = 0; n < n_max; ++n) {
    double boltzmann_p = 0.0;
    if (lp.p[n] > 0.0) {
      boltzmann_p =
          std::exp(std::log(lp.p[n]) - model.beta * (lp.energy + model.U * n - model.mu));
    }
    worst = std::max(worst, std::abs(lp.n[n + 1] - boltzmann_p) / total);
  }
  return worst;
}

}  // namespace hubatom
