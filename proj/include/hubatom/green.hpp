#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hubatom/model.hpp"

namespace hubatom {

enum class LineKind { lesser, greater, spectral };

std::string_view to_string(LineKind k);
LineKind parse_line_kind(std::string_view s);

struct SpectralLine {
  double energy = 0.0;
  double weight = 0.0;
};

/// Delta lines of a one-particle function. Weights are the bare fractional
/// parentages; the -2 i pi (and sign) prefactors of G^<(eps), G^>(eps) are
/// an export convention, see convention_note.
struct SpectralLineSet {
  LineKind kind = LineKind::spectral;
  std::string alpha;
  std::vector<SpectralLine> lines;  // ascending energy
  std::string convention_note;

  double total_weight() const;
  std::vector<std::pair<double, double>> as_pairs() const;
};

/// Merges lines closer than 1e-12 max(1, |E|) by adding weights; input need
/// not be sorted. Keeps the lower energy of a merged pair.
std::vector<SpectralLine> merge_lines(std::vector<SpectralLine> lines);

/// n_{alpha|N} for N = 0..N_max.
std::vector<double> fractional_parentage_n(const ModelSpec& model, const TruncationPolicy& trunc,
                                           std::string_view alpha);
/// p_{alpha|N} for N = 0..N_max.
std::vector<double> fractional_parentage_p(const ModelSpec& model, const TruncationPolicy& trunc,
                                           std::string_view alpha);

/// Lines at eps_alpha + U(N-1), N = 1..N_max, weights n_{alpha|N}.
SpectralLineSet lesser_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                             std::string_view alpha);
/// Lines at eps_alpha + U N, N = 0..N_max, weights p_{alpha|N}.
SpectralLineSet greater_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                              std::string_view alpha);
/// Lines at eps_alpha + U N with weight p_{alpha|N} - s n_{alpha|N+1}.
SpectralLineSet spectral_lines(const ModelSpec& model, const TruncationPolicy& trunc,
                               std::string_view alpha);
SpectralLineSet line_set(const ModelSpec& model, const TruncationPolicy& trunc,
                         std::string_view alpha, LineKind kind);

enum class GreenKind { lesser, greater };

struct GreenSeries {
  GreenKind kind = GreenKind::lesser;
  std::string alpha;
  std::vector<double> times;
  std::vector<std::complex<double>> values;
};

/// G^<(t,0) = (s/i) sum_N e^{-i[eps+U(N-1)]t} n_{alpha|N},
/// G^>(t,0) = (1/i) sum_N e^{-i(eps+UN)t} p_{alpha|N}   (hbar = 1).
GreenSeries green_time_series(const ModelSpec& model, const TruncationPolicy& trunc,
                              std::string_view alpha, GreenKind kind,
                              const std::vector<double>& times);

/// Evaluates a time series from a line set: prefactor * sum w e^{-iEt}.
std::complex<double> series_from_lines(const SpectralLineSet& lines, std::complex<double> prefactor,
                                       double t);

/// Prefactor of the time-domain function: s/i for lesser, 1/i for greater.
std::complex<double> green_prefactor(Statistics statistics, GreenKind kind);

using Matrix2c = std::array<std::array<std::complex<double>, 2>, 2>;

/// Contour-ordered phase correlator <T_c e^{-i theta(t)} e^{i theta(0)}>.
Matrix2c vertex_correlator(double U, double t);

/// Lorentzian-broadened density sum_lines w (eta/pi) / ((e - E)^2 + eta^2).
std::vector<std::pair<double, double>> broadened_spectrum(const SpectralLineSet& lines, double eta,
                                                          const std::vector<double>& grid);

/// Largest detailed-balance violation |n_{N+1} - e^{-beta(eps+UN-mu)} p_N|,
/// relative to the line set's total weight sum_N (n_N + p_N).
double kms_check(const ModelSpec& model, const TruncationPolicy& trunc, std::string_view alpha);

}  // namespace hubatom
