#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hubatom {

/// 17 significant digits, '.' decimal point, independent of locale.
std::string format_double(double x);

void write_csv_row(std::ostream& out, std::span<const std::string> cells);
void write_csv_row(std::ostream& out, std::span<const double> values);

/// Columns energy, weight.
void write_lines_csv(std::ostream& out, std::span<const std::pair<double, double>> lines,
                     const std::string& value_column = "weight");

/// Columns t, re, im.
void write_series_csv(std::ostream& out, std::span<const double> times,
                      std::span<const std::complex<double>> values);

}  // namespace hubatom
