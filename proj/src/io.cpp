#include "hubatom/io.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace hubatom {

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& out, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out << c;
      continue;
    }
    out << '"';
    for (char ch : c) {
      if (ch == '"') out << '"';
      out << ch;
    }
    out << '"';
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

void write_lines_csv(std::ostream& out, std::span<const std::pair<double, double>> lines,
                     const std::string& value_column) {
  out << "energy," << value_column << '\n';
  for (const auto& [e, w] : lines) out << format_double(e) << ',' << format_double(w) << '\n';
}

void write_series_csv(std::ostream& out, std::span<const double> times,
                      std::span<const std::complex<double>> values) {
  out << "t,re,im\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format_double(times[i]) << ',' << format_double(values[i].real()) << ','
        << format_double(values[i].imag()) << '\n';
  }
}

}  // namespace hubatom
