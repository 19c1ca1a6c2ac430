// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "logschrod/errors.hpp"

namespace logschrod {

// Locale-independent shortest round-trip formatting (std::to_chars).
std::string format_double(double v);
// Fixed significant digits, general format.
std::string format_double(double v, int precision);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

// Header row then data rows; '.' decimal separator, newline-terminated.
void emit_csv(const CsvTable& table, const std::string& path);

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Standalone static SVG with axes and one polyline per series.
void emit_svg(const std::vector<SvgSeries>& series, const std::string& path);

// Deterministic uniform draws from a fixed-algorithm 64-bit generator.
class Rng {
  public:
    explicit Rng(uint64_t seed);
    double uniform(double lo, double hi); // in [lo, hi)
    uint64_t next_u64();

  private:
    uint64_t state_;
};

} // namespace logschrod
