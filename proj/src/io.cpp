// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace logschrod {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_double(double v, int precision) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size())
        throw DomainError("CsvTable: row width does not match the header");
    rows.push_back(std::move(row));
}

void emit_csv(const CsvTable& table, const std::string& path) {
    if (table.columns.empty() || table.rows.empty())
        throw DomainError("emit_csv: empty table");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_csv: cannot open " + path);
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_double(row[c]);
        }
        out << '\n';
    }
    if (!out) throw IoError("emit_csv: write failed for " + path);
}

void emit_svg(const std::vector<SvgSeries>& series, const std::string& path) {
    if (series.empty()) throw DomainError("emit_svg: no series");
    for (const auto& s : series)
        if (s.points.empty()) throw DomainError("emit_svg: empty series");

    double xmin = series[0].points[0].first, xmax = xmin;
    double ymin = series[0].points[0].second, ymax = ymin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }

    const double W = 800.0, H = 500.0, ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto sy = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_svg: cannot open " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 5.0;
        const double fy = ymin + (ymax - ymin) * t / 5.0;
        out << "<line x1=\"" << sx(fx) << "\" y1=\"" << H - mb << "\" x2=\"" << sx(fx)
            << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << sx(fx) << "\" y=\"" << H - mb + 20
            << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(fx, 4)
            << "</text>\n"
            << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml << "\" y2=\""
            << sy(fy) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << sy(fy) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(fy, 4)
            << "</text>\n";
    }
    size_t color = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[color % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) out << sx(x) << ',' << sy(y) << ' ';
        out << "\"/>\n";
        if (!s.label.empty())
            out << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * color
                << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << palette[color % 6]
                << "\">" << s.label << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    if (!out) throw IoError("emit_svg: write failed for " + path);
}

Rng::Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

uint64_t Rng::next_u64() {
    // splitmix64: fixed algorithm, identical sequences on every platform
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

} // namespace logschrod
