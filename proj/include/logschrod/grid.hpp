// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "logschrod/errors.hpp"
#include "logschrod/par.hpp"

namespace logschrod {

// Point in up to three dimensions; only the first dim entries are meaningful.
using Point = std::array<double, 3>;

Point make_point(std::span<const double> coords);

// Real function sampled on the uniform grid of [-L, L]^N with n points per
// axis, x_i = -L + i h, h = 2L/n, stored row-major (last axis fastest).
// Outside the box the function is zero unless the periodic flag is set.
class GridFunction {
  public:
    GridFunction() = default;
    GridFunction(int dim, int n, double half_width, bool periodic);

    static GridFunction sample(int dim, int n, double half_width, bool periodic,
                               const std::function<double(const Point&)>& f);

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    double half_width() const { return half_width_; }
    bool periodic() const { return periodic_; }
    double spacing() const { return 2.0 * half_width_ / n_; }
    std::ptrdiff_t size() const { return static_cast<std::ptrdiff_t>(values_.size()); }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double coord(int i) const { return -half_width_ + i * spacing(); }
    Point point_at(std::ptrdiff_t flat) const;

    std::ptrdiff_t flat_index(std::span<const int> idx) const;
    void unflatten(std::ptrdiff_t flat, std::span<int> idx) const;

    double& at(std::span<const int> idx) { return values_[flat_index(idx)]; }
    double at(std::span<const int> idx) const { return values_[flat_index(idx)]; }

    // Cubic Lagrange interpolation (4-point stencil per axis); exact on grid
    // nodes. Periodic wrap or zero extension per the grid's flag.
    double value_at(const Point& x) const;

    // True when every coordinate lies on a grid node within tolerance.
    bool on_grid(const Point& x, std::span<std::ptrdiff_t> idx_out) const;

    bool all_finite() const;
    double max_value() const;
    double min_value() const;
    double max_abs() const;
    std::ptrdiff_t argmax() const;

    // Cyclic shift by whole cells along one axis (periodic grids).
    GridFunction shifted(int axis, int cells) const;

    bool same_geometry(const GridFunction& other) const;

  private:
    int dim_ = 1;
    int n_ = 0;
    double half_width_ = 0.0;
    bool periodic_ = false;
    std::vector<double> values_;
};

// LSGF1 file format: ASCII header
//   LSGF1 N=<dim> n=<points> L=<halfwidth> periodic=<0|1>
// followed by n^N little-endian 8-byte IEEE floats in row-major order.
void write_lsgf(const GridFunction& u, const std::string& path);
GridFunction read_lsgf(const std::string& path);

} // namespace logschrod
