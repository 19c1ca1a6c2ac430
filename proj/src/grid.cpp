// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/grid.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace logschrod {

static_assert(std::endian::native == std::endian::little,
              "LSGF1 writer assumes a little-endian host");

Point make_point(std::span<const double> coords) {
    Point p{0.0, 0.0, 0.0};
    for (size_t i = 0; i < coords.size() && i < 3; ++i) p[i] = coords[i];
    return p;
}

GridFunction::GridFunction(int dim, int n, double half_width, bool periodic)
    : dim_(dim), n_(n), half_width_(half_width), periodic_(periodic) {
    if (dim < 1 || dim > 3) throw DomainError("GridFunction: dimension must be 1, 2 or 3");
    if (n < 4 || n % 2 != 0) throw DomainError("GridFunction: n must be even and >= 4");
    if (!(half_width > 0.0)) throw DomainError("GridFunction: half width must be positive");
    std::ptrdiff_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    values_.assign(static_cast<size_t>(total), 0.0);
}

GridFunction GridFunction::sample(int dim, int n, double half_width, bool periodic,
                                  const std::function<double(const Point&)>& f) {
    GridFunction u(dim, n, half_width, periodic);
    auto vals = u.values();
    par::for_each_index(u.size(), Exec::parallel, [&](std::ptrdiff_t flat) {
        vals[static_cast<size_t>(flat)] = f(u.point_at(flat));
    });
    return u;
}

Point GridFunction::point_at(std::ptrdiff_t flat) const {
    Point p{0.0, 0.0, 0.0};
    for (int d = dim_ - 1; d >= 0; --d) {
        p[static_cast<size_t>(d)] = coord(static_cast<int>(flat % n_));
        flat /= n_;
    }
    return p;
}

std::ptrdiff_t GridFunction::flat_index(std::span<const int> idx) const {
    std::ptrdiff_t flat = 0;
    for (int d = 0; d < dim_; ++d) flat = flat * n_ + idx[static_cast<size_t>(d)];
    return flat;
}

void GridFunction::unflatten(std::ptrdiff_t flat, std::span<int> idx) const {
    for (int d = dim_ - 1; d >= 0; --d) {
        idx[static_cast<size_t>(d)] = static_cast<int>(flat % n_);
        flat /= n_;
    }
}

namespace {

// Lagrange cubic weights on the stencil {-1, 0, 1, 2} at fraction t in [0,1).
inline void cubic_weights(double t, double w[4]) {
    w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
    w[1] = (t * t - 1.0) * (t - 2.0) * 0.5;
    w[2] = -t * (t + 1.0) * (t - 2.0) * 0.5;
    w[3] = t * (t * t - 1.0) / 6.0;
}

inline int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

} // namespace

bool GridFunction::on_grid(const Point& x, std::span<std::ptrdiff_t> idx_out) const {
    const double h = spacing();
    for (int d = 0; d < dim_; ++d) {
        const double s = (x[static_cast<size_t>(d)] + half_width_) / h;
        const double r = std::round(s);
        if (std::abs(s - r) > 1e-9) return false;
        std::ptrdiff_t i = static_cast<std::ptrdiff_t>(r);
        if (periodic_) {
            i %= n_;
            if (i < 0) i += n_;
        } else if (i < 0 || i >= n_) {
            return false;
        }
        idx_out[static_cast<size_t>(d)] = i;
    }
    return true;
}

double GridFunction::value_at(const Point& x) const {
    std::array<std::ptrdiff_t, 3> node{};
    if (on_grid(x, node)) {
        std::ptrdiff_t flat = 0;
        for (int d = 0; d < dim_; ++d) flat = flat * n_ + node[static_cast<size_t>(d)];
        return values_[static_cast<size_t>(flat)];
    }
    const double h = spacing();
    int base[3] = {0, 0, 0};
    double w[3][4];
    for (int d = 0; d < dim_; ++d) {
        const double s = (x[static_cast<size_t>(d)] + half_width_) / h;
        const double fl = std::floor(s);
        base[d] = static_cast<int>(fl);
        cubic_weights(s - fl, w[d]);
    }
    const int taps = 1 << (2 * dim_); // 4^dim
    double acc = 0.0;
    for (int tap = 0; tap < taps; ++tap) {
        double weight = 1.0;
        std::ptrdiff_t flat = 0;
        bool outside = false;
        int rem = tap;
        for (int d = 0; d < dim_; ++d) {
            const int off = rem & 3;
            rem >>= 2;
            weight *= w[d][off];
            int i = base[d] + off - 1;
            if (periodic_) {
                i = wrap_index(i, n_);
            } else if (i < 0 || i >= n_) {
                outside = true;
                break;
            }
            flat = flat * n_ + i;
        }
        if (!outside && weight != 0.0) acc += weight * values_[static_cast<size_t>(flat)];
    }
    return acc;
}

bool GridFunction::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double GridFunction::max_value() const {
    return par::max_element(values_, Exec::parallel).first;
}

double GridFunction::min_value() const {
    return par::min_element(values_, Exec::parallel).first;
}

double GridFunction::max_abs() const { return par::max_abs(values_, Exec::parallel); }

std::ptrdiff_t GridFunction::argmax() const {
    return par::max_element(values_, Exec::parallel).second;
}

GridFunction GridFunction::shifted(int axis, int cells) const {
    if (axis < 0 || axis >= dim_) throw DomainError("shifted: bad axis");
    GridFunction out(dim_, n_, half_width_, periodic_);
    auto src = values();
    auto dst = out.values();
    std::array<int, 3> idx{};
    for (std::ptrdiff_t flat = 0; flat < size(); ++flat) {
        unflatten(flat, std::span<int>(idx.data(), static_cast<size_t>(dim_)));
        idx[static_cast<size_t>(axis)] =
            wrap_index(idx[static_cast<size_t>(axis)] + cells, n_);
        dst[static_cast<size_t>(flat_index(std::span<const int>(idx.data(), static_cast<size_t>(dim_))))] =
            src[static_cast<size_t>(flat)];
    }
    return out;
}

bool GridFunction::same_geometry(const GridFunction& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && half_width_ == other.half_width_ &&
           periodic_ == other.periodic_;
}

void write_lsgf(const GridFunction& u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_lsgf: cannot open " + path);
    std::string header = "LSGF1 N=" + std::to_string(u.dim()) + " n=" +
                         std::to_string(u.points_per_axis()) + " L=";
    {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), u.half_width());
        header.append(buf, res.ptr);
    }
    header += " periodic=" + std::string(u.periodic() ? "1" : "0") + "\n";
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    auto vals = u.values();
    out.write(reinterpret_cast<const char*>(vals.data()),
              static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!out) throw IoError("write_lsgf: write failed for " + path);
}

GridFunction read_lsgf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_lsgf: cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, nf, npf, lf, pf;
    hs >> magic >> nf >> npf >> lf >> pf;
    if (magic != "LSGF1" || nf.rfind("N=", 0) != 0 || npf.rfind("n=", 0) != 0 ||
        lf.rfind("L=", 0) != 0 || pf.rfind("periodic=", 0) != 0)
        throw IoError("read_lsgf: malformed header in " + path);
    const int dim = std::stoi(nf.substr(2));
    const int n = std::stoi(npf.substr(2));
    double L = 0.0;
    {
        const std::string ls = lf.substr(2);
        auto res = std::from_chars(ls.data(), ls.data() + ls.size(), L);
        if (res.ec != std::errc()) throw IoError("read_lsgf: bad L field in " + path);
    }
    const bool periodic = pf.substr(9) == "1";
    GridFunction u(dim, n, L, periodic);
    auto vals = u.values();
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(vals.size() * sizeof(double)))
        throw IoError("read_lsgf: truncated payload in " + path);
    return u;
}

} // namespace logschrod
