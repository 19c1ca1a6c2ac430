// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "logschrod/quadrule.hpp"

namespace logschrod {

namespace {

// Radial kernel values on a log-spaced table; cubic interpolation of
// log(kernel) keeps relative error ~1e-11 across the exponential range.
class RadialTable {
  public:
    RadialTable() = default;
    RadialTable(std::function<double(double)> kernel, double r_lo, double r_hi, int count) {
        t0_ = std::log(r_lo);
        dt_ = (std::log(r_hi) - t0_) / (count - 1);
        logk_.resize(static_cast<size_t>(count));
        for (int i = 0; i < count; ++i)
            logk_[static_cast<size_t>(i)] = std::log(kernel(std::exp(t0_ + i * dt_)));
    }

    double operator()(double r) const {
        const double t = (std::log(r) - t0_) / dt_;
        const double fl = std::floor(t);
        int base = static_cast<int>(fl) - 1;
        double u = t - fl;
        const int count = static_cast<int>(logk_.size());
        if (base < 0) { base = 0; u = t - 1.0; }
        if (base > count - 4) { base = count - 4; u = t - (base + 1); }
        const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
        const double w1 = (u * u - 1.0) * (u - 2.0) * 0.5;
        const double w2 = -u * (u + 1.0) * (u - 2.0) * 0.5;
        const double w3 = u * (u * u - 1.0) / 6.0;
        const size_t b = static_cast<size_t>(base);
        return std::exp(w0 * logk_[b] + w1 * logk_[b + 1] + w2 * logk_[b + 2] +
                        w3 * logk_[b + 3]);
    }

  private:
    double t0_ = 0.0;
    double dt_ = 1.0;
    std::vector<double> logk_;
};

// Per-axis interpolation taps at a fixed fractional offset.
struct AxisTaps {
    int count = 1;     // 1 (on a node) or 4
    int base = 0;      // leftmost tap index before lattice displacement
    double w[4] = {1.0, 0.0, 0.0, 0.0};
};

} // namespace

struct SingularOperator::Impl {
    // geometry
    int dim = 1;
    int n = 0;
    double L = 0.0;
    double h = 0.0;
    bool periodic = false;

    // kernel data: weight(r) = kernel(r) / r^{N + 2s}, s = 0 for the log case
    bool fractional = false;
    double s = 0.0;
    double coefficient = 0.0; // c_N, or -c_{N,s} for the fractional case
    std::function<double(double)> kernel;

    QuadratureParams qp;
    double eps_eff = 0.0;
    int K = 0; // lattice offsets span [-K, K]^dim

    RadialTable table;
    double lattice_second_moment = 0.0; // S: h^N sum |z|^{2-N-2s} kernel(|z|)
    double radial_second_moment = 0.0;  // J: continuum counterpart over |z| <= R
    double tail_weight = 0.0;           // integral of the weight over |z| > R
};

namespace {

// Enumerate the offset annulus row by row: rows run over the leading dim-1
// axes, the innermost loop over the last axis. Returns sum of row_body over
// rows; row_body(row_index) must itself loop the last axis.
template <class RowBody>
double annulus_row_sum(int dim, int K, Exec exec, RowBody&& row_body) {
    const std::ptrdiff_t side = 2 * static_cast<std::ptrdiff_t>(K) + 1;
    std::ptrdiff_t rows = 1;
    for (int d = 0; d + 1 < dim; ++d) rows *= side;
    return par::indexed_sum(rows, exec, row_body);
}

void decode_row(std::ptrdiff_t row, int dim, int K, int dz[3]) {
    const std::ptrdiff_t side = 2 * static_cast<std::ptrdiff_t>(K) + 1;
    for (int d = dim - 2; d >= 0; --d) {
        dz[d] = static_cast<int>(row % side) - K;
        row /= side;
    }
}

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

double boundary_margin(const GridFunction& u, const Point& x) {
    double margin = std::numeric_limits<double>::max();
    for (int d = 0; d < u.dim(); ++d)
        margin = std::min(margin, u.half_width() - std::abs(x[static_cast<size_t>(d)]));
    return margin;
}

} // namespace

SingularOperator::SingularOperator() : impl_(new Impl) {}
SingularOperator::~SingularOperator() = default;
SingularOperator::SingularOperator(SingularOperator&&) noexcept = default;
SingularOperator& SingularOperator::operator=(SingularOperator&&) noexcept = default;

double SingularOperator::eps() const { return impl_->eps_eff; }
double SingularOperator::truncation_radius() const { return impl_->qp.R; }

namespace {

void finish_build(SingularOperator::Impl& im) {
    if (!(im.qp.R > 0.0)) throw DomainError("QuadratureParams: R must be positive");
    im.eps_eff = im.qp.eps > 0.0 ? im.qp.eps : 2.0 * im.h;
    if (!(im.eps_eff < im.qp.R)) throw DomainError("QuadratureParams: need eps < R");
    if (!(im.qp.tol > 0.0)) throw DomainError("QuadratureParams: tol must be positive");
    im.K = static_cast<int>(std::floor(im.qp.R / im.h));
    if (im.K < 1) throw DomainError("QuadratureParams: R below one grid spacing");

    im.table = RadialTable(im.kernel, std::min(0.45 * im.h, 0.45 * im.eps_eff),
                           im.qp.R + im.h + 1.0, 4096);

    // J: continuum second moment. Substituting r = rho^{1/(2-2s)} removes the
    // endpoint singularity of r^{1-2s} kernel(r) for all s in [0, 1).
    const double beta = 1.0 / (2.0 - 2.0 * im.s);
    const double omega = unit_sphere_area(im.dim);
    AdaptiveOptions opt;
    opt.panel_points = std::clamp(im.qp.nodes_per_shell, 5, 64);
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-12;
    const auto& kern = im.kernel;
    im.radial_second_moment =
        omega * beta *
        integrate_adaptive([&](double rho) { return kern(std::pow(rho, beta)); }, 0.0,
                           std::pow(im.qp.R, 2.0 - 2.0 * im.s), opt);

    // Far-field weight beyond R; exponential kernel decay caps the range.
    im.tail_weight =
        omega * integrate_adaptive(
                    [&](double r) { return kern(r) * std::pow(r, -1.0 - 2.0 * im.s); },
                    im.qp.R, im.qp.R + 60.0, opt);
    if (im.tail_weight > im.qp.tol)
        throw DomainError("QuadratureParams: truncation radius too small for tol");

    // S: lattice second moment over the included annulus, with the same
    // tabulated kernel the weights use so the correction cancels exactly.
    const double h = im.h;
    const double eps2 = im.eps_eff * im.eps_eff;
    const double R2 = im.qp.R * im.qp.R;
    const int K = im.K;
    const int dim = im.dim;
    const double power = 2.0 - dim - 2.0 * im.s;
    const auto& table = im.table;
    im.lattice_second_moment =
        std::pow(h, dim) *
        annulus_row_sum(dim, K, Exec::parallel, [&](std::ptrdiff_t row) {
            int dz[3] = {0, 0, 0};
            decode_row(row, dim, K, dz);
            double part2 = 0.0;
            for (int d = 0; d + 1 < dim; ++d) part2 += static_cast<double>(dz[d]) * dz[d];
            part2 *= h * h;
            if (part2 > R2) return 0.0;
            double acc = 0.0;
            for (int last = -K; last <= K; ++last) {
                const double r2 = part2 + (h * last) * (h * last);
                if (r2 < eps2 || r2 > R2) continue;
                const double r = std::sqrt(r2);
                acc += table(r) * std::pow(r, power);
            }
            return acc;
        });
}

} // namespace

SingularOperator SingularOperator::make_log(const GridFunction& geometry,
                                            const KernelSpec& spec,
                                            const QuadratureParams& qp) {
    if (geometry.dim() != spec.dim) throw DomainError("make_log: dimension mismatch");
    SingularOperator op;
    auto& im = *op.impl_;
    im.dim = geometry.dim();
    im.n = geometry.points_per_axis();
    im.L = geometry.half_width();
    im.h = geometry.spacing();
    im.periodic = geometry.periodic();
    im.fractional = false;
    im.s = 0.0;
    im.coefficient = spec.c_n;
    im.kernel = [spec](double r) { return spec.kappa(r); };
    im.qp = qp;
    finish_build(im);
    return op;
}

SingularOperator SingularOperator::make_fractional(const GridFunction& geometry,
                                                   const FractionalSpec& spec,
                                                   const QuadratureParams& qp) {
    if (geometry.dim() != spec.dim) throw DomainError("make_fractional: dimension mismatch");
    SingularOperator op;
    auto& im = *op.impl_;
    im.dim = geometry.dim();
    im.n = geometry.points_per_axis();
    im.L = geometry.half_width();
    im.h = geometry.spacing();
    im.periodic = geometry.periodic();
    im.fractional = true;
    im.s = spec.s;
    im.coefficient = -spec.c_ns; // kernel integral oriented to match the symbol
    im.kernel = [spec](double r) { return spec.varpi(r); };
    im.qp = qp;
    finish_build(im);
    return op;
}

namespace {

struct EvalContext {
    const SingularOperator::Impl* im = nullptr;
    const double* values = nullptr;
    bool aligned = false; // evaluation point on a lattice node
    int node[3] = {0, 0, 0};
    AxisTaps taps[3];
    double ux = 0.0;
};

// u(x + h dz) for an aligned evaluation point; zero extension off the box.
inline double sample_aligned(const EvalContext& ctx, const int dz[3]) {
    const auto& im = *ctx.im;
    std::ptrdiff_t flat = 0;
    for (int d = 0; d < im.dim; ++d) {
        int i = ctx.node[d] + dz[d];
        if (im.periodic) {
            i = wrap(i, im.n);
        } else if (i < 0 || i >= im.n) {
            return 0.0;
        }
        flat = flat * im.n + i;
    }
    return ctx.values[flat];
}

// Cubic gather at x + h dz, reusing the per-axis weights (the fractional
// offset is identical for every lattice displacement).
inline double sample_interp(const EvalContext& ctx, const int dz[3]) {
    const auto& im = *ctx.im;
    const int dim = im.dim;
    int counts[3] = {1, 1, 1};
    int starts[3] = {0, 0, 0};
    for (int d = 0; d < dim; ++d) {
        counts[d] = ctx.taps[d].count;
        starts[d] = ctx.taps[d].base + dz[d];
    }
    double acc = 0.0;
    const int total = counts[0] * (dim > 1 ? counts[1] : 1) * (dim > 2 ? counts[2] : 1);
    for (int t = 0; t < total; ++t) {
        int rem = t;
        double weight = 1.0;
        std::ptrdiff_t flat = 0;
        bool outside = false;
        for (int d = 0; d < dim; ++d) {
            const int c = counts[d];
            const int o = rem % c;
            rem /= c;
            weight *= ctx.taps[d].w[o];
            int i = starts[d] + o;
            if (im.periodic) {
                i = wrap(i, im.n);
            } else if (i < 0 || i >= im.n) {
                outside = true;
                break;
            }
            flat = flat * im.n + i;
        }
        if (!outside) acc += weight * ctx.values[flat];
    }
    return acc;
}

inline double sample(const EvalContext& ctx, const int dz[3]) {
    return ctx.aligned ? sample_aligned(ctx, dz) : sample_interp(ctx, dz);
}

double evaluate_core(const SingularOperator::Impl& im, const GridFunction& u, const Point& x,
                     Exec exec) {
    EvalContext ctx;
    ctx.im = &im;
    ctx.values = u.values().data();

    // Locate x on the lattice; off-node axes get fixed cubic weights.
    ctx.aligned = true;
    for (int d = 0; d < im.dim; ++d) {
        const double sidx = (x[static_cast<size_t>(d)] + im.L) / im.h;
        const double rounded = std::round(sidx);
        if (std::abs(sidx - rounded) < 1e-9) {
            int i = static_cast<int>(rounded);
            if (im.periodic) i = wrap(i, im.n);
            ctx.node[d] = i;
            ctx.taps[d].count = 1;
            ctx.taps[d].base = i;
            ctx.taps[d].w[0] = 1.0;
        } else {
            ctx.aligned = false;
            const double fl = std::floor(sidx);
            const double t = sidx - fl;
            ctx.taps[d].count = 4;
            ctx.taps[d].base = static_cast<int>(fl) - 1;
            ctx.taps[d].w[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
            ctx.taps[d].w[1] = (t * t - 1.0) * (t - 2.0) * 0.5;
            ctx.taps[d].w[2] = -t * (t + 1.0) * (t - 2.0) * 0.5;
            ctx.taps[d].w[3] = t * (t * t - 1.0) / 6.0;
        }
    }
    const int zero_dz[3] = {0, 0, 0};
    ctx.ux = sample(ctx, zero_dz);
    const double ux = ctx.ux;

    // Centered finite-difference Hessian trace.
    double lap = 0.0;
    for (int d = 0; d < im.dim; ++d) {
        int plus[3] = {0, 0, 0}, minus[3] = {0, 0, 0};
        plus[d] = 1;
        minus[d] = -1;
        lap += (sample(ctx, plus) - 2.0 * ux + sample(ctx, minus)) / (im.h * im.h);
    }

    const double eps2 = im.eps_eff * im.eps_eff;
    const double R2 = im.qp.R * im.qp.R;
    const double h = im.h;
    const int K = im.K;
    const int dim = im.dim;
    const double power = -(dim + 2.0 * im.s);
    const auto& table = im.table;
    const double hN = std::pow(h, dim);

    const double lattice_sum =
        hN * annulus_row_sum(dim, K, exec, [&](std::ptrdiff_t row) {
            int dz[3] = {0, 0, 0};
            decode_row(row, dim, K, dz);
            double part2 = 0.0;
            for (int d = 0; d + 1 < dim; ++d) part2 += static_cast<double>(dz[d]) * dz[d];
            part2 *= h * h;
            if (part2 > R2) return 0.0;
            double acc = 0.0;
            for (int last = -K; last <= K; ++last) {
                const double r2 = part2 + (h * last) * (h * last);
                if (r2 < eps2 || r2 > R2) continue;
                dz[dim - 1] = last;
                const double r = std::sqrt(r2);
                const double w = table(r) * std::pow(r, power);
                acc += (ux - sample(ctx, dz)) * w;
            }
            return acc;
        });

    double bracket = lattice_sum + (lap / (2.0 * dim)) *
                                       (im.lattice_second_moment - im.radial_second_moment);
    if (!im.periodic) bracket += ux * im.tail_weight;

    const double integral_part = im.coefficient * bracket;
    return im.fractional ? ux + integral_part : integral_part;
}

} // namespace

double SingularOperator::at(const GridFunction& u, const Point& x, Exec exec) const {
    const auto& im = *impl_;
    if (u.dim() != im.dim || u.points_per_axis() != im.n || u.half_width() != im.L ||
        u.periodic() != im.periodic)
        throw DomainError("SingularOperator::at: grid geometry mismatch");
    if (!u.all_finite()) throw DataError("SingularOperator::at: non-finite grid values");
    if (!im.periodic && boundary_margin(u, x) < im.eps_eff)
        throw GeometryError("SingularOperator::at: point too close to the box boundary");
    return evaluate_core(im, u, x, exec);
}

GridFunction SingularOperator::sweep(const GridFunction& u, Exec exec) const {
    const auto& im = *impl_;
    if (!im.periodic) throw DomainError("SingularOperator::sweep: periodic geometry required");
    if (u.dim() != im.dim || u.points_per_axis() != im.n || u.half_width() != im.L ||
        u.periodic() != im.periodic)
        throw DomainError("SingularOperator::sweep: grid geometry mismatch");
    if (!u.all_finite()) throw DataError("SingularOperator::sweep: non-finite grid values");
    GridFunction out(im.dim, im.n, im.L, true);
    auto vals = out.values();
    par::for_each_index(u.size(), exec, [&](std::ptrdiff_t flat) {
        vals[static_cast<size_t>(flat)] =
            evaluate_core(im, u, u.point_at(flat), Exec::serial);
    });
    return out;
}

namespace {

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::string cache_key(char kind, const GridFunction& u, double s, const QuadratureParams& qp) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%c|%d|%d|%.17g|%d|%.17g|%.17g|%.17g|%d|%.17g", kind,
                  u.dim(), u.points_per_axis(), u.half_width(), u.periodic() ? 1 : 0, s,
                  qp.eps, qp.R, qp.nodes_per_shell, qp.tol);
    return buf;
}

std::map<std::string, std::shared_ptr<SingularOperator>>& cache() {
    static std::map<std::string, std::shared_ptr<SingularOperator>> c;
    return c;
}

} // namespace

double apply_log_pointwise(const GridFunction& u, const Point& x, const KernelSpec& spec,
                           const QuadratureParams& qp) {
    std::shared_ptr<SingularOperator> op;
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto& slot = cache()[cache_key('l', u, 0.0, qp)];
        if (!slot) slot = std::make_shared<SingularOperator>(
                       SingularOperator::make_log(u, spec, qp));
        op = slot;
    }
    return op->at(u, x);
}

double apply_s_pointwise(const GridFunction& u, const Point& x, const FractionalSpec& spec,
                         const QuadratureParams& qp) {
    std::shared_ptr<SingularOperator> op;
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto& slot = cache()[cache_key('s', u, spec.s, qp)];
        if (!slot) slot = std::make_shared<SingularOperator>(
                       SingularOperator::make_fractional(u, spec, qp));
        op = slot;
    }
    return op->at(u, x);
}

double l0_norm(const GridFunction& u, Exec exec) {
    if (!u.all_finite()) throw DataError("l0_norm: non-finite grid values");
    const int dim = u.dim();
    const double hN = std::pow(u.spacing(), dim);
    auto vals = u.values();
    const double expo = -0.5 * (dim + 1);
    return hN * par::indexed_sum(u.size(), exec, [&](std::ptrdiff_t flat) {
               const Point p = u.point_at(flat);
               double r2 = 0.0;
               for (int d = 0; d < dim; ++d)
                   r2 += p[static_cast<size_t>(d)] * p[static_cast<size_t>(d)];
               const double r = std::sqrt(r2);
               return std::abs(vals[static_cast<size_t>(flat)]) * std::exp(-r) *
                      std::pow(1.0 + r, expo);
           });
}

double l0_tail_bound(const GridFunction& u) {
    const int dim = u.dim();
    const double L = u.half_width();
    const double expo = -0.5 * (dim + 1);
    AdaptiveOptions opt;
    const double tail = integrate_adaptive(
        [&](double r) {
            return std::exp(-r) * std::pow(1.0 + r, expo) * std::pow(r, dim - 1);
        },
        L, L + 60.0, opt);
    return u.max_abs() * unit_sphere_area(dim) * tail;
}

DiniReport dini_check(const GridFunction& u, const Point& x) {
    if (!u.all_finite()) throw DataError("dini_check: non-finite grid values");
    if (boundary_margin(u, x) < 0.0) throw GeometryError("dini_check: x outside the box");
    const double h = u.spacing();
    const double r_max = std::min(1.0, u.half_width());
    int levels = 1;
    while (h * std::pow(2.0, levels) < r_max) ++levels;

    const double ux = u.value_at(x);
    std::vector<double> bin_max(static_cast<size_t>(levels + 1), 0.0);
    const int dim = u.dim();
    for (std::ptrdiff_t flat = 0; flat < u.size(); ++flat) {
        const Point p = u.point_at(flat);
        double d2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            const double dd = p[static_cast<size_t>(d)] - x[static_cast<size_t>(d)];
            d2 += dd * dd;
        }
        const double dist = std::sqrt(d2);
        if (dist <= 0.0 || dist > r_max) continue;
        int level = 0;
        if (dist > h) level = static_cast<int>(std::ceil(std::log2(dist / h)));
        level = std::min(level, levels);
        bin_max[static_cast<size_t>(level)] =
            std::max(bin_max[static_cast<size_t>(level)],
                     std::abs(ux - u.values()[static_cast<size_t>(flat)]));
    }

    DiniReport report;
    double prefix = 0.0;
    for (int j = 0; j <= levels; ++j) {
        prefix = std::max(prefix, bin_max[static_cast<size_t>(j)]);
        report.modulus_samples.emplace_back(h * std::pow(2.0, j), prefix);
    }
    const double ln2 = std::log(2.0);
    for (size_t j = 1; j < report.modulus_samples.size(); ++j)
        report.dini_integral_estimate += 0.5 *
                                         (report.modulus_samples[j - 1].second +
                                          report.modulus_samples[j].second) *
                                         ln2;

    // Heuristic flag: as the radius halves, the modulus should shrink
    // geometrically; log-type moduli have fine-level ratios near 1.
    const double scale = 1.0 + u.max_abs();
    if (report.modulus_samples.front().second <= 1e-14 * scale) {
        report.is_dini = true;
    } else {
        double ratio_sum = 0.0;
        int ratio_count = 0;
        for (size_t j = 0; j + 1 < report.modulus_samples.size() && ratio_count < 3; ++j) {
            const double fine = report.modulus_samples[j].second;
            const double coarse = report.modulus_samples[j + 1].second;
            if (coarse > 0.0) {
                ratio_sum += fine / coarse;
                ++ratio_count;
            }
        }
        report.is_dini = ratio_count == 0 || (ratio_sum / ratio_count) <= 0.85;
    }
    return report;
}

} // namespace logschrod
