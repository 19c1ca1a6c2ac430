// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/moving_planes.hpp"

#include <algorithm>
#include <cmath>

#include "logschrod/io.hpp"
#include "logschrod/quadrule.hpp"

namespace logschrod {

namespace {

double dot_dim(const Direction& e, const Point& x, int dim) {
    double acc = 0.0;
    for (int d = 0; d < dim; ++d) acc += e[static_cast<size_t>(d)] * x[static_cast<size_t>(d)];
    return acc;
}

} // namespace

ReflectionSpec ReflectionSpec::make(std::span<const double> direction, double lambda) {
    if (direction.empty() || direction.size() > 3)
        throw DomainError("ReflectionSpec: direction must have 1..3 components");
    double norm2 = 0.0;
    for (double c : direction) norm2 += c * c;
    if (!(norm2 > 0.0)) throw DomainError("ReflectionSpec: zero direction");
    const double norm = std::sqrt(norm2);
    ReflectionSpec spec;
    spec.e = {0.0, 0.0, 0.0};
    for (size_t i = 0; i < direction.size(); ++i) spec.e[i] = direction[i] / norm;
    spec.lambda = lambda;
    return spec;
}

Point ReflectionSpec::reflect(const Point& x, int dim) const {
    const double shift = 2.0 * (lambda - dot_dim(e, x, dim));
    Point y = x;
    for (int d = 0; d < dim; ++d) y[static_cast<size_t>(d)] += shift * e[static_cast<size_t>(d)];
    return y;
}

int ReflectionSpec::axis(int dim) const {
    for (int d = 0; d < dim; ++d) {
        if (std::abs(std::abs(e[static_cast<size_t>(d)]) - 1.0) < 1e-12) {
            bool pure = true;
            for (int o = 0; o < dim; ++o)
                if (o != d && std::abs(e[static_cast<size_t>(o)]) > 1e-12) pure = false;
            if (pure) return d;
        }
    }
    return -1;
}

namespace {

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

// Mirror index of i about the plane when 2 lambda lands on the index lattice;
// -1 when not exactly representable.
int mirror_index_or_neg(const GridFunction& u, double lambda, int i) {
    const double h = u.spacing();
    const double two_lambda_idx = 2.0 * (lambda + u.half_width()) / h;
    const double rounded = std::round(two_lambda_idx);
    if (std::abs(two_lambda_idx - rounded) > 1e-9) return -1;
    const long long j = static_cast<long long>(rounded) - i;
    const int n = u.points_per_axis();
    if (u.periodic()) return wrap(static_cast<int>(((j % n) + n) % n), n);
    if (j < 0 || j >= n) return -2; // off the box; zero extension applies
    return static_cast<int>(j);
}

} // namespace

GridFunction reflect_grid(const GridFunction& u, const ReflectionSpec& spec, Exec exec) {
    GridFunction out(u.dim(), u.points_per_axis(), u.half_width(), u.periodic());
    const int dim = u.dim();
    const int axis = spec.axis(dim);
    auto src = u.values();
    auto dst = out.values();

    if (axis >= 0) {
        // Axis-aligned plane: try the exact sample permutation. The physical
        // plane coordinate carries the direction's sign.
        const double plane = spec.lambda * spec.e[static_cast<size_t>(axis)];
        const int probe = mirror_index_or_neg(u, plane, 0);
        if (probe != -1) {
            std::array<int, 3> idx{};
            for (std::ptrdiff_t flat = 0; flat < u.size(); ++flat) {
                u.unflatten(flat, std::span<int>(idx.data(), static_cast<size_t>(dim)));
                const int j = mirror_index_or_neg(u, plane, idx[static_cast<size_t>(axis)]);
                if (j == -2) {
                    dst[static_cast<size_t>(flat)] = 0.0;
                    continue;
                }
                idx[static_cast<size_t>(axis)] = j;
                dst[static_cast<size_t>(flat)] =
                    src[static_cast<size_t>(u.flat_index(std::span<const int>(
                        idx.data(), static_cast<size_t>(dim))))];
            }
            return out;
        }
    }
    par::for_each_index(u.size(), exec, [&](std::ptrdiff_t flat) {
        dst[static_cast<size_t>(flat)] = u.value_at(spec.reflect(u.point_at(flat), dim));
    });
    return out;
}

GridFunction omega(const GridFunction& u, const ReflectionSpec& spec, Exec exec) {
    GridFunction w = reflect_grid(u, spec, exec);
    auto wv = w.values();
    auto uv = u.values();
    for (size_t i = 0; i < wv.size(); ++i) wv[i] -= uv[i];
    return w;
}

double omega_min_halfspace(const GridFunction& u, std::span<const double> direction, double mu,
                           Exec exec) {
    const ReflectionSpec spec = ReflectionSpec::make(direction, mu);
    const GridFunction w = omega(u, spec, exec);
    const int dim = u.dim();
    auto wv = w.values();
    auto [value, at] = par::indexed_min(u.size(), exec, [&](std::ptrdiff_t flat) {
        const Point p = u.point_at(flat);
        const double side = dot_dim(spec.e, p, dim) - mu;
        if (side >= -1e-12) return 0.0; // outside the open half-space
        return std::min(0.0, wv[static_cast<size_t>(flat)]);
    });
    (void)at;
    return value;
}

double lambda0(const GridFunction& u, std::span<const double> direction, double tol) {
    if (!u.all_finite()) throw DataError("lambda0: non-finite grid values");
    const double range = u.max_value() - u.min_value();
    if (range <= 1e-13 * (1.0 + u.max_abs()))
        throw DegenerateInputError("lambda0: constant field has no critical plane");

    const ReflectionSpec probe = ReflectionSpec::make(direction, 0.0);
    const int dim = u.dim();
    // Plane offsets where the field still has support to compare.
    double lo = 0.0, hi = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double c = std::abs(probe.e[static_cast<size_t>(d)]) * u.half_width();
        lo -= c;
        hi += c;
    }
    const double h = u.spacing();
    auto passes = [&](double mu) { return omega_min_halfspace(u, direction, mu) >= -tol; };

    // Coarse march from the left, then bisect the first failing cell to h/16.
    double last_pass = lo;
    bool any_pass = false;
    double fail = hi;
    bool any_fail = false;
    for (double mu = lo + 0.5 * h;; mu += h) {
        if (mu >= hi) break;
        if (passes(mu)) {
            if (!any_fail) {
                last_pass = mu;
                any_pass = true;
            }
        } else if (!any_fail) {
            fail = mu;
            any_fail = true;
            break;
        }
    }
    if (!any_pass) throw DegenerateInputError("lambda0: no passing plane on the ladder");
    if (!any_fail) return last_pass;
    double a = last_pass, b = fail;
    while (b - a > h / 16.0) {
        const double mid = 0.5 * (a + b);
        if (passes(mid))
            a = mid;
        else
            b = mid;
    }
    return a;
}

Point refined_argmax(const GridFunction& u) {
    const std::ptrdiff_t flat = u.argmax();
    const int dim = u.dim();
    const int n = u.points_per_axis();
    std::array<int, 3> idx{};
    u.unflatten(flat, std::span<int>(idx.data(), static_cast<size_t>(dim)));
    Point center = u.point_at(flat);
    const double h = u.spacing();
    for (int d = 0; d < dim; ++d) {
        auto neighbor = [&](int off) {
            std::array<int, 3> j = idx;
            int i = j[static_cast<size_t>(d)] + off;
            if (u.periodic())
                i = wrap(i, n);
            else
                i = std::clamp(i, 0, n - 1);
            j[static_cast<size_t>(d)] = i;
            return u.at(std::span<const int>(j.data(), static_cast<size_t>(dim)));
        };
        const double fm = neighbor(-1), f0 = neighbor(0), fp = neighbor(1);
        const double denom = fm - 2.0 * f0 + fp;
        if (std::abs(denom) > 1e-300) {
            double shift = 0.5 * (fm - fp) / denom;
            shift = std::clamp(shift, -0.5, 0.5);
            center[static_cast<size_t>(d)] += shift * h;
        }
    }
    return center;
}

namespace {

// Largest |u - u o reflection| over the grid for a center-plane reflection.
double reflection_asymmetry(const GridFunction& u, const Direction& e, double lambda) {
    ReflectionSpec spec;
    spec.e = e;
    spec.lambda = lambda;
    const GridFunction w = omega(u, spec);
    return w.max_abs();
}

} // namespace

SymmetryReport symmetry_report(const GridFunction& u, std::span<const Direction> directions) {
    if (directions.empty()) throw DomainError("symmetry_report: no directions given");
    const int dim = u.dim();
    const double h = u.spacing();
    const double tol = 1e-8 * std::max(1.0, u.max_abs());

    SymmetryReport report;
    for (const Direction& e : directions) {
        std::array<double, 3> dir{e[0], e[1], e[2]};
        const double l0 =
            lambda0(u, std::span<const double>(dir.data(), static_cast<size_t>(dim)), tol);
        report.lambda0_per_direction.emplace_back(e, l0);
    }

    // Least-squares intersection of the critical planes: minimize
    // sum_i (c . e_i - lambda_i)^2.
    double ata[3][3] = {{0}};
    double atb[3] = {0, 0, 0};
    for (const auto& [e, l0] : report.lambda0_per_direction) {
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c)
                ata[r][c] += e[static_cast<size_t>(r)] * e[static_cast<size_t>(c)];
            atb[r] += e[static_cast<size_t>(r)] * l0;
        }
    }
    Point plane_center{0.0, 0.0, 0.0};
    {
        // Gaussian elimination on the (dim x dim) normal system.
        double A[3][4];
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) A[r][c] = ata[r][c];
            A[r][dim] = atb[r];
        }
        for (int col = 0; col < dim; ++col) {
            int piv = col;
            for (int r = col + 1; r < dim; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            if (std::abs(A[piv][col]) < 1e-12)
                throw DomainError("symmetry_report: directions do not determine a center");
            std::swap(A[piv], A[col]);
            for (int r = 0; r < dim; ++r) {
                if (r == col) continue;
                const double f = A[r][col] / A[col][col];
                for (int c = col; c <= dim; ++c) A[r][c] -= f * A[col][c];
            }
        }
        for (int r = 0; r < dim; ++r) plane_center[static_cast<size_t>(r)] = A[r][dim] / A[r][r];
    }

    const Point peak = refined_argmax(u);
    double spread = 0.0;
    for (int d = 0; d < dim; ++d)
        spread = std::max(spread, std::abs(plane_center[static_cast<size_t>(d)] -
                                           peak[static_cast<size_t>(d)]));
    if (spread > 4.0 * h)
        throw PreconditionError("symmetry_report: critical planes inconsistent with the peak");
    report.center = peak;

    // Asymmetry against reflections through the detected center.
    double asym = 0.0;
    for (const auto& [e, l0] : report.lambda0_per_direction) {
        (void)l0;
        const double lambda_c = dot_dim(e, report.center, dim);
        asym = std::max(asym, reflection_asymmetry(u, e, lambda_c));
    }
    report.max_asymmetry = asym;

    // Angular-averaged radial profile must be nonincreasing.
    const int nbins = u.points_per_axis() / 2;
    std::vector<double> sum(static_cast<size_t>(nbins), 0.0);
    std::vector<int> count(static_cast<size_t>(nbins), 0);
    for (std::ptrdiff_t flat = 0; flat < u.size(); ++flat) {
        const Point p = u.point_at(flat);
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            const double dd = p[static_cast<size_t>(d)] - report.center[static_cast<size_t>(d)];
            r2 += dd * dd;
        }
        const int bin = static_cast<int>(std::sqrt(r2) / h);
        if (bin >= nbins) continue;
        sum[static_cast<size_t>(bin)] += u.values()[static_cast<size_t>(flat)];
        count[static_cast<size_t>(bin)] += 1;
    }
    double violation = 0.0;
    double prev = 0.0;
    bool have_prev = false;
    for (int b = 0; b < nbins; ++b) {
        if (count[static_cast<size_t>(b)] == 0) continue;
        const double avg = sum[static_cast<size_t>(b)] / count[static_cast<size_t>(b)];
        if (have_prev && avg > prev) violation = std::max(violation, avg - prev);
        prev = avg;
        have_prev = true;
    }
    report.monotonicity_violation = violation;
    report.radial_monotone = violation <= 1e-6 * std::max(1.0, u.max_abs());
    return report;
}

ProbeResult antisym_min_probe(const GridFunction& omega_field, const ReflectionSpec& spec,
                              const QuadratureParams& qp) {
    const int dim = omega_field.dim();
    // Verify the antisymmetry contract on reflectable samples.
    {
        const GridFunction mirrored = reflect_grid(omega_field, spec);
        auto a = mirrored.values();
        auto b = omega_field.values();
        const double scale = std::max(1.0, omega_field.max_abs());
        double worst = 0.0;
        const int axis = spec.axis(dim);
        for (std::ptrdiff_t flat = 0; flat < omega_field.size(); ++flat) {
            // Skip samples whose mirror left the box under zero extension.
            if (!omega_field.periodic() && axis >= 0) {
                const Point p = omega_field.point_at(flat);
                const Point q = spec.reflect(p, dim);
                if (std::abs(q[static_cast<size_t>(axis)]) > omega_field.half_width())
                    continue;
            }
            worst = std::max(worst, std::abs(a[static_cast<size_t>(flat)] +
                                             b[static_cast<size_t>(flat)]));
        }
        if (worst > 1e-10 * scale)
            throw PreconditionError("antisym_min_probe: field is not antisymmetric");
    }

    ProbeResult result;
    // Global minimum over the half-space, interior by the quadrature margin.
    const double margin =
        (qp.eps > 0.0 ? qp.eps : 2.0 * omega_field.spacing()) + omega_field.spacing();
    auto wv = omega_field.values();
    double best = 0.0;
    std::ptrdiff_t at = -1;
    for (std::ptrdiff_t flat = 0; flat < omega_field.size(); ++flat) {
        const Point p = omega_field.point_at(flat);
        const double side = dot_dim(spec.e, p, dim) - spec.lambda;
        if (side >= -1e-12) continue;
        if (!omega_field.periodic()) {
            double m = std::numeric_limits<double>::max();
            for (int d = 0; d < dim; ++d)
                m = std::min(m, omega_field.half_width() - std::abs(p[static_cast<size_t>(d)]));
            if (m < margin) continue;
        }
        if (wv[static_cast<size_t>(flat)] < best) {
            best = wv[static_cast<size_t>(flat)];
            at = flat;
        }
    }
    result.omega_min = best;
    if (at < 0 || !(best < -1e-12 * std::max(1.0, omega_field.max_abs()))) {
        result.admissible = false;
        result.value = 0.0;
        return result;
    }
    result.admissible = true;
    result.x0 = omega_field.point_at(at);
    const KernelSpec spec_n = KernelSpec::make(dim);
    result.value = apply_log_pointwise(omega_field, result.x0, spec_n, qp);
    return result;
}

DecayProbe decay_bound_check(const Point& x0, double lambda, const KernelSpec& spec,
                             int nodes_per_shell) {
    const int N = spec.dim;
    double r0 = 0.0;
    for (int d = 0; d < N; ++d) r0 += x0[static_cast<size_t>(d)] * x0[static_cast<size_t>(d)];
    r0 = std::sqrt(r0);
    const double d_plane = lambda - x0[0]; // direction e1 by convention
    if (!(d_plane > 0.0))
        throw PreconditionError("decay_bound_check: x0 must lie left of the plane");
    if (!(r0 >= lambda))
        throw PreconditionError("decay_bound_check: requires |x0| >= lambda");

    // Kernel mass of the reflected half-space {w_1 > d} seen from x0, reduced
    // to a radial integral: a sphere of radius r >= d intersects the
    // half-space in a cap of (N-1)-measure 2 arccos(d/r) r (N=2),
    // 2 pi r (r - d) (N=3); for N=1 the slab weight is 1.
    AdaptiveOptions opt;
    opt.panel_points = std::clamp(nodes_per_shell, 5, 64);
    auto g = [&](double r) { return spec.kappa(r) * std::pow(r, -N); };
    double lhs = 0.0;
    const double upper = d_plane + 80.0;
    if (N == 1) {
        lhs = integrate_adaptive(g, d_plane, upper, opt);
    } else if (N == 2) {
        lhs = integrate_adaptive(
            [&](double r) { return g(r) * 2.0 * std::acos(std::min(1.0, d_plane / r)) * r; },
            d_plane, upper, opt);
    } else if (N == 3) {
        lhs = integrate_adaptive(
            [&](double r) { return g(r) * 2.0 * 3.14159265358979323846 * r * (r - d_plane); },
            d_plane, upper, opt);
    } else {
        throw DomainError("decay_bound_check: dimension must be 1, 2 or 3");
    }

    // Explicit constant from the ball construction with the conservative
    // large-argument kernel floor sqrt(pi/2) (1 - 0.05) for arguments >= 10.
    const double c_inf = std::sqrt(0.5 * 3.14159265358979323846) * 0.95;
    if (4.0 * r0 < 10.0)
        throw PreconditionError("decay_bound_check: |x0| too small for the kernel floor");
    const double C = c_inf * unit_ball_volume(N) * std::pow(2.0, -1.5 * N);

    DecayProbe probe;
    probe.x0 = x0;
    probe.lambda = lambda;
    probe.lhs_integral = lhs;
    probe.constant_C = C;
    probe.rhs_bound = C * std::pow(r0, -0.5 * (1.0 + N)) * std::exp(-4.0 * r0);
    probe.satisfied = lhs >= probe.rhs_bound && lhs > 0.0;
    return probe;
}

namespace {

// C-infinity bump supported on |t| < 1, normalized to 1 at t = 0.
inline double compact_bump(double t2) {
    if (t2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t2));
}

} // namespace

GridFunction random_antisym_field(int dim, int n, double half_width,
                                  const ReflectionSpec& spec, uint64_t seed) {
    Rng rng(seed);
    struct Bump {
        Point c;
        double w;
        double a;
    };
    const int count = 2 + static_cast<int>(rng.next_u64() % 3);
    std::vector<Bump> bumps;
    bool any_negative = false;
    for (int k = 0; k < count; ++k) {
        Bump b{};
        b.w = rng.uniform(0.5, 1.2);
        // Support strictly inside the box, inside the half-space, and disjoint
        // from the other bumps so a negative bump keeps its strict minimum.
        bool placed = false;
        for (int attempt = 0; attempt < 4000 && !placed; ++attempt) {
            for (int d = 0; d < dim; ++d)
                b.c[static_cast<size_t>(d)] =
                    rng.uniform(-half_width + b.w + 1.0, half_width - b.w - 1.0);
            double ce = 0.0;
            for (int d = 0; d < dim; ++d)
                ce += spec.e[static_cast<size_t>(d)] * b.c[static_cast<size_t>(d)];
            if (ce > spec.lambda - b.w - 0.5) continue;
            placed = true;
            for (const Bump& other : bumps) {
                double dist2 = 0.0;
                for (int d = 0; d < dim; ++d) {
                    const double dd =
                        b.c[static_cast<size_t>(d)] - other.c[static_cast<size_t>(d)];
                    dist2 += dd * dd;
                }
                if (dist2 < (b.w + other.w + 0.1) * (b.w + other.w + 0.1)) placed = false;
            }
        }
        if (!placed) continue;
        const double mag = rng.uniform(0.3, 1.0);
        const bool negative = (rng.next_u64() & 1) != 0;
        b.a = negative ? -mag : mag;
        any_negative = any_negative || negative;
        bumps.push_back(b);
    }
    if (bumps.empty()) {
        Bump b{};
        b.w = 0.8;
        b.c = {spec.lambda - 2.0, 0.0, 0.0};
        b.a = -0.7;
        bumps.push_back(b);
        any_negative = true;
    }
    if (!any_negative) bumps.front().a = -bumps.front().a;

    auto phi = [&](const Point& x) {
        double acc = 0.0;
        for (const auto& b : bumps) {
            double t2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double dd = (x[static_cast<size_t>(d)] - b.c[static_cast<size_t>(d)]) / b.w;
                t2 += dd * dd;
            }
            acc += b.a * compact_bump(t2);
        }
        return acc;
    };
    return GridFunction::sample(dim, n, half_width, false, [&](const Point& x) {
        return phi(x) - phi(spec.reflect(x, dim));
    });
}

} // namespace logschrod
