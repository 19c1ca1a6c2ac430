// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
//
// Timing harness comparing the serial reference kernels against the OpenMP
// paths. Prints one CSV row per kernel.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "logschrod/grid.hpp"
#include "logschrod/moving_planes.hpp"
#include "logschrod/par.hpp"
#include "logschrod/quadrature.hpp"
#include "logschrod/spectral.hpp"

namespace ls = logschrod;

namespace {

template <class F>
double time_ms(F&& fn, int repeats) {
    using clock = std::chrono::steady_clock;
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = clock::now();
        fn();
        const auto t1 = clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* kernel, std::ptrdiff_t size, double serial_ms, double parallel_ms,
            double max_rel_diff) {
    std::printf("%s,%td,%.3f,%.3f,%.2f,%.3g\n", kernel, size, serial_ms, parallel_ms,
                serial_ms / parallel_ms, max_rel_diff);
}

double rel_diff(double a, double b) {
    const double scale = std::max({1e-300, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    const int repeats = quick ? 1 : 3;

    std::printf("kernel,size,serial_ms,parallel_ms,speedup,max_rel_diff\n");

    // reductions
    {
        const std::ptrdiff_t n = quick ? (1 << 20) : (1 << 24);
        std::vector<double> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            a[static_cast<size_t>(i)] = std::sin(0.001 * i);
            b[static_cast<size_t>(i)] = std::cos(0.001 * i);
        }
        double rs = 0, rp = 0;
        const double ts = time_ms([&] { rs = ls::par::dot(a, b, ls::Exec::serial); }, repeats);
        const double tp = time_ms([&] { rp = ls::par::dot(a, b, ls::Exec::parallel); }, repeats);
        report("dot", n, ts, tp, rel_diff(rs, rp));

        const double ms = time_ms([&] { rs = ls::par::max_abs(a, ls::Exec::serial); }, repeats);
        const double mp = time_ms([&] { rp = ls::par::max_abs(a, ls::Exec::parallel); }, repeats);
        report("max_abs", n, ms, mp, rel_diff(rs, rp));
    }

    // pointwise symbol multiply (via the spectral apply on a periodic grid)
    {
        const int n = quick ? 128 : 512;
        auto u = ls::GridFunction::sample(2, n, 10.0, true, [](const ls::Point& x) {
            return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
        });
        ls::GridFunction outs, outp;
        const double ts =
            time_ms([&] { outs = ls::apply_symbol_log(u, ls::Exec::serial); }, repeats);
        const double tp =
            time_ms([&] { outp = ls::apply_symbol_log(u, ls::Exec::parallel); }, repeats);
        double diff = 0.0;
        for (std::ptrdiff_t i = 0; i < outs.size(); ++i)
            diff = std::max(diff, rel_diff(outs.values()[static_cast<size_t>(i)],
                                           outp.values()[static_cast<size_t>(i)]));
        report("apply_symbol_log", u.size(), ts, tp, diff);
    }

    // single-point singular-integral reduction (lattice annulus)
    {
        const int n = quick ? 128 : 256;
        const double L = 10.0;
        auto u = ls::GridFunction::sample(2, n, L, true, [](const ls::Point& x) {
            return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
        });
        auto op = ls::SingularOperator::make_log(u, ls::KernelSpec::make(2), {});
        const ls::Point x{0.25, -0.125, 0.0};
        double vs = 0, vp = 0;
        const double ts = time_ms([&] { vs = op.at(u, x, ls::Exec::serial); }, repeats);
        const double tp = time_ms([&] { vp = op.at(u, x, ls::Exec::parallel); }, repeats);
        report("quad_point", u.size(), ts, tp, rel_diff(vs, vp));
    }

    // quadrature sweep over every grid point
    {
        const int n = quick ? 32 : 64;
        const double L = 6.0;
        auto u = ls::GridFunction::sample(2, n, L, true, [](const ls::Point& x) {
            return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
        });
        ls::QuadratureParams qp;
        qp.R = 12.0;
        qp.tol = 1e-4;
        auto op = ls::SingularOperator::make_log(u, ls::KernelSpec::make(2), qp);
        ls::GridFunction outs, outp;
        const double ts = time_ms([&] { outs = op.sweep(u, ls::Exec::serial); }, 1);
        const double tp = time_ms([&] { outp = op.sweep(u, ls::Exec::parallel); }, 1);
        double diff = 0.0;
        for (std::ptrdiff_t i = 0; i < outs.size(); ++i)
            diff = std::max(diff, rel_diff(outs.values()[static_cast<size_t>(i)],
                                           outp.values()[static_cast<size_t>(i)]));
        report("quad_sweep", u.size(), ts, tp, diff);
    }

    // omega minimum over a half-space (reflection + reduction)
    {
        const int n = quick ? 256 : 512;
        auto u = ls::GridFunction::sample(2, n, 10.0, false, [](const ls::Point& x) {
            return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
        });
        const std::vector<double> dir{1.0, 0.0};
        double vs = 0, vp = 0;
        const double ts = time_ms(
            [&] { vs = ls::omega_min_halfspace(u, dir, -0.5, ls::Exec::serial); }, repeats);
        const double tp = time_ms(
            [&] { vp = ls::omega_min_halfspace(u, dir, -0.5, ls::Exec::parallel); }, repeats);
        report("omega_min", u.size(), ts, tp, rel_diff(vs, vp));
    }

    return 0;
}
