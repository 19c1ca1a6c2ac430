// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/quadrule.hpp"

#include <cmath>
#include <stdexcept>

#include "logschrod/errors.hpp"

namespace logschrod {

GaussLegendre::GaussLegendre(int npoints) {
    if (npoints < 2 || npoints > 128) throw DomainError("GaussLegendre: npoints out of range");
    const int n = npoints;
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = -x;
        nodes[static_cast<size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[static_cast<size_t>(i)] = w;
        weights[static_cast<size_t>(n - 1 - i)] = w;
    }
}

namespace {

struct AdaptiveState {
    const std::function<double(double)>* f = nullptr;
    const GaussLegendre* rule = nullptr;
    double abs_tol = 0.0;
    double rel_tol = 0.0;
    double total_length = 0.0;
    int evals = 0;
    int max_evals = 0;
    double magnitude = 0.0; // running scale for the relative test
};

double panel(AdaptiveState& st, double a, double b, double whole, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const double left = st.rule->integrate(*st.f, a, mid);
    const double right = st.rule->integrate(*st.f, mid, b);
    st.evals += 2 * static_cast<int>(st.rule->nodes.size());
    const double refined = left + right;
    const double err = std::abs(refined - whole);
    // Error budget proportional to the panel's share of the interval.
    const double share = std::max(1e-3, (b - a) / st.total_length);
    const double tol = std::max(st.abs_tol, st.rel_tol * st.magnitude) * share;
    if (err <= tol || depth >= max_depth || st.evals >= st.max_evals) return refined;
    return panel(st, a, mid, left, depth + 1, max_depth) +
           panel(st, mid, b, right, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
    if (!(b > a)) return 0.0;
    static thread_local int cached_points = 0;
    static thread_local GaussLegendre* cached_rule = nullptr;
    if (cached_points != opt.panel_points) {
        delete cached_rule;
        cached_rule = new GaussLegendre(opt.panel_points);
        cached_points = opt.panel_points;
    }
    AdaptiveState st;
    st.f = &f;
    st.rule = cached_rule;
    st.abs_tol = opt.abs_tol;
    st.rel_tol = opt.rel_tol;
    st.total_length = b - a;
    st.max_evals = opt.max_evals;
    const double whole = cached_rule->integrate(f, a, b);
    st.evals = opt.panel_points;
    st.magnitude = std::abs(whole);
    return panel(st, a, b, whole, 0, opt.max_depth);
}

} // namespace logschrod
