// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace logschrod {

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int npoints);

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double hw = 0.5 * (b - a);
        double acc = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(mid + hw * nodes[i]);
        return acc * hw;
    }
};

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    int max_evals = 1 << 14;
    int panel_points = 21;
    int max_depth = 60;
};

// Adaptive Gauss-Legendre on [a, b]; panel error estimated by bisection.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt = {});

} // namespace logschrod
