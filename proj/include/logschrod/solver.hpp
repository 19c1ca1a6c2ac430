// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "logschrod/grid.hpp"

namespace logschrod {

struct EquationParams {
    double m = 1.0; // mass term, > 0
    double p = 3.0; // nonlinearity power, > 1

    static EquationParams make(double m, double p);
    // (m/p)^{1/(p-1)}: far-field ceiling for admissible limits.
    double threshold() const;
};

struct SolveConfig {
    int dim = 1;
    int n = 1024;
    double half_width = 12.0;
    double init_amplitude = 1.0;
    double init_width = 1.0;
    double init_offset_cells = 0.5; // deliberate off-center start along axis 0
    int max_iter = 500;
    double tol = 1e-6;  // stop when residual <= tol * max(u)
    double gamma = 0.0; // 0 selects p/(p-1)
};

struct IterRecord {
    int iter = 0;
    double residual = 0.0;
    double max_u = 0.0;
    double quotient = 0.0;
};

struct SolveResult {
    GridFunction u;
    std::vector<IterRecord> history;
};

// Normalized fixed-point iteration u <- M^gamma (L + m)^{-1} u^p with the
// quotient M = <(L+m)u, u> / <u^p, u>, two-thirds dealiasing of u^p, and
// clamping of roundoff negatives. Throws TrivialSolutionError on collapse to
// zero and NonconvergenceError (with residual history) past max_iter.
SolveResult solve(const EquationParams& params, const SolveConfig& cfg);

// max-norm of apply_symbol_log(u) + m u - u^p.
double residual_inf(const GridFunction& u, const EquationParams& params);

struct C2Report {
    double a = 0.0;         // far-field estimate: max of u on the boundary shell
    double threshold = 0.0; // (m/p)^{1/(p-1)}
    bool satisfied = false; // a < threshold
};

C2Report check_c2(const GridFunction& u, const EquationParams& params);

// Gaussian bump amp * exp(-|x - c|^2 / (2 w^2)) with c offset by the given
// number of cells along axis 0.
GridFunction gaussian_init(int dim, int n, double half_width, double amplitude, double width,
                           double offset_cells);

} // namespace logschrod
