// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/solver.hpp"

#include <cmath>
#include <complex>

#include "logschrod/spectral.hpp"

namespace logschrod {

EquationParams EquationParams::make(double m, double p) {
    if (!(m > 0.0)) throw DomainError("EquationParams: m must be positive");
    if (!(p > 1.0)) throw DomainError("EquationParams: p must exceed 1");
    return {m, p};
}

double EquationParams::threshold() const { return std::pow(m / p, 1.0 / (p - 1.0)); }

GridFunction gaussian_init(int dim, int n, double half_width, double amplitude, double width,
                           double offset_cells) {
    const double h = 2.0 * half_width / n;
    const double c0 = offset_cells * h;
    return GridFunction::sample(dim, n, half_width, true, [&](const Point& x) {
        double r2 = (x[0] - c0) * (x[0] - c0);
        for (int d = 1; d < dim; ++d) r2 += x[static_cast<size_t>(d)] * x[static_cast<size_t>(d)];
        return amplitude * std::exp(-r2 / (2.0 * width * width));
    });
}

double residual_inf(const GridFunction& u, const EquationParams& params) {
    const GridFunction lu = apply_symbol_log(u);
    auto a = lu.values();
    auto b = u.values();
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double r = a[i] + params.m * b[i] - std::pow(b[i], params.p);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

C2Report check_c2(const GridFunction& u, const EquationParams& params) {
    // Far-field estimate: maximum of u over the outermost index shell.
    const int n = u.points_per_axis();
    const int dim = u.dim();
    double a = 0.0;
    std::array<int, 3> idx{};
    for (std::ptrdiff_t flat = 0; flat < u.size(); ++flat) {
        u.unflatten(flat, std::span<int>(idx.data(), static_cast<size_t>(dim)));
        bool shell = false;
        for (int d = 0; d < dim; ++d)
            if (idx[static_cast<size_t>(d)] == 0 || idx[static_cast<size_t>(d)] == n - 1)
                shell = true;
        if (shell) a = std::max(a, u.values()[static_cast<size_t>(flat)]);
    }
    C2Report report;
    report.a = a;
    report.threshold = params.threshold();
    report.satisfied = a < report.threshold;
    return report;
}

SolveResult solve(const EquationParams& params, const SolveConfig& cfg) {
    if (cfg.max_iter < 1) throw DomainError("solve: max_iter must be >= 1");
    if (!(cfg.tol > 0.0)) throw DomainError("solve: tol must be positive");
    EquationParams::make(params.m, params.p); // validate

    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : params.p / (params.p - 1.0);
    GridFunction u = gaussian_init(cfg.dim, cfg.n, cfg.half_width, cfg.init_amplitude,
                                   cfg.init_width, cfg.init_offset_cells);
    if (u.max_abs() < cfg.tol)
        throw TrivialSolutionError("solve: initial guess is (numerically) zero");

    SolveResult result;
    std::vector<double> residuals, max_us, quotients;
    const double m = params.m;
    const double p = params.p;
    const std::ptrdiff_t total = u.size();
    auto iteration_failure = [&](const char* msg) {
        return NonconvergenceError(msg, std::move(residuals), std::move(max_us),
                                   std::move(quotients));
    };

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        // w = dealiased u^p (two-thirds rule).
        GridFunction w(cfg.dim, cfg.n, cfg.half_width, true);
        {
            auto uv = u.values();
            auto wv = w.values();
            par::for_each_index(total, Exec::parallel, [&](std::ptrdiff_t i) {
                wv[static_cast<size_t>(i)] = std::pow(uv[static_cast<size_t>(i)], p);
            });
        }
        SpectrumHandle wh = SpectrumHandle::forward(w);
        SpectrumHandle uh = SpectrumHandle::forward(u);
        {
            auto coef = wh.coefficients();
            const int n = cfg.n;
            for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
                std::ptrdiff_t rem = flat;
                bool keep = true;
                for (int d = 0; d < cfg.dim; ++d) {
                    int k = static_cast<int>(rem % n);
                    rem /= n;
                    if (k > n / 2) k -= n;
                    if (3 * std::abs(k) > n) keep = false;
                }
                if (!keep) coef[static_cast<size_t>(flat)] = 0.0;
            }
        }

        // Petviashvili quotient <(L+m)u, u> / <u^p, u> via the coefficients.
        double num = 0.0, den = 0.0;
        {
            auto uc = uh.coefficients();
            auto wc = wh.coefficients();
            for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
                const double sym = std::log1p(uh.xi_squared(flat)) + m;
                num += sym * std::norm(uc[static_cast<size_t>(flat)]);
                den += (wc[static_cast<size_t>(flat)] *
                        std::conj(uc[static_cast<size_t>(flat)]))
                           .real();
            }
        }
        if (!(den > 0.0) || !std::isfinite(num / den))
            throw TrivialSolutionError("solve: quotient degenerated (trivial iterate)");
        const double quotient = num / den;

        // u <- M^gamma (L + m)^{-1} w
        {
            auto coef = wh.coefficients();
            const double scale = std::pow(quotient, gamma);
            for (std::ptrdiff_t flat = 0; flat < total; ++flat)
                coef[static_cast<size_t>(flat)] *=
                    scale / (std::log1p(wh.xi_squared(flat)) + m);
        }
        u = wh.inverse();

        const double max_u = u.max_value();
        if (max_u < cfg.tol)
            throw TrivialSolutionError("solve: iterate collapsed to zero");

        // Negative-value policy: clamp dips in (-tol, 0), reject anything lower.
        {
            const double floor = -cfg.tol;
            auto uv = u.values();
            double worst = 0.0;
            for (auto& v : uv) {
                if (v < worst) worst = v;
                if (v < 0.0 && v > floor) v = 0.0;
            }
            if (worst <= floor)
                throw iteration_failure("solve: iterate developed a negative undershoot");
        }

        const double res = residual_inf(u, params);
        residuals.push_back(res);
        max_us.push_back(max_u);
        quotients.push_back(quotient);
        result.history.push_back({iter, res, max_u, quotient});
        if (res <= cfg.tol * max_u) {
            result.u = std::move(u);
            return result;
        }
    }
    throw iteration_failure("solve: no convergence within the iteration budget");
}

} // namespace logschrod
