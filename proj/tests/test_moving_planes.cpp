// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "logschrod/moving_planes.hpp"
#include "oracles.hpp"

using namespace logschrod;

namespace {

GridFunction radial_gaussian(int dim, int n, double L, const Point& center,
                             double width = 1.0) {
    return GridFunction::sample(dim, n, L, false, [&](const Point& x) {
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            const double dd = x[static_cast<size_t>(d)] - center[static_cast<size_t>(d)];
            r2 += dd * dd;
        }
        return std::exp(-r2 / (width * width));
    });
}

} // namespace

TEST_CASE("reflection spec basics") {
    const std::vector<double> raw{3.0, 4.0};
    const ReflectionSpec spec = ReflectionSpec::make(raw, 0.5);
    CHECK(spec.e[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(spec.e[1] == doctest::Approx(0.8).epsilon(1e-15));

    const Point x{1.25, -0.5, 0.0};
    const Point y = spec.reflect(x, 2);
    const Point back = spec.reflect(y, 2);
    CHECK(std::abs(back[0] - x[0]) <= 1e-12);
    CHECK(std::abs(back[1] - x[1]) <= 1e-12);

    CHECK_THROWS_AS(ReflectionSpec::make(std::vector<double>{0.0}, 0.0), DomainError);
    CHECK(spec.axis(2) == -1);
    CHECK(ReflectionSpec::make(std::vector<double>{1.0, 0.0}, 0.0).axis(2) == 0);
}

TEST_CASE("grid-aligned reflection is an exact permutation") {
    const GridFunction u = GridFunction::sample(1, 64, 4.0, false, [](const Point& x) {
        return std::sin(1.3 * x[0]) + 0.2 * x[0];
    });
    const double h = u.spacing();
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 0.5 * h * 8);
    const GridFunction r = reflect_grid(u, spec);
    // double reflection restores the samples exactly
    const GridFunction rr = reflect_grid(r, spec);
    int checked = 0;
    const double right_edge = u.half_width() - u.spacing() + 1e-12;
    for (std::ptrdiff_t i = 0; i < u.size(); ++i) {
        const Point p = u.point_at(i);
        const Point q = spec.reflect(p, 1);
        // zero extension applies beyond the sampled range [-L, L-h]
        if (q[0] > right_edge || q[0] < -u.half_width() - 1e-12) continue;
        CHECK(rr.values()[static_cast<size_t>(i)] == u.values()[static_cast<size_t>(i)]);
        ++checked;
    }
    CHECK(checked > 32);
}

TEST_CASE("even fields are fixed by their symmetry plane") {
    const GridFunction u = radial_gaussian(1, 128, 6.0, Point{0, 0, 0});
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 0.0);
    const GridFunction r = reflect_grid(u, spec);
    double worst = 0.0;
    for (std::ptrdiff_t i = 1; i < u.size(); ++i) // index 0 mirrors off the box
        worst = std::max(worst, std::abs(r.values()[static_cast<size_t>(i)] -
                                         u.values()[static_cast<size_t>(i)]));
    CHECK(worst <= 1e-14);
}

TEST_CASE("omega antisymmetry on grid-aligned planes") {
    const GridFunction u = GridFunction::sample(1, 128, 6.0, false, [](const Point& x) {
        return std::exp(-0.3 * (x[0] - 0.7) * (x[0] - 0.7)) + 0.1 * std::sin(2.0 * x[0]);
    });
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 0.0);
    const GridFunction w = omega(u, spec);
    const int n = u.points_per_axis();
    for (int i = 1; i < n; ++i) {
        const int j = n - i; // mirror index about x = 0
        if (j <= 0 || j >= n) continue;
        CHECK(std::abs(w.values()[static_cast<size_t>(i)] +
                       w.values()[static_cast<size_t>(j)]) <= 1e-12);
    }
}

TEST_CASE("omega of a radial profile is nonnegative left of center") {
    const GridFunction u = radial_gaussian(1, 256, 8.0, Point{0, 0, 0});
    for (double mu : {-3.0, -1.5, -0.5}) {
        CHECK(omega_min_halfspace(u, std::vector<double>{1.0}, mu) >= -1e-12);
    }
    // and crosses zero past the center
    CHECK(omega_min_halfspace(u, std::vector<double>{1.0}, 0.75) < -1e-3);
}

TEST_CASE("omega vanishes on the exact symmetry plane of a shifted bump") {
    const GridFunction u = radial_gaussian(1, 256, 8.0, Point{1.25, 0, 0});
    const double h = u.spacing();
    // center 1.25 = 40 h with h = 1/16: plane offset is grid-aligned
    REQUIRE(std::abs(1.25 / h - std::round(1.25 / h)) < 1e-12);
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 1.25);
    const GridFunction w = omega(u, spec);
    for (std::ptrdiff_t i = 0; i < w.size(); ++i) {
        const Point p = w.point_at(i);
        const Point q = spec.reflect(p, 1);
        if (q[0] > u.half_width() - u.spacing() + 1e-12 || q[0] < -u.half_width() - 1e-12)
            continue;
        CHECK(std::abs(w.values()[static_cast<size_t>(i)]) <= 1e-13);
    }
}

TEST_CASE("critical plane of centered and shifted profiles") {
    const GridFunction u = radial_gaussian(1, 256, 8.0, Point{0, 0, 0});
    const double h = u.spacing();
    const double tol = 1e-8;
    const double l0 = lambda0(u, std::vector<double>{1.0}, tol);
    CHECK(std::abs(l0) <= h);

    const GridFunction v = radial_gaussian(1, 256, 8.0, Point{0.7, 0, 0});
    const double l0v = lambda0(v, std::vector<double>{1.0}, tol);
    CHECK(std::abs(l0v - 0.7) <= h);

    // opposite directions bracket the same center
    const double l0m = lambda0(v, std::vector<double>{-1.0}, tol);
    CHECK(std::abs(l0v + l0m) <= 2.0 * h);

    const GridFunction c = GridFunction::sample(1, 64, 4.0, false,
                                                [](const Point&) { return 1.0; });
    CHECK_THROWS_AS(lambda0(c, std::vector<double>{1.0}, tol), DegenerateInputError);
}

TEST_CASE("refined argmax locates an off-grid peak") {
    const GridFunction u = radial_gaussian(1, 256, 8.0, Point{0.71, 0, 0});
    const Point peak = refined_argmax(u);
    CHECK(std::abs(peak[0] - 0.71) <= 0.25 * u.spacing());
}

TEST_CASE("symmetry report on an exactly radial field") {
    const GridFunction u = GridFunction::sample(2, 128, 6.0, false, [](const Point& x) {
        return std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
    const Direction dirs[2] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    const SymmetryReport report = symmetry_report(u, dirs);
    CHECK(std::abs(report.center[0]) <= 1e-9);
    CHECK(std::abs(report.center[1]) <= 1e-9);
    CHECK(report.max_asymmetry <= 1e-12);
    CHECK(report.radial_monotone);
    CHECK(report.monotonicity_violation <= 1e-12);
    for (const auto& [e, l0] : report.lambda0_per_direction) {
        (void)e;
        CHECK(std::abs(l0) <= u.spacing());
    }
}

TEST_CASE("symmetry report with diagonal directions and an off-center peak") {
    // Exercises the full four-direction pipeline the solver outputs would
    // take: interpolated diagonal reflections, least-squares plane
    // intersection, and the argmax cross-check.
    const double cx = 0.55, cy = -0.35;
    const GridFunction u = GridFunction::sample(2, 192, 8.0, false, [&](const Point& x) {
        const double dx = x[0] - cx, dy = x[1] - cy;
        return std::exp(-(dx * dx + dy * dy) / 2.0);
    });
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Direction dirs[4] = {{1.0, 0.0, 0.0},
                               {0.0, 1.0, 0.0},
                               {inv_sqrt2, inv_sqrt2, 0.0},
                               {inv_sqrt2, -inv_sqrt2, 0.0}};
    const SymmetryReport report = symmetry_report(u, dirs);
    const double h = u.spacing();
    CHECK(std::abs(report.center[0] - cx) <= h);
    CHECK(std::abs(report.center[1] - cy) <= h);
    CHECK(report.max_asymmetry <= 1e-3 * u.max_abs());
    CHECK(report.radial_monotone);
    // every critical plane passes within 2h of the peak
    for (const auto& [e, l0] : report.lambda0_per_direction) {
        const double ce = e[0] * report.center[0] + e[1] * report.center[1];
        CHECK(std::abs(ce - l0) <= 2.0 * h);
    }
}

TEST_CASE("symmetry report flags a skewed field") {
    const GridFunction u = GridFunction::sample(2, 128, 6.0, false, [](const Point& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return std::exp(-r2) * (1.0 + 0.2 * x[0] / (1.0 + r2));
    });
    const Direction dirs[2] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    bool flagged = false;
    try {
        const SymmetryReport report = symmetry_report(u, dirs);
        flagged = report.max_asymmetry > 1e-3 * u.max_abs() || !report.radial_monotone;
    } catch (const PreconditionError&) {
        flagged = true;
    } catch (const DegenerateInputError&) {
        flagged = true;
    }
    CHECK(flagged);
}

TEST_CASE("antisymmetric probes return strictly negative operator values") {
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 0.0);
    int negative = 0;
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        const GridFunction w = random_antisym_field(1, 1024, 12.0, spec, seed);
        const ProbeResult pr = antisym_min_probe(w, spec);
        REQUIRE(pr.admissible);
        CHECK(pr.omega_min < 0.0);
        CHECK(pr.x0[0] < 0.0);
        if (pr.value < 0.0) ++negative;
    }
    CHECK(negative == 25);
}

TEST_CASE("zero field is inadmissible for the probe") {
    const GridFunction w(1, 128, 8.0, false);
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 0.0);
    const ProbeResult pr = antisym_min_probe(w, spec);
    CHECK_FALSE(pr.admissible);
    CHECK(pr.value == 0.0);
}

TEST_CASE("probe rejects non-antisymmetric input") {
    const GridFunction u = radial_gaussian(1, 128, 8.0, Point{-2.0, 0, 0});
    const ReflectionSpec spec = ReflectionSpec::make(std::vector<double>{1.0}, 0.0);
    CHECK_THROWS_AS(antisym_min_probe(u, spec), PreconditionError);
}

TEST_CASE("decay bound in one dimension against a direct oracle") {
    const KernelSpec spec = KernelSpec::make(1);
    const DecayProbe probe = decay_bound_check(Point{-4.0, 0, 0}, 0.0, spec);
    // oracle: Int_d^inf sqrt(pi) e^{-r} / r dr by Simpson
    const double oracle = oracles::simpson(
        [](double r) { return std::sqrt(3.14159265358979323846) * std::exp(-r) / r; }, 4.0,
        64.0, 200000);
    CHECK(probe.lhs_integral == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(probe.lhs_integral > 0.0);
    CHECK(probe.satisfied);
    CHECK(probe.lhs_integral / probe.rhs_bound > 1e3);
}

TEST_CASE("decay bound in two dimensions against a planar sum oracle") {
    const KernelSpec spec = KernelSpec::make(2);
    const DecayProbe probe = decay_bound_check(Point{-4.0, 0, 0}, 0.0, spec);
    // midpoint sum of kappa(|w|)/|w|^2 over the half-plane left of the
    // reflected point, exploiting the w2 symmetry
    const double d = 4.0;
    const double h = 0.05;
    double oracle = 0.0;
    for (double w1 = d + 0.5 * h; w1 < d + 30.0; w1 += h) {
        for (double w2 = 0.5 * h; w2 < 30.0; w2 += h) {
            const double r = std::sqrt(w1 * w1 + w2 * w2);
            oracle += 2.0 * spec.kappa(r) / (r * r) * h * h;
        }
    }
    CHECK(probe.lhs_integral == doctest::Approx(oracle).epsilon(5e-3));
    CHECK(probe.satisfied);
}

TEST_CASE("half-space kernel mass decays with distance") {
    const KernelSpec spec = KernelSpec::make(1);
    const double a = decay_bound_check(Point{-5.0, 0, 0}, 0.0, spec).lhs_integral;
    const double b = decay_bound_check(Point{-8.0, 0, 0}, 0.0, spec).lhs_integral;
    CHECK(a > b);
    CHECK(b > 0.0);
}

TEST_CASE("decay probe preconditions") {
    const KernelSpec spec = KernelSpec::make(1);
    CHECK_THROWS_AS(decay_bound_check(Point{4.0, 0, 0}, 0.0, spec), PreconditionError);
    CHECK_THROWS_AS(decay_bound_check(Point{-1.0, 0, 0}, 0.0, spec), PreconditionError);
}
