// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "logschrod/quadrature.hpp"
#include "logschrod/spectral.hpp"
#include "oracles.hpp"

using namespace logschrod;

namespace {
constexpr double kPi = 3.14159265358979323846;

GridFunction gaussian(int dim, int n, double L, bool periodic) {
    return GridFunction::sample(dim, n, L, periodic, [&](const Point& x) {
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) r2 += x[static_cast<size_t>(d)] * x[static_cast<size_t>(d)];
        return std::exp(-0.5 * r2);
    });
}
} // namespace

TEST_CASE("constant annihilation and identity") {
    const GridFunction c = GridFunction::sample(1, 256, 8.0, true,
                                                [](const Point&) { return 2.75; });
    const KernelSpec spec = KernelSpec::make(1);
    const auto op = SingularOperator::make_log(c, spec, {});
    CHECK(std::abs(op.at(c, Point{0.0, 0, 0})) <= 1e-12);
    CHECK(std::abs(op.at(c, Point{1.37, 0, 0})) <= 1e-12);

    const FractionalSpec fs = FractionalSpec::make(1, 0.4);
    const auto fop = SingularOperator::make_fractional(c, fs, {});
    CHECK(fop.at(c, Point{0.5, 0, 0}) == doctest::Approx(2.75).epsilon(1e-12));
}

TEST_CASE("cosine eigenvalue by singular quadrature") {
    const double L = 4.0 * kPi;
    const GridFunction u = GridFunction::sample(1, 1024, L, false,
                                                [](const Point& x) { return std::cos(x[0]); });
    const KernelSpec spec = KernelSpec::make(1);
    const double got = SingularOperator::make_log(u, spec, {}).at(u, Point{0.0, 0, 0});
    CHECK(std::abs(got - std::log(2.0)) <= 1e-3);

    const FractionalSpec fs = FractionalSpec::make(1, 0.5);
    const double gs = SingularOperator::make_fractional(u, fs, {}).at(u, Point{0.0, 0, 0});
    CHECK(std::abs(gs - std::sqrt(2.0)) <= 1e-3);
}

TEST_CASE("cross-method agreement with the spectral oracle (N=1)") {
    const GridFunction u = gaussian(1, 256, 12.0, true);
    const GridFunction spectral = apply_symbol_log(u);
    const auto op = SingularOperator::make_log(u, KernelSpec::make(1), {});
    const double scale = spectral.max_abs();
    for (double x : {0.0, 0.5, 1.0}) {
        const Point p{x, 0, 0};
        CHECK(std::abs(op.at(u, p) - spectral.value_at(p)) <= 1e-3 * scale);
    }
}

TEST_CASE("fractional pointwise approaches the identity for small s") {
    const GridFunction u = gaussian(1, 512, 12.0, false);
    const FractionalSpec fs = FractionalSpec::make(1, 1e-4);
    const auto op = SingularOperator::make_fractional(u, fs, {});
    const Point p{0.25, 0, 0};
    CHECK(std::abs(op.at(u, p) - u.value_at(p)) <= 1e-3);
}

TEST_CASE("linearity of the quadrature operator") {
    const int n = 256;
    const double L = 10.0;
    const GridFunction u = gaussian(1, n, L, true);
    const GridFunction v = GridFunction::sample(1, n, L, true, [](const Point& x) {
        return std::sin(x[0]) * std::exp(-0.25 * x[0] * x[0]);
    });
    GridFunction w(1, n, L, true);
    const double a = 1.7, b = -0.6;
    for (std::ptrdiff_t i = 0; i < w.size(); ++i)
        w.values()[static_cast<size_t>(i)] = a * u.values()[static_cast<size_t>(i)] +
                                             b * v.values()[static_cast<size_t>(i)];
    const auto op = SingularOperator::make_log(u, KernelSpec::make(1), {});
    const Point p{0.4, 0, 0};
    CHECK(op.at(w, p) ==
          doctest::Approx(a * op.at(u, p) + b * op.at(v, p)).epsilon(1e-10));
}

TEST_CASE("translation equivariance on periodic grids is exact") {
    const int n = 128;
    const double L = 8.0;
    const GridFunction u = GridFunction::sample(1, n, L, true, [](const Point& x) {
        return std::exp(-0.5 * x[0] * x[0]) + 0.2 * std::cos(x[0]);
    });
    const GridFunction v = u.shifted(0, 1);
    const auto op = SingularOperator::make_log(u, KernelSpec::make(1), {});
    const double h = u.spacing();
    for (int i : {10, 40, 64, 100}) {
        const double xu = u.coord(i);
        const double xv = u.coord(i) + h;
        CHECK(op.at(u, Point{xu, 0, 0}) == op.at(v, Point{xv, 0, 0}));
    }
}

TEST_CASE("antisymmetric field with a negative interior minimum maps below zero") {
    const int n = 512;
    const double L = 12.0;
    // odd and localized, with its negative minimum on the left half
    const GridFunction w = GridFunction::sample(1, n, L, false, [&](const Point& x) {
        return std::sin(kPi * x[0] / L) * std::exp(-0.1 * x[0] * x[0]);
    });
    // locate the grid minimum on the left half and evaluate there
    double best = 0.0;
    Point arg{0, 0, 0};
    for (std::ptrdiff_t i = 0; i < w.size(); ++i) {
        const Point p = w.point_at(i);
        if (p[0] >= -2.0 * w.spacing() || p[0] <= -L + 1.0) continue;
        if (w.values()[static_cast<size_t>(i)] < best) {
            best = w.values()[static_cast<size_t>(i)];
            arg = p;
        }
    }
    REQUIRE(best < 0.0);
    const double value = apply_log_pointwise(w, arg, KernelSpec::make(1), {});
    CHECK(value < 0.0);
}

TEST_CASE("small-s Taylor behavior through the quadrature route") {
    const GridFunction u = gaussian(1, 512, 12.0, false);
    const KernelSpec ks = KernelSpec::make(1);
    const auto lop = SingularOperator::make_log(u, ks, {});
    const Point pts[3] = {{0.0, 0, 0}, {0.6, 0, 0}, {1.2, 0, 0}};
    std::vector<double> ss{0.2, 0.1, 0.05};
    std::vector<double> es;
    for (double s : ss) {
        const auto sop = SingularOperator::make_fractional(u, FractionalSpec::make(1, s), {});
        double worst = 0.0;
        for (const Point& p : pts) {
            const double lhs = sop.at(u, p);
            const double rhs = u.value_at(p) + s * lop.at(u, p);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        es.push_back(worst);
    }
    // log-log slope of the residual ladder
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < ss.size(); ++i) {
        const double lx = std::log(ss[i]), ly = std::log(es[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    CHECK(slope >= 1.5);
}

TEST_CASE("three-dimensional operator path") {
    const GridFunction c = GridFunction::sample(3, 16, 6.0, true,
                                                [](const Point&) { return 1.5; });
    QuadratureParams qp;
    qp.R = 20.0;
    qp.tol = 1e-6;
    const auto op = SingularOperator::make_log(c, KernelSpec::make(3), qp);
    CHECK(std::abs(op.at(c, Point{0, 0, 0})) <= 1e-12);

    const GridFunction g = gaussian(3, 32, 6.0, true);
    const auto gop = SingularOperator::make_log(g, KernelSpec::make(3), qp);
    const GridFunction spectral = apply_symbol_log(g);
    const Point p{0, 0, 0};
    CHECK(std::abs(gop.at(g, p) - spectral.value_at(p)) <= 5e-2 * spectral.max_abs());
}

TEST_CASE("geometry and data errors") {
    const GridFunction u = gaussian(1, 128, 6.0, false);
    const auto op = SingularOperator::make_log(u, KernelSpec::make(1), {});
    CHECK_THROWS_AS(op.at(u, Point{5.999, 0, 0}), GeometryError);
    GridFunction bad = u;
    bad.values()[5] = std::nan("");
    CHECK_THROWS_AS(op.at(bad, Point{0.0, 0, 0}), DataError);
    CHECK_THROWS_AS(op.sweep(u), DomainError); // zero-extension geometry

    QuadratureParams qp;
    qp.R = 2.0; // far too small for the default tail tolerance
    CHECK_THROWS_AS(SingularOperator::make_log(u, KernelSpec::make(1), qp), DomainError);
    QuadratureParams qp2;
    qp2.eps = 40.0; // eps beyond R
    CHECK_THROWS_AS(SingularOperator::make_log(u, KernelSpec::make(1), qp2), DomainError);
}

TEST_CASE("weighted integrability norm") {
    const GridFunction zero(1, 64, 8.0, false);
    CHECK(l0_norm(zero) == 0.0);

    // constant one on a wide box: 2 Int_0^inf e^{-x}/(1+x) dx = 1.19269472...
    const GridFunction one = GridFunction::sample(1, 8192, 40.0, false,
                                                  [](const Point&) { return 1.0; });
    const double oracle =
        2.0 * oracles::simpson([](double r) { return std::exp(-r) / (1.0 + r); }, 0.0, 40.0,
                               400000);
    CHECK(oracle == doctest::Approx(1.1926947246463881).epsilon(1e-9));
    CHECK(l0_norm(one) == doctest::Approx(oracle).epsilon(2e-4));

    // exact homogeneity
    const GridFunction g = gaussian(1, 128, 6.0, false);
    GridFunction g2 = g;
    for (auto& v : g2.values()) v *= 2.0;
    CHECK(l0_norm(g2) == 2.0 * l0_norm(g));

    CHECK(l0_tail_bound(one) > 0.0);
    CHECK(l0_tail_bound(one) < 1e-10); // e^{-40} scale
}

TEST_CASE("serial and parallel evaluations agree") {
    const GridFunction u = gaussian(2, 64, 6.0, true);
    QuadratureParams qp;
    qp.R = 12.0;
    qp.tol = 1e-4;
    const auto op = SingularOperator::make_log(u, KernelSpec::make(2), qp);
    const Point p{0.31, -0.17, 0};
    CHECK(op.at(u, p, Exec::serial) ==
          doctest::Approx(op.at(u, p, Exec::parallel)).epsilon(1e-13));
    const GridFunction a = op.sweep(u, Exec::serial);
    const GridFunction b = op.sweep(u, Exec::parallel);
    double diff = 0.0;
    for (std::ptrdiff_t i = 0; i < a.size(); ++i)
        diff = std::max(diff, std::abs(a.values()[static_cast<size_t>(i)] -
                                       b.values()[static_cast<size_t>(i)]));
    CHECK(diff == 0.0); // per-point evaluation is serial inside the sweep
}

TEST_CASE("dini reports") {
    // Lipschitz profile: modulus bounded by the slope
    const GridFunction lip = GridFunction::sample(1, 1024, 2.0, false, [](const Point& x) {
        return std::clamp(x[0], -0.75, 0.75);
    });
    const DiniReport lr = dini_check(lip, Point{0.1, 0, 0});
    CHECK(lr.is_dini);
    for (const auto& [r, psi] : lr.modulus_samples) {
        CHECK(psi <= 1.05 * r + 1e-12);
        CHECK(psi >= 0.0);
    }
    // modulus is nondecreasing
    for (size_t i = 1; i < lr.modulus_samples.size(); ++i)
        CHECK(lr.modulus_samples[i].second >= lr.modulus_samples[i - 1].second);

    // constant: zero modulus, zero integral
    const GridFunction c = GridFunction::sample(1, 256, 1.0, false,
                                                [](const Point&) { return 0.4; });
    const DiniReport cr = dini_check(c, Point{0.0, 0, 0});
    CHECK(cr.is_dini);
    CHECK(cr.dini_integral_estimate == 0.0);

    // logarithmic modulus at the origin: flagged as not Dini
    const GridFunction logm = GridFunction::sample(1, 8192, 0.5, false, [](const Point& x) {
        const double a = std::abs(x[0]);
        if (a < 1e-300) return 0.0;
        return 1.0 / std::log(1.0 / std::min(a, 0.49));
    });
    const DiniReport nr = dini_check(logm, Point{0.0, 0, 0});
    CHECK_FALSE(nr.is_dini);

    CHECK_THROWS_AS(dini_check(c, Point{9.0, 0, 0}), GeometryError);
}
