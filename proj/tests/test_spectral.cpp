// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "logschrod/spectral.hpp"

using namespace logschrod;

namespace {
constexpr double kPi = 3.14159265358979323846;

GridFunction cosine_mode(int n, double L, int k, double amplitude = 1.0) {
    return GridFunction::sample(1, n, L, true, [&](const Point& x) {
        return amplitude * std::cos(kPi * k * x[0] / L);
    });
}

double grid_norm2(const GridFunction& u) {
    double acc = 0.0;
    for (double v : u.values()) acc += v * v;
    return std::sqrt(acc);
}

double max_diff(const GridFunction& a, const GridFunction& b) {
    double worst = 0.0;
    for (std::ptrdiff_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.values()[static_cast<size_t>(i)] -
                                         b.values()[static_cast<size_t>(i)]));
    return worst;
}
} // namespace

TEST_CASE("transform round trip and Parseval") {
    const GridFunction u = GridFunction::sample(2, 32, 5.0, true, [](const Point& x) {
        return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]) + 0.1 * std::sin(x[0]);
    });
    const SpectrumHandle s = SpectrumHandle::forward(u);
    const GridFunction back = s.inverse();
    CHECK(max_diff(u, back) <= 1e-12 * u.max_abs());

    double coef2 = 0.0;
    for (const auto& c : s.coefficients()) coef2 += std::norm(c);
    const double parseval = std::sqrt(coef2 / static_cast<double>(u.size()));
    CHECK(parseval == doctest::Approx(grid_norm2(u)).epsilon(1e-12));

    CHECK(s.hermitian_defect() <= 1e-13);
}

TEST_CASE("log symbol annihilates constants") {
    const GridFunction c = GridFunction::sample(1, 64, 4.0, true,
                                                [](const Point&) { return 3.25; });
    const GridFunction lc = apply_symbol_log(c);
    CHECK(lc.max_abs() <= 1e-12 * 3.25);
}

TEST_CASE("single cosine mode is an eigenfunction") {
    const double L = 4.0 * kPi; // |xi| = 1 for k = 4
    const GridFunction u = cosine_mode(256, L, 4);
    const GridFunction lu = apply_symbol_log(u);
    double worst = 0.0;
    for (std::ptrdiff_t i = 0; i < u.size(); ++i)
        worst = std::max(worst,
                         std::abs(lu.values()[static_cast<size_t>(i)] -
                                  std::log(2.0) * u.values()[static_cast<size_t>(i)]));
    CHECK(worst <= 1e-13);

    const GridFunction su = apply_symbol_s(u, 0.5);
    worst = 0.0;
    for (std::ptrdiff_t i = 0; i < u.size(); ++i)
        worst = std::max(worst,
                         std::abs(su.values()[static_cast<size_t>(i)] -
                                  std::sqrt(2.0) * u.values()[static_cast<size_t>(i)]));
    CHECK(worst <= 1e-13);
}

TEST_CASE("fractional symbol: identity at s = 0 and constants") {
    const GridFunction u = GridFunction::sample(1, 128, 6.0, true, [](const Point& x) {
        return std::exp(-x[0] * x[0]) + 0.25;
    });
    const GridFunction id = apply_symbol_s(u, 0.0);
    CHECK(max_diff(u, id) == 0.0); // exact copy

    const GridFunction c = GridFunction::sample(1, 64, 4.0, true,
                                                [](const Point&) { return -1.75; });
    const GridFunction sc = apply_symbol_s(c, 0.6);
    double worst = 0.0;
    for (double v : sc.values()) worst = std::max(worst, std::abs(v + 1.75));
    CHECK(worst <= 1e-12 * 1.75);
}

TEST_CASE("fractional symbol approaches the identity as s decreases") {
    const GridFunction u = GridFunction::sample(1, 256, 8.0, true, [](const Point& x) {
        return std::exp(-0.5 * x[0] * x[0]);
    });
    double prev = 1e300;
    for (double s : {0.2, 0.1, 0.05, 0.025}) {
        const double gap = max_diff(apply_symbol_s(u, s), u);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev <= 0.05);
}

TEST_CASE("symbol domain and contract errors") {
    const GridFunction u = GridFunction::sample(1, 64, 4.0, true,
                                                [](const Point& x) { return x[0]; });
    CHECK_THROWS_AS(apply_symbol_s(u, 1.0), DomainError);
    CHECK_THROWS_AS(apply_symbol_s(u, -0.1), DomainError);
    const GridFunction np = GridFunction::sample(1, 64, 4.0, false,
                                                 [](const Point& x) { return x[0]; });
    CHECK_THROWS_AS(apply_symbol_log(np), DomainError);
    CHECK_THROWS_AS(inverse_shifted_symbol(u, 0.0), DomainError);
}

TEST_CASE("multiplier monotonicity for high-pass data") {
    const double L = 4.0 * kPi;
    const int n = 256;
    // modes k = 4, 7, 12 all have |xi| >= 1
    GridFunction u(1, n, L, true);
    const GridFunction m4 = cosine_mode(n, L, 4, 1.0);
    const GridFunction m7 = cosine_mode(n, L, 7, -0.6);
    const GridFunction m12 = cosine_mode(n, L, 12, 0.3);
    for (std::ptrdiff_t i = 0; i < u.size(); ++i)
        u.values()[static_cast<size_t>(i)] = m4.values()[static_cast<size_t>(i)] +
                                             m7.values()[static_cast<size_t>(i)] +
                                             m12.values()[static_cast<size_t>(i)];
    const GridFunction lu = apply_symbol_log(u);
    CHECK(grid_norm2(lu) >= std::log(2.0) * grid_norm2(u) - 1e-10);
}

TEST_CASE("inverse of the shifted symbol") {
    const GridFunction u = GridFunction::sample(1, 128, 6.0, true, [](const Point& x) {
        return std::exp(-x[0] * x[0]) * (1.0 + 0.3 * std::sin(2.0 * x[0]));
    });
    const double m = 0.7;
    // round trip: (L + m)^{-1} ((L + m) u) = u
    GridFunction lu = apply_symbol_log(u);
    for (std::ptrdiff_t i = 0; i < u.size(); ++i)
        lu.values()[static_cast<size_t>(i)] += m * u.values()[static_cast<size_t>(i)];
    CHECK(max_diff(inverse_shifted_symbol(lu, m), u) <= 1e-12 * u.max_abs());

    // constants divide by m
    const GridFunction c = GridFunction::sample(1, 64, 4.0, true,
                                                [](const Point&) { return 2.0; });
    const GridFunction ic = inverse_shifted_symbol(c, 0.5);
    for (double v : ic.values()) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));

    // single mode divides by log 2 + m
    const double L = 4.0 * kPi;
    const GridFunction mode = cosine_mode(256, L, 4);
    const GridFunction im = inverse_shifted_symbol(mode, 1.0);
    for (std::ptrdiff_t i = 0; i < mode.size(); ++i)
        CHECK(im.values()[static_cast<size_t>(i)] ==
              doctest::Approx(mode.values()[static_cast<size_t>(i)] / (std::log(2.0) + 1.0))
                  .epsilon(1e-11));
}

TEST_CASE("taylor residual closed form and order") {
    const GridFunction c = GridFunction::sample(1, 64, 4.0, true,
                                                [](const Point&) { return 1.5; });
    CHECK(taylor_residual(c, 0.3) <= 1e-12);

    const double L = 4.0 * kPi;
    const GridFunction mode = cosine_mode(512, L, 4);
    for (double s : {0.2, 0.1, 0.05}) {
        const double want = std::abs(std::pow(2.0, s) - 1.0 - s * std::log(2.0));
        CHECK(taylor_residual(mode, s) == doctest::Approx(want).epsilon(1e-9));
    }

    // halving s divides the residual by about four for a smooth bump
    const GridFunction bump = GridFunction::sample(1, 512, 12.0, true, [](const Point& x) {
        return std::exp(-0.5 * x[0] * x[0]);
    });
    const double r1 = taylor_residual(bump, 0.1);
    const double r2 = taylor_residual(bump, 0.05);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
}
