// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/special.hpp"

#include <cmath>
#include <limits>

#include "logschrod/quadrule.hpp"

namespace logschrod {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAsymptoticSwitch = 25.0; // beyond this the series wins
constexpr double kUnderflowR = 700.0;      // e^{-r} below double range soon after

// Scaled integral e^{r} K_nu(r) from the representation
//   sqrt(pi/2) r^nu / Gamma(nu + 1/2) * Int_0^inf (1+t/2)^{nu-1/2} e^{-rt} t^{nu-1/2} dt
// on the finite interval u in [0,1) via t = S (u/(1-u))^q. q = 2 flattens the
// endpoint for nu < 1/2 where t^{nu-1/2} is singular at 0.
double scaled_by_quadrature(double nu, double r) {
    const double a = nu - 0.5;
    const int q = (nu >= 0.5) ? 1 : 2;
    const double S = std::max(1.0, (2.0 * nu + 1.0) / r);
    auto integrand = [&](double u) -> double {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        const double g = u / (1.0 - u);
        const double t = (q == 1) ? S * g : S * g * g;
        const double dt = (q == 1) ? S / ((1.0 - u) * (1.0 - u))
                                   : 2.0 * S * u / ((1.0 - u) * (1.0 - u) * (1.0 - u));
        const double expo = -r * t + a * std::log1p(0.5 * t) + a * std::log(t);
        if (expo < -745.0) return 0.0;
        return std::exp(expo) * dt;
    };
    AdaptiveOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-13;
    opt.max_evals = 1 << 14;
    opt.panel_points = 21;
    const double integral = integrate_adaptive(integrand, 0.0, 1.0, opt);
    return std::sqrt(0.5 * kPi) * std::pow(r, nu) * integral / std::tgamma(nu + 0.5);
}

// Scaled large-r series e^{r} K_nu(r) = sqrt(pi/(2r)) sum_k a_k,
// a_k = a_{k-1} (4 nu^2 - (2k-1)^2) / (8 r k). Truncated at the smallest term.
double scaled_by_asymptotics(double nu, double r) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double acc = 1.0;
    double prev_abs = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * r * k);
        if (std::abs(term) >= prev_abs) break; // divergent tail reached
        acc += term;
        prev_abs = std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(acc)) break;
    }
    return std::sqrt(0.5 * kPi / r) * acc;
}

double scaled_k(double nu, double r) {
    nu = std::abs(nu); // K_{-nu} = K_nu
    if (r > kAsymptoticSwitch) return scaled_by_asymptotics(nu, r);
    return scaled_by_quadrature(nu, r);
}

} // namespace

BesselEval bessel_k_eval(double nu, double r) {
    if (!(r > 0.0)) throw DomainError("bessel_k: r must be positive");
    if (!std::isfinite(nu) || !std::isfinite(r)) throw DomainError("bessel_k: non-finite input");
    if (r > kUnderflowR) return {0.0, true};
    const double scaled = scaled_k(nu, r);
    return {scaled * std::exp(-r), false};
}

double bessel_k(double nu, double r) { return bessel_k_eval(nu, r).value; }

double bessel_k_scaled(double nu, double r) {
    if (!(r > 0.0)) throw DomainError("bessel_k_scaled: r must be positive");
    return scaled_k(nu, r);
}

double bessel_k_prime(double nu, double r) {
    if (!(r > 0.0)) throw DomainError("bessel_k_prime: r must be positive");
    const double knu = bessel_k(nu, r);
    const double kprev = bessel_k(std::abs(nu - 1.0), r);
    return -(nu / r) * knu - kprev;
}

KernelSpec KernelSpec::make(int N) {
    if (N < 1) throw DomainError("KernelSpec: dimension must be >= 1");
    KernelSpec spec;
    spec.dim = N;
    spec.c_n = std::pow(kPi, -0.5 * N);
    return spec;
}

double KernelSpec::kappa(double r) const {
    if (!(r > 0.0)) throw DomainError("kappa: r must be positive");
    const double nu = 0.5 * dim;
    if (r > kUnderflowR) return 0.0;
    return std::pow(2.0, 1.0 - nu) * std::pow(r, nu) * scaled_k(nu, r) * std::exp(-r);
}

double KernelSpec::kappa_prime(double r) const {
    if (!(r > 0.0)) throw DomainError("kappa_prime: r must be positive");
    const double nu = 0.5 * dim;
    if (r > kUnderflowR) return 0.0;
    return -std::pow(2.0, 1.0 - nu) * std::pow(r, nu) *
           scaled_k(std::abs(nu - 1.0), r) * std::exp(-r);
}

FractionalSpec FractionalSpec::make(int N, double s) {
    if (N < 1) throw DomainError("FractionalSpec: dimension must be >= 1");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("FractionalSpec: s must lie in (0, 1)");
    FractionalSpec spec;
    spec.dim = N;
    spec.s = s;
    spec.c_ns = std::pow(kPi, -0.5 * N) * std::pow(4.0, s) / std::tgamma(-s);
    return spec;
}

double FractionalSpec::varpi(double r) const {
    if (!(r > 0.0)) throw DomainError("varpi: r must be positive");
    const double mu = 0.5 * (dim + 2.0 * s);
    if (r > kUnderflowR) return 0.0;
    return std::pow(2.0, 1.0 - mu) * std::pow(r, mu) * scaled_k(mu, r) * std::exp(-r);
}

double unit_sphere_area(int N) {
    return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

double unit_ball_volume(int N) {
    return std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

} // namespace logschrod
