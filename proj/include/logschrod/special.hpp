// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "logschrod/errors.hpp"

namespace logschrod {

// Modified Bessel function of the second kind, K_nu(r).
//
// Evaluated from the integral representation
//   K_nu(r) = sqrt(pi/2) r^nu e^{-r} / Gamma(nu + 1/2)
//             * Int_0^inf (1 + t/2)^{nu - 1/2} e^{-r t} t^{nu - 1/2} dt
// by adaptive Gauss-Legendre quadrature after mapping [0, inf) to [0, 1);
// for r > 25 the large-r asymptotic series with correction terms takes over.
// Negative orders map through K_{-nu} = K_nu.
struct BesselEval {
    double value = 0.0;
    bool underflowed = false; // e^{-r} underflowed; value is exact 0
};

BesselEval bessel_k_eval(double nu, double r);
double bessel_k(double nu, double r);

// Exponentially scaled e^{r} K_nu(r); never underflows for r in range.
double bessel_k_scaled(double nu, double r);

// dK_nu/dr = -(nu/r) K_nu(r) - K_{nu-1}(r); strictly negative for r > 0.
double bessel_k_prime(double nu, double r);

// Kernel data of the logarithmic operator in dimension N.
struct KernelSpec {
    int dim = 1;
    double c_n = 0.0; // pi^{-N/2}

    static KernelSpec make(int N);

    // kappa(r) = 2^{1 - N/2} r^{N/2} K_{N/2}(r); positive, strictly decreasing.
    double kappa(double r) const;
    // kappa'(r) = -2^{1 - N/2} r^{N/2} K_{N/2 - 1}(r) < 0.
    double kappa_prime(double r) const;
};

// Kernel data of the fractional operator of order s in (0, 1).
struct FractionalSpec {
    int dim = 1;
    double s = 0.5;
    double c_ns = 0.0; // pi^{-N/2} 4^s / Gamma(-s), negative on (0, 1)

    static FractionalSpec make(int N, double s);

    // varpi_s(r) = 2^{1 - mu} r^{mu} K_mu(r), mu = (N + 2s)/2.
    double varpi(double r) const;
};

inline double c_norm(const FractionalSpec& spec) { return spec.c_ns; }

// Surface area of the unit sphere and volume of the unit ball in R^N.
double unit_sphere_area(int N);
double unit_ball_volume(int N);

} // namespace logschrod
