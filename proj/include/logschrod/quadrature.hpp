// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "logschrod/grid.hpp"
#include "logschrod/special.hpp"

namespace logschrod {

struct QuadratureParams {
    double eps = 0.0;         // singular-ball radius; 0 selects 2h
    double R = 30.0;          // far-field truncation radius
    int nodes_per_shell = 21; // Gauss-Legendre panel size for radial integrals
    double tol = 1e-9;        // budget for the truncation tail
};

// Pointwise singular-integral evaluation of the logarithmic and fractional
// operators on a fixed grid geometry.
//
// The principal value is discretized as a lattice sum over offsets
// eps <= |z| <= R with weight kernel(|z|)/|z|^{N+2s} h^N, plus a local
// correction (tr H_h / 2N) (S - J) built from the centered finite-difference
// Hessian trace: S is the lattice sum of |z|^2 times the weight, J its
// continuum radial integral. The correction makes the rule exact on
// quadratics (and cubics, by parity) and absorbs the excluded-ball term.
// Beyond R the tail is analytic for zero-extended grids.
class SingularOperator {
  public:
    static SingularOperator make_log(const GridFunction& geometry, const KernelSpec& spec,
                                     const QuadratureParams& qp = {});
    static SingularOperator make_fractional(const GridFunction& geometry,
                                            const FractionalSpec& spec,
                                            const QuadratureParams& qp = {});

    double at(const GridFunction& u, const Point& x, Exec exec = Exec::parallel) const;

    // Evaluate at every grid point (periodic geometry only).
    GridFunction sweep(const GridFunction& u, Exec exec = Exec::parallel) const;

    double eps() const;
    double truncation_radius() const;

    ~SingularOperator();
    SingularOperator(SingularOperator&&) noexcept;
    SingularOperator& operator=(SingularOperator&&) noexcept;
    SingularOperator(const SingularOperator&) = delete;
    SingularOperator& operator=(const SingularOperator&) = delete;

    struct Impl;

  private:
    SingularOperator();
    std::unique_ptr<Impl> impl_;
};

// Convenience single-point entry points (evaluator cached per geometry).
double apply_log_pointwise(const GridFunction& u, const Point& x, const KernelSpec& spec,
                           const QuadratureParams& qp = {});
double apply_s_pointwise(const GridFunction& u, const Point& x, const FractionalSpec& spec,
                         const QuadratureParams& qp = {});

// Weighted integrability norm: grid quadrature of
// |u(x)| e^{-|x|} (1 + |x|)^{-(N+1)/2} over the box.
double l0_norm(const GridFunction& u, Exec exec = Exec::parallel);

// Bound on the exterior contribution to the norm above, assuming |u| stays
// below its box maximum outside.
double l0_tail_bound(const GridFunction& u);

// Modulus-of-continuity report at dyadic radii.
struct DiniReport {
    std::vector<std::pair<double, double>> modulus_samples; // (r, Psi(r))
    double dini_integral_estimate = 0.0;
    bool is_dini = false;
};

DiniReport dini_check(const GridFunction& u, const Point& x);

} // namespace logschrod
