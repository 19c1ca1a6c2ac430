// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "logschrod/grid.hpp"
#include "logschrod/quadrature.hpp"
#include "logschrod/special.hpp"

namespace logschrod {

// Direction in up to three dimensions (unit length).
using Direction = std::array<double, 3>;

// Reflection across the hyperplane {x . e = lambda}.
struct ReflectionSpec {
    Direction e{1.0, 0.0, 0.0};
    double lambda = 0.0;

    static ReflectionSpec make(std::span<const double> direction, double lambda);
    Point reflect(const Point& x, int dim) const;
    // Axis index when e is a coordinate axis (within 1e-12), else -1.
    int axis(int dim) const;
};

// u_lambda(x) = u(x^lambda). Exact sample permutation when the reflection
// maps the lattice to itself; cubic interpolation otherwise.
GridFunction reflect_grid(const GridFunction& u, const ReflectionSpec& spec,
                          Exec exec = Exec::parallel);

// omega_lambda = u_lambda - u; antisymmetric w.r.t. the reflection.
GridFunction omega(const GridFunction& u, const ReflectionSpec& spec,
                   Exec exec = Exec::parallel);

// Minimum of omega_mu over the open half-space {x . e < mu}.
double omega_min_halfspace(const GridFunction& u, std::span<const double> direction, double mu,
                           Exec exec = Exec::parallel);

// Largest lambda on a bisection ladder (resolution h/16) such that
// min over the half-space of omega_mu >= -tol for every tested mu <= lambda.
double lambda0(const GridFunction& u, std::span<const double> direction, double tol);

struct SymmetryReport {
    Point center{0.0, 0.0, 0.0};
    std::vector<std::pair<Direction, double>> lambda0_per_direction;
    double max_asymmetry = 0.0;
    bool radial_monotone = false;
    double monotonicity_violation = 0.0;
};

// Critical planes per direction, center from the refined argmax cross-checked
// against the least-squares plane intersection, reflection asymmetry, and
// monotonicity of the angular-averaged profile.
SymmetryReport symmetry_report(const GridFunction& u, std::span<const Direction> directions);

// Sub-grid argmax by quadratic refinement along each axis.
Point refined_argmax(const GridFunction& u);

struct ProbeResult {
    double value = 0.0;     // operator value at the minimizer
    bool admissible = false; // strict interior negative minimum found
    Point x0{0.0, 0.0, 0.0};
    double omega_min = 0.0;
};

// Evaluate the logarithmic operator at the negative minimum of an
// antisymmetric field; the value must come out strictly negative.
ProbeResult antisym_min_probe(const GridFunction& omega_field, const ReflectionSpec& spec,
                              const QuadratureParams& qp = {});

struct DecayProbe {
    Point x0{0.0, 0.0, 0.0};
    double lambda = 0.0;
    double lhs_integral = 0.0;
    double rhs_bound = 0.0;
    double constant_C = 0.0;
    bool satisfied = false;
};

// Kernel mass of the reflected half-space seen from x0 against the explicit
// far-field lower bound C |x0|^{-(1+N)/2} e^{-4 |x0|}.
DecayProbe decay_bound_check(const Point& x0, double lambda, const KernelSpec& spec,
                             int nodes_per_shell = 21);

// Seeded antisymmetric test field: omega(x) = phi(x) - phi(x^lambda) with phi
// a sum of smooth compact bumps supported strictly inside the half-space, at
// least one of them negative. Antisymmetric by construction.
GridFunction random_antisym_field(int dim, int n, double half_width,
                                  const ReflectionSpec& spec, uint64_t seed);

} // namespace logschrod
