// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "logschrod/grid.hpp"

namespace logschrod {

// Discrete Fourier coefficients of a periodic grid function, indexed by the
// integer frequency vector k with xi = pi k / L.
class SpectrumHandle {
  public:
    static SpectrumHandle forward(const GridFunction& u);
    GridFunction inverse() const;

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    double half_width() const { return half_width_; }

    std::span<std::complex<double>> coefficients() { return coef_; }
    std::span<const std::complex<double>> coefficients() const { return coef_; }

    // |xi|^2 at a flat coefficient index.
    double xi_squared(std::ptrdiff_t flat) const;

    // Signed integer frequency along one axis for an axis index.
    int signed_freq(int axis_index) const;

    // Largest Hermitian-symmetry defect relative to max |coef| (real input
    // should give ~1e-16).
    double hermitian_defect() const;

  private:
    int dim_ = 1;
    int n_ = 0;
    double half_width_ = 0.0;
    std::vector<std::complex<double>> coef_;
};

// (I - Laplacian)^log on the torus: multiplier log(1 + |xi|^2).
GridFunction apply_symbol_log(const GridFunction& u, Exec exec = Exec::parallel);

// (I - Laplacian)^s on the torus: multiplier (1 + |xi|^2)^s; s = 0 is the
// identity exactly. Requires 0 <= s < 1.
GridFunction apply_symbol_s(const GridFunction& u, double s, Exec exec = Exec::parallel);

// Solve (apply_symbol_log + m I) v = rhs exactly: divide by log(1+|xi|^2)+m.
GridFunction inverse_shifted_symbol(const GridFunction& rhs, double m,
                                    Exec exec = Exec::parallel);

// max-norm of apply_symbol_s(u, s) - u - s * apply_symbol_log(u).
double taylor_residual(const GridFunction& u, double s);

} // namespace logschrod
