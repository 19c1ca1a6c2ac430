// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/spectral.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace logschrod {

namespace {

constexpr double kPi = 3.14159265358979323846;

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

void fft_inplace(std::vector<std::complex<double>>& data, int dim, int n, int sign) {
    int dims[3] = {n, n, n};
    fftw_complex* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft(dim, dims, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw DataError("fft: planner failure");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

void require_periodic(const GridFunction& u, const char* who) {
    if (!u.periodic()) throw DomainError(std::string(who) + ": periodic grid required");
    if (!u.all_finite()) throw DataError(std::string(who) + ": non-finite grid values");
}

// Inverse transform with a real-output contract.
GridFunction realize(std::vector<std::complex<double>>& coef, int dim, int n, double L,
                     double input_scale) {
    fft_inplace(coef, dim, n, FFTW_BACKWARD);
    GridFunction out(dim, n, L, true);
    auto vals = out.values();
    const double norm = 1.0 / static_cast<double>(coef.size());
    double max_imag = 0.0;
    for (size_t i = 0; i < coef.size(); ++i) {
        vals[i] = coef[i].real() * norm;
        max_imag = std::max(max_imag, std::abs(coef[i].imag()) * norm);
    }
    if (max_imag > 1e-12 * std::max(1.0, input_scale))
        throw DataError("spectral: imaginary residue above tolerance");
    return out;
}

template <class SymbolFn>
GridFunction apply_multiplier(const GridFunction& u, Exec exec, SymbolFn&& symbol,
                              const char* who) {
    require_periodic(u, who);
    const int dim = u.dim();
    const int n = u.points_per_axis();
    const double L = u.half_width();
    std::vector<std::complex<double>> coef(static_cast<size_t>(u.size()));
    auto vals = u.values();
    for (size_t i = 0; i < coef.size(); ++i) coef[i] = vals[i];
    fft_inplace(coef, dim, n, FFTW_FORWARD);
    const double base = kPi / L;
    par::for_each_index(u.size(), exec, [&](std::ptrdiff_t flat) {
        std::ptrdiff_t rem = flat;
        double xi2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            int k = static_cast<int>(rem % n);
            rem /= n;
            if (k > n / 2) k -= n;
            const double xi = base * k;
            xi2 += xi * xi;
        }
        coef[static_cast<size_t>(flat)] *= symbol(xi2);
    });
    return realize(coef, dim, n, L, u.max_abs());
}

} // namespace

SpectrumHandle SpectrumHandle::forward(const GridFunction& u) {
    require_periodic(u, "SpectrumHandle::forward");
    SpectrumHandle s;
    s.dim_ = u.dim();
    s.n_ = u.points_per_axis();
    s.half_width_ = u.half_width();
    s.coef_.assign(static_cast<size_t>(u.size()), {});
    auto vals = u.values();
    for (size_t i = 0; i < s.coef_.size(); ++i) s.coef_[i] = vals[i];
    fft_inplace(s.coef_, s.dim_, s.n_, FFTW_FORWARD);
    return s;
}

GridFunction SpectrumHandle::inverse() const {
    auto coef = coef_;
    double scale = 0.0;
    for (const auto& c : coef) scale = std::max(scale, std::abs(c));
    return realize(coef, dim_, n_, half_width_, scale / static_cast<double>(coef.size()));
}

int SpectrumHandle::signed_freq(int axis_index) const {
    return axis_index > n_ / 2 ? axis_index - n_ : axis_index;
}

double SpectrumHandle::xi_squared(std::ptrdiff_t flat) const {
    const double base = kPi / half_width_;
    double xi2 = 0.0;
    for (int d = 0; d < dim_; ++d) {
        const int k = signed_freq(static_cast<int>(flat % n_));
        flat /= n_;
        const double xi = base * k;
        xi2 += xi * xi;
    }
    return xi2;
}

double SpectrumHandle::hermitian_defect() const {
    double scale = 0.0;
    for (const auto& c : coef_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    std::array<int, 3> idx{}, mirror{};
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(coef_.size());
    for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
        std::ptrdiff_t rem = flat;
        for (int d = dim_ - 1; d >= 0; --d) {
            idx[static_cast<size_t>(d)] = static_cast<int>(rem % n_);
            rem /= n_;
        }
        std::ptrdiff_t mflat = 0;
        for (int d = 0; d < dim_; ++d) {
            mirror[static_cast<size_t>(d)] =
                idx[static_cast<size_t>(d)] == 0 ? 0 : n_ - idx[static_cast<size_t>(d)];
            mflat = mflat * n_ + mirror[static_cast<size_t>(d)];
        }
        const auto defect = coef_[static_cast<size_t>(flat)] -
                            std::conj(coef_[static_cast<size_t>(mflat)]);
        worst = std::max(worst, std::abs(defect));
    }
    return worst / scale;
}

GridFunction apply_symbol_log(const GridFunction& u, Exec exec) {
    return apply_multiplier(u, exec, [](double xi2) { return std::log1p(xi2); },
                            "apply_symbol_log");
}

GridFunction apply_symbol_s(const GridFunction& u, double s, Exec exec) {
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("apply_symbol_s: s must lie in [0, 1)");
    if (s == 0.0) {
        require_periodic(u, "apply_symbol_s");
        return u; // identity, exactly
    }
    return apply_multiplier(u, exec,
                            [s](double xi2) { return std::exp(s * std::log1p(xi2)); },
                            "apply_symbol_s");
}

GridFunction inverse_shifted_symbol(const GridFunction& rhs, double m, Exec exec) {
    if (!(m > 0.0)) throw DomainError("inverse_shifted_symbol: m must be positive");
    return apply_multiplier(rhs, exec,
                            [m](double xi2) { return 1.0 / (std::log1p(xi2) + m); },
                            "inverse_shifted_symbol");
}

double taylor_residual(const GridFunction& u, double s) {
    const GridFunction us = apply_symbol_s(u, s);
    const GridFunction ul = apply_symbol_log(u);
    auto a = us.values();
    auto b = u.values();
    auto c = ul.values();
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i] - s * c[i]));
    return worst;
}

} // namespace logschrod
