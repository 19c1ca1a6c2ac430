// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#include "logschrod/par.hpp"

#include <algorithm>
#include <cstdlib>

namespace logschrod::par {

int max_threads() {
    static const int cached = [] {
        int nt = omp_get_max_threads();
        if (const char* env = std::getenv("LOGSCHROD_THREADS")) {
            const int cap = std::atoi(env);
            if (cap >= 1) nt = std::min(nt, cap);
        }
        return std::max(1, nt);
    }();
    return cached;
}

double sum(std::span<const double> a, Exec exec) {
    return indexed_sum(static_cast<std::ptrdiff_t>(a.size()), exec,
                       [&](std::ptrdiff_t i) { return a[static_cast<size_t>(i)]; });
}

double dot(std::span<const double> a, std::span<const double> b, Exec exec) {
    return indexed_sum(static_cast<std::ptrdiff_t>(a.size()), exec, [&](std::ptrdiff_t i) {
        return a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
    });
}

double max_abs(std::span<const double> a, Exec exec) {
    auto [negmax, at] = indexed_min(static_cast<std::ptrdiff_t>(a.size()), exec,
                                    [&](std::ptrdiff_t i) {
                                        const double v = a[static_cast<size_t>(i)];
                                        return -(v < 0 ? -v : v);
                                    });
    (void)at;
    return a.empty() ? 0.0 : -negmax;
}

std::pair<double, std::ptrdiff_t> max_element(std::span<const double> a, Exec exec) {
    auto [v, i] = indexed_min(static_cast<std::ptrdiff_t>(a.size()), exec,
                              [&](std::ptrdiff_t k) { return -a[static_cast<size_t>(k)]; });
    return {-v, i};
}

std::pair<double, std::ptrdiff_t> min_element(std::span<const double> a, Exec exec) {
    return indexed_min(static_cast<std::ptrdiff_t>(a.size()), exec,
                       [&](std::ptrdiff_t k) { return a[static_cast<size_t>(k)]; });
}

} // namespace logschrod::par
