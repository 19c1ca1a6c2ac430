// Copyright 2026 The logschrod authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <omp.h>

namespace logschrod {

// Execution policy for the data-parallel kernels. Every kernel has a serial
// reference path; tests compare the two and the bench target times them.
enum class Exec { serial, parallel };

namespace par {

// Thread budget: LOGSCHROD_THREADS caps the OpenMP default when set.
int max_threads();

template <class F>
void for_each_index(std::ptrdiff_t n, Exec exec, F&& body) {
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
    }
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

// Sum of term(i) for i in [0, n). Parallel path accumulates per-thread
// partials and combines them in thread order, so the result is reproducible
// for a fixed thread count.
template <class F>
double indexed_sum(std::ptrdiff_t n, Exec exec, F&& term) {
    if (exec == Exec::serial) {
        double acc = 0.0;
        for (std::ptrdiff_t i = 0; i < n; ++i) acc += term(i);
        return acc;
    }
    const int nt = max_threads();
    std::vector<double> partial(static_cast<size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        double acc = 0.0;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) acc += term(i);
        partial[static_cast<size_t>(omp_get_thread_num())] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

// Minimum of value(i) with the smallest attaining index (deterministic ties).
template <class F>
std::pair<double, std::ptrdiff_t> indexed_min(std::ptrdiff_t n, Exec exec, F&& value) {
    if (n <= 0) return {0.0, -1};
    if (exec == Exec::serial) {
        double best = value(0);
        std::ptrdiff_t at = 0;
        for (std::ptrdiff_t i = 1; i < n; ++i) {
            const double v = value(i);
            if (v < best) { best = v; at = i; }
        }
        return {best, at};
    }
    const int nt = max_threads();
    std::vector<double> bv(static_cast<size_t>(nt), 0.0);
    std::vector<std::ptrdiff_t> bi(static_cast<size_t>(nt), -1);
#pragma omp parallel num_threads(nt)
    {
        double best = 0.0;
        std::ptrdiff_t at = -1;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const double v = value(i);
            if (at < 0 || v < best) { best = v; at = i; }
        }
        const auto t = static_cast<size_t>(omp_get_thread_num());
        bv[t] = best;
        bi[t] = at;
    }
    double best = 0.0;
    std::ptrdiff_t at = -1;
    for (size_t t = 0; t < bv.size(); ++t) {
        if (bi[t] < 0) continue;
        if (at < 0 || bv[t] < best || (bv[t] == best && bi[t] < at)) {
            best = bv[t];
            at = bi[t];
        }
    }
    return {best, at};
}

double sum(std::span<const double> a, Exec exec = Exec::parallel);
double dot(std::span<const double> a, std::span<const double> b, Exec exec = Exec::parallel);
double max_abs(std::span<const double> a, Exec exec = Exec::parallel);
std::pair<double, std::ptrdiff_t> max_element(std::span<const double> a, Exec exec = Exec::parallel);
std::pair<double, std::ptrdiff_t> min_element(std::span<const double> a, Exec exec = Exec::parallel);

} // namespace par
} // namespace logschrod
