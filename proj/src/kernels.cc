// Copyright 2026 The qboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qboost/kernels.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qboost::kernels {

namespace {

template <typename T>
void fwht_serial_impl(std::span<T> v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t base = 0; base < n; base += h << 1) {
            for (std::size_t j = base; j < base + h; j++) {
                T a = v[j];
                T b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

template <typename T>
void fwht_parallel_impl(std::span<T> v) {
    const std::size_t n = v.size();
    const std::ptrdiff_t half = (std::ptrdiff_t)(n >> 1);
    T *data = v.data();
    for (std::size_t h = 1; h < n; h <<= 1) {
        // Pair index i maps to the butterfly (j, j + h) with j = (i / h) * 2h + i % h.
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < half; i++) {
            std::size_t u = (std::size_t)i;
            std::size_t j = (u / h) * (h << 1) + (u % h);
            T a = data[j];
            T b = data[j + h];
            data[j] = a + b;
            data[j + h] = a - b;
        }
    }
}

inline std::size_t num_chunks(std::size_t n) {
    return (n + REDUCTION_CHUNK - 1) / REDUCTION_CHUNK;
}

cplx inner_chunk(const cplx *a, const cplx *b, std::size_t lo, std::size_t hi) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = lo; i < hi; i++) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double norm_chunk(const cplx *a, std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; i++) {
        acc += std::norm(a[i]);
    }
    return acc;
}

void check_same_size(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("kernel operands differ in length");
    }
}

}  // namespace

namespace serial {

void fwht(std::span<cplx> v) {
    fwht_serial_impl(v);
}

void fwht(std::span<double> v) {
    fwht_serial_impl(v);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    check_same_size(a, b);
    cplx total{0.0, 0.0};
    std::size_t n = a.size();
    for (std::size_t c = 0; c < num_chunks(n); c++) {
        std::size_t lo = c * REDUCTION_CHUNK;
        std::size_t hi = std::min(n, lo + REDUCTION_CHUNK);
        total += inner_chunk(a.data(), b.data(), lo, hi);
    }
    return total;
}

double norm_sq(std::span<const cplx> v) {
    double total = 0.0;
    std::size_t n = v.size();
    for (std::size_t c = 0; c < num_chunks(n); c++) {
        std::size_t lo = c * REDUCTION_CHUNK;
        std::size_t hi = std::min(n, lo + REDUCTION_CHUNK);
        total += norm_chunk(v.data(), lo, hi);
    }
    return total;
}

void fill_phase(std::span<cplx> out, std::span<const uint8_t> bits, double scale) {
    for (std::size_t x = 0; x < out.size(); x++) {
        out[x] = cplx{bits[x] ? -scale : scale, 0.0};
    }
}

}  // namespace serial

namespace parallel {

void fwht(std::span<cplx> v) {
    fwht_parallel_impl(v);
}

void fwht(std::span<double> v) {
    fwht_parallel_impl(v);
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    check_same_size(a, b);
    std::size_t n = a.size();
    std::ptrdiff_t chunks = (std::ptrdiff_t)num_chunks(n);
    std::vector<cplx> partial(chunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < chunks; c++) {
        std::size_t lo = (std::size_t)c * REDUCTION_CHUNK;
        std::size_t hi = std::min(n, lo + REDUCTION_CHUNK);
        partial[c] = inner_chunk(a.data(), b.data(), lo, hi);
    }
    cplx total{0.0, 0.0};
    for (const cplx &p : partial) {
        total += p;
    }
    return total;
}

double norm_sq(std::span<const cplx> v) {
    std::size_t n = v.size();
    std::ptrdiff_t chunks = (std::ptrdiff_t)num_chunks(n);
    std::vector<double> partial(chunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < chunks; c++) {
        std::size_t lo = (std::size_t)c * REDUCTION_CHUNK;
        std::size_t hi = std::min(n, lo + REDUCTION_CHUNK);
        partial[c] = norm_chunk(v.data(), lo, hi);
    }
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

void fill_phase(std::span<cplx> out, std::span<const uint8_t> bits, double scale) {
    std::ptrdiff_t n = (std::ptrdiff_t)out.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t x = 0; x < n; x++) {
        out[x] = cplx{bits[x] ? -scale : scale, 0.0};
    }
}

}  // namespace parallel

void fwht(std::span<cplx> v) {
    if (v.size() >= PARALLEL_THRESHOLD) {
        parallel::fwht(v);
    } else {
        serial::fwht(v);
    }
}

void fwht(std::span<double> v) {
    if (v.size() >= PARALLEL_THRESHOLD) {
        parallel::fwht(v);
    } else {
        serial::fwht(v);
    }
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    return a.size() >= PARALLEL_THRESHOLD ? parallel::inner(a, b) : serial::inner(a, b);
}

double norm_sq(std::span<const cplx> v) {
    return v.size() >= PARALLEL_THRESHOLD ? parallel::norm_sq(v) : serial::norm_sq(v);
}

void fill_phase(std::span<cplx> out, std::span<const uint8_t> bits, double scale) {
    if (out.size() >= PARALLEL_THRESHOLD) {
        parallel::fill_phase(out, bits, scale);
    } else {
        serial::fill_phase(out, bits, scale);
    }
}

}  // namespace qboost::kernels
