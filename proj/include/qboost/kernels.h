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

#ifndef QBOOST_KERNELS_H
#define QBOOST_KERNELS_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace qboost {

using cplx = std::complex<double>;

namespace kernels {

/// Arrays at least this long use the OpenMP path in the dispatching entry points.
constexpr std::size_t PARALLEL_THRESHOLD = std::size_t{1} << 14;

/// Reductions are summed in fixed chunks of this size and then combined in
/// chunk order, so serial and parallel results are bitwise identical.
constexpr std::size_t REDUCTION_CHUNK = std::size_t{1} << 12;

namespace serial {
void fwht(std::span<cplx> v);
void fwht(std::span<double> v);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm_sq(std::span<const cplx> v);
void fill_phase(std::span<cplx> out, std::span<const uint8_t> bits, double scale);
}  // namespace serial

namespace parallel {
void fwht(std::span<cplx> v);
void fwht(std::span<double> v);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm_sq(std::span<const cplx> v);
void fill_phase(std::span<cplx> out, std::span<const uint8_t> bits, double scale);
}  // namespace parallel

/// Unnormalized in-place Walsh-Hadamard butterfly. Length must be a power of two.
void fwht(std::span<cplx> v);
void fwht(std::span<double> v);
/// Sum of conj(a[i]) * b[i].
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm_sq(std::span<const cplx> v);
/// out[x] = scale * (-1)^bits[x].
void fill_phase(std::span<cplx> out, std::span<const uint8_t> bits, double scale);

}  // namespace kernels
}  // namespace qboost

#endif
