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

#ifndef QBOOST_STATEVEC_H
#define QBOOST_STATEVEC_H

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qboost/error.h"
#include "qboost/kernels.h"

namespace qboost {

/// An n-bit string. Bit i is qubit i (little-endian indexing of amplitudes).
using Mask = uint64_t;

constexpr int MAX_QUBITS = 24;
constexpr double NORM_TOL = 1e-9;

/// chi_s(x) as a bit: <s, x> mod 2.
inline int dot_parity(Mask s, Mask x) {
    return __builtin_popcountll(s & x) & 1;
}

/// Throws ResourceError when n is outside [1, MAX_QUBITS].
void check_qubit_count(int n);

/// Identifies the parity state |chi_S> = H^n |S>.
struct ParityLabel {
    Mask bits = 0;
    auto operator<=>(const ParityLabel &) const = default;
    std::string str(int n) const;
};

/// Dense amplitude vector. Immutable once built.
class StateVector {
   public:
    StateVector() = default;
    /// Takes the amplitudes as given, without normalizing.
    StateVector(int n, std::vector<cplx> amps);

    /// |x>.
    static StateVector basis(int n, Mask x);
    /// |chi_S> with amplitudes 2^{-n/2} (-1)^{<S,x>}.
    static StateVector parity(int n, ParityLabel s);
    /// Phase state with amplitudes 2^{-n/2} (-1)^{bits[x]}.
    static StateVector phase(int n, std::span<const uint8_t> bits);
    /// Haar-like random state from iid complex Gaussians.
    static StateVector random(int n, uint64_t seed);

    int num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    std::span<const cplx> amplitudes() const {
        return amps_;
    }
    const cplx &operator[](Mask x) const {
        return amps_[x];
    }
    double norm() const;
    StateVector normalized() const;
    StateVector scaled(cplx factor) const;

    bool operator==(const StateVector &other) const = default;

   private:
    int n_ = 0;
    std::vector<cplx> amps_;
};

/// Sum of same-size states with complex weights.
StateVector linear_combination(std::span<const cplx> weights, std::span<const StateVector> states);

/// An ordered, duplicate-free list of parity labels.
class ParitySpan {
   public:
    ParitySpan() = default;
    /// Throws ContractViolation on a repeated label.
    explicit ParitySpan(std::vector<ParityLabel> labels);

    const std::vector<ParityLabel> &labels() const {
        return labels_;
    }
    std::size_t size() const {
        return labels_.size();
    }
    bool empty() const {
        return labels_.empty();
    }
    bool contains(ParityLabel s) const;
    /// Throws ContractViolation when s is already present.
    void push_back(ParityLabel s);

   private:
    std::vector<ParityLabel> labels_;
};

struct ProjectionReport {
    std::vector<cplx> coefficients;
    double residual_norm = 0;
    std::optional<StateVector> residual;
};

/// H^{(x)n} s, normalized so that it is unitary.
StateVector walsh_hadamard(const StateVector &s);

/// <a|b>. Throws ContractViolation on size mismatch.
cplx overlap(const StateVector &a, const StateVector &b);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);

/// Coefficients beta_i = <chi_{S_i}|s> read off the transform, plus the normalized residual.
ProjectionReport project_onto_span(const StateVector &s, const ParitySpan &span);

/// The unnormalized vector sum_i c_i |chi_{S_i}>.
StateVector parity_combination(int n, std::span<const ParityLabel> labels, std::span<const cplx> coeffs);

/// Binary dump: u32 n, then 2^n (re, im) doubles, all little-endian.
void save_state(std::ostream &out, const StateVector &s);
StateVector load_state(std::istream &in);

}  // namespace qboost

#endif
