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

#include "qboost/statevec.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

namespace qboost {

void check_qubit_count(int n) {
    if (n < 1 || n > MAX_QUBITS) {
        throw ResourceError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(MAX_QUBITS) + "]");
    }
}

std::string ParityLabel::str(int n) const {
    std::string out;
    for (int i = 0; i < n; i++) {
        out.push_back((bits >> i) & 1 ? '1' : '0');
    }
    return out;
}

StateVector::StateVector(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {
    check_qubit_count(n);
    if (amps_.size() != (std::size_t{1} << n)) {
        throw ContractViolation("amplitude count does not match 2^n");
    }
}

StateVector StateVector::basis(int n, Mask x) {
    check_qubit_count(n);
    if (x >> n) {
        throw ContractViolation("basis index out of range");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    amps[x] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector StateVector::parity(int n, ParityLabel s) {
    check_qubit_count(n);
    if (s.bits >> n) {
        throw ContractViolation("parity label out of range");
    }
    std::size_t dim = std::size_t{1} << n;
    double a = std::pow(2.0, -0.5 * n);
    std::vector<cplx> amps(dim);
    for (std::size_t x = 0; x < dim; x++) {
        amps[x] = dot_parity(s.bits, x) ? -a : a;
    }
    return StateVector(n, std::move(amps));
}

StateVector StateVector::phase(int n, std::span<const uint8_t> bits) {
    check_qubit_count(n);
    if (bits.size() != (std::size_t{1} << n)) {
        throw ContractViolation("truth table size does not match 2^n");
    }
    std::vector<cplx> amps(bits.size());
    kernels::fill_phase(amps, bits, std::pow(2.0, -0.5 * n));
    return StateVector(n, std::move(amps));
}

StateVector StateVector::random(int n, uint64_t seed) {
    check_qubit_count(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        double re = g(rng);
        double im = g(rng);
        a = {re, im};
    }
    return StateVector(n, std::move(amps)).normalized();
}

double StateVector::norm() const {
    return std::sqrt(kernels::norm_sq(amps_));
}

StateVector StateVector::normalized() const {
    double nrm = norm();
    if (nrm < 1e-300) {
        throw DegenerateResidual("cannot normalize a zero vector");
    }
    return scaled(1.0 / nrm);
}

StateVector StateVector::scaled(cplx factor) const {
    std::vector<cplx> out(amps_);
    for (auto &a : out) {
        a *= factor;
    }
    return StateVector(n_, std::move(out));
}

StateVector linear_combination(std::span<const cplx> weights, std::span<const StateVector> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw ContractViolation("linear_combination needs matching nonempty inputs");
    }
    int n = states[0].num_qubits();
    std::vector<cplx> out(states[0].dim());
    for (std::size_t k = 0; k < states.size(); k++) {
        if (states[k].num_qubits() != n) {
            throw ContractViolation("dimension mismatch");
        }
        auto amps = states[k].amplitudes();
        for (std::size_t x = 0; x < out.size(); x++) {
            out[x] += weights[k] * amps[x];
        }
    }
    return StateVector(n, std::move(out));
}

ParitySpan::ParitySpan(std::vector<ParityLabel> labels) {
    for (auto s : labels) {
        push_back(s);
    }
}

bool ParitySpan::contains(ParityLabel s) const {
    return std::find(labels_.begin(), labels_.end(), s) != labels_.end();
}

void ParitySpan::push_back(ParityLabel s) {
    if (contains(s)) {
        throw ContractViolation("duplicate parity label " + std::to_string(s.bits));
    }
    labels_.push_back(s);
}

StateVector walsh_hadamard(const StateVector &s) {
    std::vector<cplx> v(s.amplitudes().begin(), s.amplitudes().end());
    kernels::fwht(std::span<cplx>(v));
    double scale = std::pow(2.0, -0.5 * s.num_qubits());
    for (auto &a : v) {
        a *= scale;
    }
    return StateVector(s.num_qubits(), std::move(v));
}

cplx overlap(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ContractViolation("overlap of states with different qubit counts");
    }
    return kernels::inner(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(overlap(a, b));
}

ProjectionReport project_onto_span(const StateVector &s, const ParitySpan &span) {
    if (span.empty()) {
        throw ContractViolation("projection onto an empty span");
    }
    int n = s.num_qubits();
    for (auto l : span.labels()) {
        if (l.bits >> n) {
            throw ContractViolation("parity label out of range");
        }
    }
    // <chi_S|s> is entry S of the normalized transform.
    StateVector hat = walsh_hadamard(s);
    std::vector<cplx> rest(hat.amplitudes().begin(), hat.amplitudes().end());
    ProjectionReport report;
    for (auto l : span.labels()) {
        report.coefficients.push_back(rest[l.bits]);
        rest[l.bits] = 0.0;
    }
    report.residual_norm = std::sqrt(kernels::norm_sq(rest));
    if (report.residual_norm >= NORM_TOL) {
        StateVector back = walsh_hadamard(StateVector(n, std::move(rest)));
        report.residual = back.scaled(1.0 / report.residual_norm);
    }
    return report;
}

StateVector parity_combination(int n, std::span<const ParityLabel> labels, std::span<const cplx> coeffs) {
    check_qubit_count(n);
    if (labels.size() != coeffs.size()) {
        throw ContractViolation("label and coefficient counts differ");
    }
    std::vector<cplx> hat(std::size_t{1} << n);
    for (std::size_t i = 0; i < labels.size(); i++) {
        if (labels[i].bits >> n) {
            throw ContractViolation("parity label out of range");
        }
        hat[labels[i].bits] += coeffs[i];
    }
    return walsh_hadamard(StateVector(n, std::move(hat)));
}

namespace {

template <typename T>
void write_le(std::ostream &out, T value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(buf, buf + sizeof(T));
    }
    out.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream &in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(buf), sizeof(T))) {
        throw ParameterError("truncated state file");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(buf, buf + sizeof(T));
    }
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

}  // namespace

void save_state(std::ostream &out, const StateVector &s) {
    write_le<uint32_t>(out, (uint32_t)s.num_qubits());
    for (const cplx &a : s.amplitudes()) {
        write_le<double>(out, a.real());
        write_le<double>(out, a.imag());
    }
}

StateVector load_state(std::istream &in) {
    uint32_t n = read_le<uint32_t>(in);
    if (n < 1 || n > (uint32_t)MAX_QUBITS) {
        throw ParameterError("state file has invalid qubit count");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        double re = read_le<double>(in);
        double im = read_le<double>(in);
        a = {re, im};
    }
    return StateVector((int)n, std::move(amps));
}

}  // namespace qboost
