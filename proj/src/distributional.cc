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

#include "qboost/distributional.h"

#include <algorithm>
#include <cmath>

namespace qboost {

LabelFunction::LabelFunction(int n_, std::vector<double> phi_) : n(n_), phi(std::move(phi_)) {
    check_qubit_count(n);
    if (phi.size() != (std::size_t{1} << n)) {
        throw ParameterError("label table must have 2^n entries");
    }
    for (double v : phi) {
        if (!(v >= -1.0 && v <= 1.0)) {
            throw ParameterError("label bias must lie in [-1, 1]");
        }
    }
}

double LabelFunction::gamma() const {
    double g = 0;
    for (double v : phi) {
        g += v * v;
    }
    return g / (double)phi.size();
}

StateVector build_psi_D(const LabelFunction &phi) {
    check_qubit_count(phi.n + 1);
    const std::size_t half = phi.phi.size();
    const double scale = std::pow(2.0, -0.5 * phi.n);
    std::vector<cplx> amps(2 * half);
    for (std::size_t x = 0; x < half; x++) {
        double p = phi.phi[x];
        amps[x] = scale * std::sqrt((1.0 + p) / 2.0);
        amps[x | half] = scale * std::sqrt((1.0 - p) / 2.0);
    }
    return StateVector(phi.n + 1, std::move(amps));
}

PostSelection postselect_last_qubit(const StateVector &psi_D) {
    const int n = psi_D.num_qubits() - 1;
    check_qubit_count(n);
    const std::size_t half = std::size_t{1} << n;
    std::vector<cplx> branch(half);
    for (std::size_t x = 0; x < half; x++) {
        branch[x] = (psi_D[x] - psi_D[x | half]) * M_SQRT1_2;
    }
    double p = kernels::norm_sq(branch);
    if (p < 1e-12) {
        throw DegenerateResidual("post-selection succeeds with probability below 1e-12");
    }
    PostSelection out{StateVector(n, std::move(branch)).scaled(1.0 / std::sqrt(p)), p, 2.0 * p};
    return out;
}

OverlapWindow verify_overlap_window(const LabelFunction &phi, std::span<const uint8_t> h) {
    if (phi.n > 16) {
        throw ResourceError("overlap window check needs n <= 16");
    }
    if (h.size() != phi.phi.size()) {
        throw ContractViolation("hypothesis table size does not match 2^n");
    }
    OverlapWindow w;
    const double scale = std::ldexp(1.0, -phi.n);
    for (std::size_t x = 0; x < h.size(); x++) {
        double p = phi.phi[x];
        double sign = h[x] ? -1.0 : 1.0;
        w.overlap += scale * sign * (std::sqrt((1.0 + p) / 2.0) - std::sqrt((1.0 - p) / 2.0));
        w.expectation += scale * sign * p;
    }
    w.gamma = phi.gamma();
    w.lo = (w.expectation - w.gamma / 2.0) * M_SQRT1_2;
    w.hi = (w.expectation + w.gamma / 2.0) * M_SQRT1_2;
    w.contains = w.overlap >= w.lo - 1e-12 && w.overlap <= w.hi + 1e-12;
    return w;
}

namespace {

double exact_margin(const LabelFunction &phi, std::span<const uint8_t> h) {
    double m = 0;
    for (std::size_t x = 0; x < h.size(); x++) {
        m += (h[x] ? -1.0 : 1.0) * phi.phi[x];
    }
    return m / (double)h.size();
}

}  // namespace

DistributionalOutcome distributional_learn(const LabelFunction &phi, const StateLearner &learner, double eps,
                                           const DistributionalOptions &options) {
    if (!(eps > 0)) {
        throw ParameterError("eps must be positive");
    }
    if (!(options.sign_delta > 0 && options.sign_delta < 1)) {
        throw ParameterError("sign_delta must lie in (0, 1)");
    }
    DistributionalOutcome out;
    out.gamma = phi.gamma();
    if (out.gamma < options.gamma_floor) {
        throw ConfigError("E[phi^2] is below the configured floor");
    }
    StateVector psi_D = build_psi_D(phi);
    PostSelection ps = postselect_last_qubit(psi_D);
    out.success_prob = ps.success_prob;

    CopySource root(psi_D, options.mode, options.seed);
    double cap = std::ceil(20.0 / ps.success_prob * std::log(1e6));
    CopySource post = derive_postselected(root, ps.state, ps.success_prob, cap);
    out.decomposition = learner(post);
    out.hypothesis = sign_round(out.decomposition, phi.n);

    // Copies cannot fix the global sign of the post-selected state, but labelled
    // samples can: (-1)^b h(x) over computational-basis outcomes of psi_D has mean E[phi h].
    double estimate;
    if (options.mode == OracleMode::Exact) {
        estimate = exact_margin(phi, out.hypothesis);
    } else {
        double t = std::min(eps / 2.0, 0.5);
        auto shots = (uint64_t)std::ceil(std::log(2.0 / options.sign_delta) / (2.0 * t * t));
        const Mask half = Mask{1} << phi.n;
        double sum = 0;
        for (Mask z : basis_sample(root, shots, false)) {
            Mask x = z & (half - 1);
            double label = (z & half) ? -1.0 : 1.0;
            sum += label * (out.hypothesis[x] ? -1.0 : 1.0);
        }
        estimate = sum / (double)shots;
    }
    if (estimate < 0) {
        out.sign_flipped = true;
        for (auto &b : out.hypothesis) {
            b ^= 1;
        }
        for (auto &c : out.decomposition.coefficients) {
            c = -c;
        }
    }
    out.margin = exact_margin(phi, out.hypothesis);
    out.ledger = root.ledger();
    return out;
}

}  // namespace qboost
