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

#ifndef QBOOST_DISTRIBUTIONAL_H
#define QBOOST_DISTRIBUTIONAL_H

#include <functional>
#include <vector>

#include "qboost/learners.h"

namespace qboost {

/// Bias phi(x) in [-1, 1] of the label of x under the uniform marginal.
struct LabelFunction {
    int n = 0;
    std::vector<double> phi;

    /// Throws ParameterError unless |phi| <= 1 and the table has 2^n entries.
    LabelFunction(int n, std::vector<double> phi);
    /// E_x[phi(x)^2].
    double gamma() const;
};

/// n + 1 qubits; the label is qubit n.
StateVector build_psi_D(const LabelFunction &phi);

struct PostSelection {
    StateVector state;
    /// Exact probability of reading 1 on the label qubit after a Hadamard.
    double success_prob = 0;
    /// Squared norm of the unnormalized n-qubit branch, E_x[1 - sqrt(1 - phi^2)].
    double branch_norm_sq = 0;
};

PostSelection postselect_last_qubit(const StateVector &psi_D);

struct OverlapWindow {
    double overlap = 0;
    double expectation = 0;
    double gamma = 0;
    double lo = 0;
    double hi = 0;
    bool contains = false;
};

/// <psi_1|psi_2> for the unnormalized branch psi_1 and the phase state psi_2 of h,
/// against (1/sqrt 2) [E - gamma/2, E + gamma/2] with E = E_x[(-1)^h phi].
OverlapWindow verify_overlap_window(const LabelFunction &phi, std::span<const uint8_t> h);

/// Runs on copies of the post-selected state and returns a parity decomposition.
using StateLearner = std::function<ParityDecomposition(CopySource &)>;

struct DistributionalOptions {
    OracleMode mode = OracleMode::Exact;
    uint64_t seed = 0;
    double gamma_floor = 1e-3;
    /// Failure probability for the sign-resolution estimate.
    double sign_delta = 0.01;
};

struct DistributionalOutcome {
    ParityDecomposition decomposition;
    /// h as a 0/1 table; the +-1 hypothesis is (-1)^h.
    std::vector<uint8_t> hypothesis;
    /// E_x[phi(x) (-1)^{h(x)}].
    double margin = 0;
    double gamma = 0;
    double success_prob = 0;
    bool sign_flipped = false;
    CopyLedger ledger;
};

/// Sign-rounds the learner's output and fixes the global sign from
/// computational-basis samples of psi_D, estimated to accuracy eps/2.
DistributionalOutcome distributional_learn(const LabelFunction &phi, const StateLearner &learner, double eps,
                                           const DistributionalOptions &options = {});

}  // namespace qboost

#endif
