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

#ifndef QBOOST_ANALYSIS_H
#define QBOOST_ANALYSIS_H

#include <cstddef>
#include <vector>

#include "qboost/boosting.h"
#include "qboost/concepts.h"

namespace qboost {

/// Qubits in `left` versus the rest.
struct BipartitionCut {
    std::vector<int> left;

    /// Qubits 0..c-1 versus c..n-1.
    static BipartitionCut contiguous(int c);
};

constexpr double SCHMIDT_TOL = 1e-8;

/// Singular values of the amplitude matrix above tol * (largest).
std::size_t schmidt_rank(const StateVector &s, const BipartitionCut &cut, double tol = SCHMIDT_TOL);

/// Max rank over the n-1 contiguous cuts.
std::size_t bond_dimension(const StateVector &s, double tol = SCHMIDT_TOL);

/// OR_i (x_i AND y_i) on n = 2s variables, x = qubits 0..s-1 and y = qubits s..2s-1.
BooleanConcept hard_dnf_instance(int s);

/// max |M - U diag(alpha) V^T| where M[x][y] = (-1)^{f(x,y)} for the hard instance,
/// U[x][S] = prod_{i in S} x_i, V[y][S] = prod_{i in S} y_i, alpha_{} = 1 and
/// alpha_S = 2(-1)^{|S|} otherwise.
double hard_dnf_factorization_error(int s);

/// Independent coordinates: x_i = 1 with probability p[i].
std::vector<double> product_distribution(std::span<const double> p);

struct DiscriminatorReport {
    /// E_D[F C_i] in the +-1 view, one per input DNF.
    std::vector<double> correlations;
    std::size_t best_index = 0;
    double best = 0;
    /// |E_D[F]|, the constant DNF as an extra candidate.
    double constant = 0;
    double bound = 0;
    bool holds = false;
    bool holds_with_constant = false;
};

DiscriminatorReport verify_discriminator(const BooleanConcept &f, std::span<const double> dist);

struct ResidualReport {
    int t = 0;
    double alpha_sq = 0;
    double delta = 0;
    bool delta_bound_holds = false;
    double weight_sum = 0;
    /// max_i |<psi_t|phi_{C_i}>| over the inputs, and with the constant DNFs added.
    double best_overlap = 0;
    double best_overlap_with_constant = 0;
    /// Discriminator on D_{f,t}.
    DiscriminatorReport discriminator;
    double target_bound = 0;
    bool target_bound_holds = false;
    double provable_bound = 0;
    bool provable_bound_holds = false;
};

/// Exact check of the depth-3 stopping condition at the step whose span is `labels`.
/// Coefficients are the exact projections of the phase state of f.
ResidualReport residual_discriminator_check(const BooleanConcept &f, std::span<const ParityLabel> labels, double eps);

}  // namespace qboost

#endif
