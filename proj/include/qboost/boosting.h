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

#ifndef QBOOST_BOOSTING_H
#define QBOOST_BOOSTING_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qboost/weaklearn.h"

namespace qboost {

/// Hypothesis sum_i c_i |chi_{S_i}>.
struct ParityDecomposition {
    std::vector<ParityLabel> labels;
    std::vector<cplx> coefficients;

    StateVector to_state(int n) const;
    /// Re sum_i c_i chi_i(x) with chi_i(x) = (-1)^{<S_i, x>}.
    double real_value(Mask x) const;
};

void to_json(nlohmann::json &j, const ParityDecomposition &d);

enum class StopReason { FidelityBreak, NormBreak, TMax, Vacuous };
std::string stop_reason_name(StopReason reason);

struct BoostingLimits {
    /// Derived t_max above this is a configuration error.
    double max_t_max = 1e15;
};

struct BoostingConfig {
    double eps = 0;
    double delta = 0;
    Promise promise;
    OracleMode mode = OracleMode::Exact;

    double eps_s = 0;
    double eps_p = 0;
    /// eta(eps_s).
    double eta = 0;
    double t_max = 0;
    double delta_prime = 0;
    double attempt_cap = 0;
    /// eps_s * eta / 4, the squared-coefficient floor of every found label.
    double mu = 0;
    /// 1 / (eps^2 * eta(eps_s)), the scale of the asymptotic iteration bound (reference only).
    double theorem_kappa_scale = 0;

    int kappa = 0;
    double upsilon1 = 0;
    double upsilon2 = 0;
    double upsilon_prime = 0;

    static BoostingConfig derive(double eps, double delta, const Promise &promise, OracleMode mode,
                                 const BoostingLimits &limits = {});
    /// Fills in kappa and the upsilon constants that depend on it.
    void set_kappa(int k);
};

void to_json(nlohmann::json &j, const BoostingConfig &cfg);

/// Loop parameters for structure learning.
struct StructurePlan {
    double eps_s = 0;
    double eta = 0;
    double t_max = 0;
    double delta_prime = 0;
    double attempt_cap = 0;
    bool fidelity_break = true;

    static StructurePlan from(const BoostingConfig &cfg);
};

struct IterationRecord {
    int t = 0;
    ParityLabel label;
    /// Estimated |<psi_t|chi_t>|^2 (absent when the fidelity check is off).
    std::optional<double> nu;
    /// Estimated alpha_{t+1}^2 (absent when the loop broke on nu).
    std::optional<double> alpha_sq_hat;
    // Oracle values for diagnostics.
    double residual_norm_sq_before = 0;
    double residual_norm_sq_after = 0;
    double label_weight = 0;
    double residual_label_weight = 0;
    bool appended = false;
};

void to_json(nlohmann::json &j, const IterationRecord &r);

struct StructureResult {
    std::vector<ParityLabel> labels;
    StopReason stop = StopReason::TMax;
    std::vector<IterationRecord> trace;
};

StructureResult structure_learning(CopySource &src, const WeakLearner &wal, const StructurePlan &plan);
StructureResult structure_learning(CopySource &src, const WeakLearner &wal, const BoostingConfig &cfg);

struct ParameterEstimates {
    std::vector<ParityLabel> labels;
    std::vector<double> xi;
    std::vector<double> gamma_r;
    std::vector<double> gamma_i;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<cplx> beta_raw;
    std::vector<cplx> beta_hat;
    double upsilon1 = 0;
    double upsilon2 = 0;
    double upsilon_prime = 0;
};

struct CoefficientOptions {
    /// Estimate every magnitude first and use the largest label as the reference.
    bool largest_first = false;
};

/// a_j + i b_j from the magnitudes xi_1, xi_j, gamma^R_j, gamma^I_j.
cplx combine_estimates(double xi1, double xij, double gamma_r, double gamma_i);

/// (|chi_1> + phase |chi_j>) / sqrt(2).
StateVector parity_pair_state(int n, ParityLabel first, ParityLabel other, cplx phase);

ParameterEstimates estimate_projection_coefficients(CopySource &src, std::span<const ParityLabel> labels,
                                                    double eps, double mu, double delta,
                                                    CoefficientOptions options = {});

ParityDecomposition parameter_learning(CopySource &src, std::span<const ParityLabel> labels, double eps_p, double mu,
                                       double delta, ParameterEstimates *estimates_out = nullptr,
                                       CoefficientOptions options = {});

struct BoostResult {
    BoostingConfig config;
    ParityDecomposition decomposition;
    int kappa = 0;
    StopReason stop = StopReason::TMax;
    std::vector<IterationRecord> trace;
    CopyLedger ledger;
};

void to_json(nlohmann::json &j, const BoostResult &r);

BoostResult agnostic_boost(CopySource &src, const WeakLearner &wal, double eps, double delta,
                           const BoostingLimits &limits = {});

}  // namespace qboost

#endif
