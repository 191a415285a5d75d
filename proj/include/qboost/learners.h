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

#ifndef QBOOST_LEARNERS_H
#define QBOOST_LEARNERS_H

#include <optional>
#include <string>
#include <vector>

#include "qboost/boosting.h"
#include "qboost/concepts.h"

namespace qboost {

struct AmplitudeSieve {
    double eps1 = 0;
    double eps2 = 0;
    double samples = 0;
    std::vector<Mask> candidates;
    std::vector<double> estimates;
    std::vector<Mask> survivors;
    std::vector<double> survivor_estimates;
};

struct LearningOutcome {
    std::string learner;
    ParityDecomposition hypothesis;
    /// |<phi|psi>|^2, filled in exact mode.
    std::optional<double> achieved_fidelity;
    /// Set by the caller that planted the instance.
    std::optional<double> opt_lower_bound;
    CopyLedger ledger;
    uint64_t seed = 0;
    int kappa = 0;
    std::optional<StopReason> stop;
    std::optional<BoostingConfig> config;
    std::optional<double> log2_sstar;
    bool sstar_clamped = false;
    std::optional<AmplitudeSieve> sieve;
    std::vector<std::string> warnings;
};

void to_json(nlohmann::json &j, const LearningOutcome &o);

/// Proper parity learner wrapped as an outcome with a single label.
LearningOutcome agnostic_learn_parity(CopySource &src, double tau, double eps, double delta);

LearningOutcome agnostic_learn_dt(CopySource &src, int s, double eps, double delta, const BoostingLimits &limits = {});

/// Routes through the tree learner with s = 2^{k+1} - 1.
LearningOutcome agnostic_learn_junta(CopySource &src, int k, double eps, double delta,
                                     const BoostingLimits &limits = {});

LearningOutcome agnostic_learn_dnf(CopySource &src, int s, double eps, double delta, const MansourConstants &mansour,
                                   const BoostingLimits &limits = {});

LearningOutcome agnostic_learn_junta_noboost(CopySource &src, int k, double eps, double delta);

struct PacOutcome {
    ParityDecomposition decomposition;
    /// g(x) as a 0/1 truth table, where g = 1 means h(x) < 0.
    std::vector<uint8_t> hypothesis;
    int kappa = 0;
    StopReason stop = StopReason::TMax;
    std::vector<IterationRecord> trace;
    double eps_s = 0;
    double eta = 0;
    double t_max = 0;
    double mu = 0;
    double log2_sstar = 0;
    bool sstar_clamped = false;
    CopyLedger ledger;
};

void to_json(nlohmann::json &j, const PacOutcome &o);

/// Sign rounding of h(x) = Re sum_i beta_i chi_i(x). Ties go to +1 (bit 0).
std::vector<uint8_t> sign_round(const ParityDecomposition &d, int n);

PacOutcome pac_learn_depth3(CopySource &src, int s, int m, double eps, double delta, const MansourConstants &mansour,
                            const BoostingLimits &limits = {});

/// Fraction of inputs where the tables agree.
double agreement(std::span<const uint8_t> a, std::span<const uint8_t> b);

}  // namespace qboost

#endif
