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

#ifndef QBOOST_EXPERIMENT_H
#define QBOOST_EXPERIMENT_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qboost/learners.h"

namespace qboost {

constexpr int RECORD_SCHEMA_VERSION = 1;
extern const char *const VERSION_TAG;

/// sqrt(opt_lb) |planted> + sqrt(1 - opt_lb) |junk>, junk a seeded random state
/// made orthogonal to |planted>.
StateVector make_corrupted_state(const StateVector &planted, double opt_lb, uint64_t junk_seed);
StateVector make_corrupted_state(const BooleanConcept &concept_, double opt_lb, uint64_t junk_seed);

enum class LearnerKind { Parity, Dt, Junta, JuntaNoBoost, Dnf, Depth3 };

LearnerKind parse_learner(const std::string &text);
std::string learner_name(LearnerKind kind);

struct ExperimentConfig {
    LearnerKind learner = LearnerKind::Dt;
    /// Planted concept; n lives here.
    ConceptParams planted;
    /// Class parameter handed to the learner: s for dt/dnf/depth3, k for juntas. 0 means "same as planted".
    int class_size = 0;
    int class_k = 0;
    int class_m = 0;
    double opt_lb = 1.0;
    double eps = 0.1;
    double delta = 0.1;
    /// Parity learner threshold; 0 means opt_lb.
    double tau = 0;
    OracleMode mode = OracleMode::Exact;
    std::vector<uint64_t> seeds{0};
    MansourConstants mansour;
    BoostingLimits limits;

    /// Throws ParameterError on any invalid field.
    void validate() const;
    int effective_size() const;
    int effective_k() const;
    int effective_m() const;
};

void to_json(nlohmann::json &j, const ExperimentConfig &cfg);

struct ExperimentSummary {
    std::size_t runs = 0;
    std::size_t successes = 0;
    std::size_t errors = 0;
    double mean_copies = 0;
    double mean_kappa = 0;
};

/// One record per seed, in seed order. Per-seed failures become records with an
/// "error" field. Writes JSONL to `jsonl` and a summary table to `summary` when given.
std::vector<nlohmann::json> run_experiment(const ExperimentConfig &cfg, std::ostream *jsonl = nullptr,
                                           std::ostream *summary = nullptr, ExperimentSummary *totals = nullptr);

/// One seeded run, as used by run_experiment.
nlohmann::json run_single(const ExperimentConfig &cfg, uint64_t seed);

/// Fraction of `trials` sampled SWAP tests against a state with the given squared
/// overlap whose estimate misses by more than eps.
double swap_failure_rate(double overlap_sq, double eps, double delta, int trials, uint64_t seed, int n = 4);

}  // namespace qboost

#endif
