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

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "qboost/experiment.h"

using namespace qboost;

namespace {

ExperimentConfig parity_config(std::size_t seeds) {
    ExperimentConfig cfg;
    cfg.learner = LearnerKind::Parity;
    cfg.planted.n = 8;
    cfg.opt_lb = 0.8;
    cfg.eps = 0.05;
    cfg.delta = 0.05;
    cfg.seeds.resize(seeds);
    std::iota(cfg.seeds.begin(), cfg.seeds.end(), uint64_t{0});
    return cfg;
}

std::string strip_wallclock(const std::string &jsonl) {
    std::istringstream in(jsonl);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        auto rec = nlohmann::json::parse(line);
        rec.erase("wallclock_s");
        out += rec.dump() + "\n";
    }
    return out;
}

}  // namespace

TEST(experiment, corrupted_state_has_requested_fidelity) {
    for (double opt : {1.0, 0.9, 0.5, 0.1}) {
        for (uint64_t seed = 0; seed < 10; seed++) {
            ConceptParams p;
            p.n = 6;
            p.size = 5;
            BooleanConcept f = random_concept(ConceptKind::DecisionTree, p, seed);
            StateVector psi = make_corrupted_state(f, opt, seed + 100);
            EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
            EXPECT_NEAR(fidelity(psi, phase_state_of(f, p.n)), opt, 1e-9);
        }
    }
    EXPECT_THROW(make_corrupted_state(StateVector::random(3, 0), 0.0, 1), ParameterError);
    EXPECT_THROW(make_corrupted_state(StateVector::random(3, 0), 1.5, 1), ParameterError);
}

TEST(experiment, corrupted_state_is_reproducible) {
    StateVector planted = StateVector::random(5, 1);
    StateVector a = make_corrupted_state(planted, 0.7, 42);
    StateVector b = make_corrupted_state(planted, 0.7, 42);
    StateVector c = make_corrupted_state(planted, 0.7, 43);
    for (std::size_t x = 0; x < a.dim(); x++) {
        EXPECT_EQ(a[x], b[x]);
    }
    EXPECT_LT(fidelity(a, c), 1.0 - 1e-6);
}

TEST(experiment, learner_names_round_trip) {
    for (auto k : {LearnerKind::Parity, LearnerKind::Dt, LearnerKind::Junta, LearnerKind::JuntaNoBoost,
                   LearnerKind::Dnf, LearnerKind::Depth3}) {
        EXPECT_EQ(parse_learner(learner_name(k)), k);
    }
    EXPECT_THROW(parse_learner("svm"), ParameterError);
}

TEST(experiment, validation_rejects_bad_fields) {
    auto cfg = parity_config(1);
    cfg.eps = 1.5;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(1);
    cfg.delta = 0;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(1);
    cfg.planted.n = 0;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(1);
    cfg.planted.n = 25;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(0);
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(1);
    cfg.opt_lb = 0;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(1);
    cfg.learner = LearnerKind::Dt;
    cfg.planted.size = 4;
    EXPECT_THROW(cfg.validate(), ParameterError);
    cfg = parity_config(1);
    cfg.learner = LearnerKind::Depth3;
    cfg.planted.size = 2;
    cfg.planted.width = 2;
    cfg.planted.m = 2;
    cfg.opt_lb = 0.9;
    EXPECT_THROW(cfg.validate(), ParameterError);
    EXPECT_THROW(run_experiment(cfg), ParameterError);
}

TEST(experiment, parity_batch_writes_one_record_per_seed) {
    auto cfg = parity_config(50);
    std::ostringstream jsonl;
    std::ostringstream summary;
    ExperimentSummary totals;
    auto records = run_experiment(cfg, &jsonl, &summary, &totals);
    ASSERT_EQ(records.size(), 50u);
    EXPECT_EQ(totals.runs, 50u);
    EXPECT_EQ(totals.errors, 0u);
    EXPECT_GE(totals.successes, 48u);
    std::istringstream in(jsonl.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        auto rec = nlohmann::json::parse(line);
        EXPECT_EQ(rec["seed"].get<uint64_t>(), count);
        EXPECT_EQ(rec["schema"].get<int>(), RECORD_SCHEMA_VERSION);
        EXPECT_TRUE(rec["error"].is_null());
        EXPECT_TRUE(rec.contains("ledger"));
        count++;
    }
    EXPECT_EQ(count, 50u);
    EXPECT_NE(summary.str().find("parity"), std::string::npos);
}

TEST(experiment, output_is_reproducible_modulo_wallclock) {
    for (auto mode : {OracleMode::Exact, OracleMode::Sampled}) {
        auto cfg = parity_config(8);
        cfg.mode = mode;
        std::ostringstream a;
        std::ostringstream b;
        run_experiment(cfg, &a);
        run_experiment(cfg, &b);
        EXPECT_EQ(strip_wallclock(a.str()), strip_wallclock(b.str()));
        EXPECT_FALSE(a.str().empty());
    }
}

TEST(experiment, tree_records_report_fidelity) {
    ExperimentConfig cfg;
    cfg.learner = LearnerKind::Dt;
    cfg.planted.n = 6;
    cfg.planted.size = 5;
    cfg.opt_lb = 0.9;
    cfg.eps = 0.15;
    cfg.seeds = {3, 4};
    auto records = run_experiment(cfg);
    for (const auto &rec : records) {
        ASSERT_TRUE(rec["error"].is_null()) << rec.dump();
        EXPECT_GE(rec["achieved_fidelity"].get<double>(), 0.9 - 0.15);
        EXPECT_TRUE(rec["success"].get<bool>());
    }
}

TEST(experiment, per_seed_failures_become_error_records) {
    ExperimentConfig cfg;
    cfg.learner = LearnerKind::Dt;
    cfg.planted.n = 6;
    cfg.planted.size = 5;
    cfg.seeds = {0, 1, 2};
    cfg.limits.max_t_max = 10;
    ExperimentSummary totals;
    std::vector<nlohmann::json> records;
    ASSERT_NO_THROW(records = run_experiment(cfg, nullptr, nullptr, &totals));
    ASSERT_EQ(records.size(), 3u);
    EXPECT_EQ(totals.errors, 3u);
    for (const auto &rec : records) {
        EXPECT_TRUE(rec["error"].is_string());
        EXPECT_FALSE(rec["success"].get<bool>());
    }
}

TEST(experiment, swap_calibration_rate) {
    EXPECT_LE(swap_failure_rate(0.5, 0.05, 0.01, 500, 1), 0.02);
    EXPECT_LE(swap_failure_rate(0.0, 0.05, 0.01, 500, 2), 0.02);
}
