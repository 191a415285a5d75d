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

#include <cmath>
#include <random>

#include "oracles.h"
#include "qboost/boosting.h"
#include "qboost/experiment.h"

using namespace qboost;

namespace {

std::vector<ParityLabel> distinct_labels(int n, std::size_t k, std::mt19937_64 &rng) {
    std::vector<ParityLabel> out;
    while (out.size() < k) {
        ParityLabel l{rng() & ((Mask{1} << n) - 1)};
        if (std::find(out.begin(), out.end(), l) == out.end()) {
            out.push_back(l);
        }
    }
    return out;
}

/// Random coefficients with every |beta_j|^2 >= floor and total mass `mass`.
std::vector<cplx> random_betas(std::size_t k, double floor, double mass, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> w(k);
    double sum = 0;
    for (auto &x : w) {
        x = u(rng);
        sum += x;
    }
    std::vector<cplx> out(k);
    double spare = mass - floor * (double)k;
    for (std::size_t j = 0; j < k; j++) {
        double m = floor + spare * w[j] / sum;
        out[j] = std::polar(std::sqrt(m), 2 * M_PI * u(rng));
    }
    return out;
}

double lambda_mass(const StateVector &psi, std::span<const ParityLabel> labels) {
    double m = 0;
    for (auto l : labels) {
        m += std::norm(oracle::parity_inner(psi, l.bits));
    }
    return m;
}

double hypothesis_fidelity(const StateVector &psi, std::span<const ParityLabel> labels, std::span<const cplx> coeffs) {
    return std::norm(overlap(psi, parity_combination(psi.num_qubits(), labels, coeffs)));
}

WeakLearner constant_learner(ParityLabel l) {
    WeakLearner w = make_parity_weak_learner();
    w.name = "constant";
    w.learn = [l](CopySource &, double, double) { return l; };
    return w;
}

}  // namespace

TEST(boosting, config_derivation) {
    Promise p{0.5, 1};
    BoostingConfig c = BoostingConfig::derive(0.2, 0.1, p, OracleMode::Exact);
    double eps_s = (4.0 / 9.0) * 0.04 / 16;
    EXPECT_DOUBLE_EQ(c.eps_s, eps_s);
    EXPECT_DOUBLE_EQ(c.eps_p, 0.1);
    EXPECT_DOUBLE_EQ(c.eta, 0.5 * eps_s);
    EXPECT_EQ(c.t_max, std::ceil(4 / (eps_s * 0.5 * eps_s)));
    EXPECT_DOUBLE_EQ(c.delta_prime, 0.1 / (3 * c.t_max));
    EXPECT_DOUBLE_EQ(c.mu, eps_s * c.eta / 4);
    EXPECT_EQ(c.attempt_cap, std::ceil(20 / eps_s * std::log(1 / c.delta_prime)));
    Promise quad{1, 2};
    EXPECT_DOUBLE_EQ(BoostingConfig::derive(0.2, 0.1, quad, OracleMode::Exact).eps_s,
                     std::pow(2.0 / 3.0, 1.5) * 0.04 / 16);
}

TEST(boosting, config_guards) {
    BoostingLimits tight;
    tight.max_t_max = 1e3;
    EXPECT_THROW(BoostingConfig::derive(0.1, 0.1, Promise{0.5, 1}, OracleMode::Exact, tight), ConfigError);
    EXPECT_THROW(BoostingConfig::derive(0.1, 0.1, Promise{0, 1}, OracleMode::Exact), ConfigError);
    EXPECT_THROW(BoostingConfig::derive(0, 0.1, Promise{0.5, 1}, OracleMode::Exact), ParameterError);
}

TEST(boosting, single_parity_stops_on_norm) {
    CopySource src(StateVector::parity(6, {45}), OracleMode::Exact, 0);
    BoostingConfig cfg = BoostingConfig::derive(0.1, 0.1, make_dt_weak_learner(3).promise, OracleMode::Exact);
    StructureResult r = structure_learning(src, make_dt_weak_learner(3), cfg);
    ASSERT_EQ(r.labels.size(), 1u);
    EXPECT_EQ(r.labels[0].bits, 45u);
    EXPECT_EQ(r.stop, StopReason::NormBreak);
}

TEST(boosting, two_parities_found_then_norm_break) {
    ParityLabel labels[2] = {{5}, {18}};
    cplx coeffs[2] = {M_SQRT1_2, M_SQRT1_2};
    StateVector psi = parity_combination(6, labels, coeffs);
    CopySource src(psi, OracleMode::Exact, 0);
    BoostResult r = agnostic_boost(src, make_parity_weak_learner(), 0.1, 0.1);
    EXPECT_EQ(r.kappa, 2);
    EXPECT_EQ(r.stop, StopReason::NormBreak);
    std::vector<Mask> got;
    for (auto l : r.decomposition.labels) {
        got.push_back(l.bits);
    }
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<Mask>{5, 18}));
    EXPECT_NEAR(fidelity(r.decomposition.to_state(6), psi), 1, 1e-9);
}

TEST(boosting, duplicate_label_aborts) {
    StateVector psi = StateVector::random(5, 1);
    CopySource src(psi, OracleMode::Exact, 0);
    StructurePlan plan = StructurePlan::from(BoostingConfig::derive(0.5, 0.1, Promise{0.5, 1}, OracleMode::Exact));
    plan.fidelity_break = false;
    EXPECT_THROW(structure_learning(src, constant_learner(ParityLabel{3}), plan), ContractViolation);
}

TEST(boosting, progress_and_iteration_cap) {
    for (uint64_t seed = 0; seed < 12; seed++) {
        BooleanConcept f = random_concept(ConceptKind::DecisionTree, ConceptParams{8, 5}, seed);
        StateVector psi = make_corrupted_state(f, 0.8, seed);
        CopySource src(psi, OracleMode::Exact, seed);
        BoostResult r = agnostic_boost(src, make_dt_weak_learner(5), 0.2, 0.1);
        double floor = r.config.eps_s * r.config.eta / 4;
        ASSERT_LE(r.kappa, std::ceil(4 / (r.config.eps_s * r.config.eta)));
        std::vector<Mask> seen;
        for (const auto &rec : r.trace) {
            if (!rec.appended) {
                continue;
            }
            ASSERT_GE(rec.residual_norm_sq_before - rec.residual_norm_sq_after, floor - 1e-12);
            ASSERT_EQ(std::count(seen.begin(), seen.end(), rec.label.bits), 0);
            seen.push_back(rec.label.bits);
        }
        double norm = 0;
        for (const cplx &c : r.decomposition.coefficients) {
            norm += std::norm(c);
        }
        ASSERT_NEAR(norm, 1, 1e-9);
    }
}

TEST(boosting, fidelity_break_leaves_little_detectable_mass) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        StateVector psi = StateVector::random(7, seed);
        CopySource src(psi, OracleMode::Exact, seed);
        BoostResult r = agnostic_boost(src, make_parity_weak_learner(), 0.5, 0.1);
        if (r.stop != StopReason::FidelityBreak) {
            continue;
        }
        std::vector<ParityLabel> span(r.decomposition.labels);
        double alpha_sq = 1 - lambda_mass(psi, span);
        double best = 0;
        for (Mask s = 0; s < psi.dim(); s++) {
            if (std::find(span.begin(), span.end(), ParityLabel{s}) == span.end()) {
                best = std::max(best, std::norm(oracle::parity_inner(psi, s)) / alpha_sq);
            }
        }
        ASSERT_LT(alpha_sq * best, 2.25 * r.config.eps_s);
    }
}

TEST(boosting, combine_formulas_exact_on_random_instances) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 100; trial++) {
        int k = 1 + trial % 6;
        std::vector<cplx> beta(k);
        for (auto &b : beta) {
            b = {u(rng), u(rng)};
        }
        double theta1 = std::arg(beta[0]);
        cplx rot = std::polar(1.0, -theta1);
        for (int j = 1; j < k; j++) {
            double xi1 = std::abs(beta[0]);
            double xij = std::abs(beta[j]);
            double gr = std::abs(beta[0] + beta[j]) / std::sqrt(2.0);
            double gi = std::abs(beta[0] - cplx(0, 1) * beta[j]) / std::sqrt(2.0);
            cplx got = combine_estimates(xi1, xij, gr, gi);
            ASSERT_LT(std::abs(got - beta[j] * rot), 1e-12);
        }
    }
}

TEST(boosting, pair_states_have_expected_overlaps) {
    StateVector psi = StateVector::random(5, 3);
    cplx b1 = oracle::parity_inner(psi, 4), bj = oracle::parity_inner(psi, 9);
    StateVector r = parity_pair_state(5, {4}, {9}, 1.0);
    StateVector i = parity_pair_state(5, {4}, {9}, cplx(0, 1));
    EXPECT_NEAR(fidelity(psi, r), std::norm(b1 + bj) / 2, 1e-12);
    EXPECT_NEAR(fidelity(psi, i), std::norm(b1 - cplx(0, 1) * bj) / 2, 1e-12);
    EXPECT_NEAR(r.norm(), 1, 1e-12);
}

TEST(boosting, exact_coefficients_of_two_parity_state) {
    ParityLabel labels[2] = {{3}, {12}};
    cplx coeffs[2] = {0.6, std::polar(0.8, M_PI / 3)};
    StateVector psi = parity_combination(4, labels, coeffs);
    CopySource src(psi, OracleMode::Exact, 0);
    ParameterEstimates est = estimate_projection_coefficients(src, labels, 0.05, 0.1, 0.1);
    EXPECT_NEAR(std::abs(est.beta_hat[0] - cplx(0.6)), 0, 1e-9);
    EXPECT_NEAR(std::abs(est.beta_hat[1] - cplx(0.4, 0.8 * std::sin(M_PI / 3))), 0, 1e-9);
    EXPECT_NEAR(est.beta_hat[1].imag(), 0.6928, 1e-4);
}

TEST(boosting, single_label_estimate) {
    StateVector psi = StateVector::random(4, 9);
    ParityLabel l{0};
    for (Mask s = 0; s < 16; s++) {
        if (std::norm(oracle::parity_inner(psi, s)) > std::norm(oracle::parity_inner(psi, l.bits))) {
            l = ParityLabel{s};
        }
    }
    CopySource src(psi, OracleMode::Exact, 0);
    ParityLabel labels[1] = {l};
    ParameterEstimates est = estimate_projection_coefficients(src, labels, 0.05, 0.01, 0.1);
    ASSERT_EQ(est.beta_hat.size(), 1u);
    EXPECT_NEAR(est.xi[0], std::abs(oracle::parity_inner(psi, l.bits)), 1e-12);
    EXPECT_NEAR(std::abs(est.beta_hat[0]), 1, 1e-12);
}

TEST(boosting, estimator_guarantee_exact_mode) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; trial++) {
        int n = 6;
        std::size_t k = 1 + trial % 6;
        auto labels = distinct_labels(n, k, rng);
        auto beta = random_betas(k, 0.02, 0.5 + 0.4 * (trial % 5) / 4.0, rng);
        StateVector psi = oracle::state_with_coefficients(n, labels, beta, trial);
        CopySource src(psi, OracleMode::Exact, trial);
        ParameterEstimates est = estimate_projection_coefficients(src, labels, 0.05, 0.02, 0.1);
        double lam = lambda_mass(psi, labels);
        ASSERT_GE(hypothesis_fidelity(psi, labels, est.beta_raw), lam * lam - 0.05);
        double raw_norm = 0;
        for (auto &c : est.beta_raw) {
            raw_norm += std::norm(c);
        }
        ASSERT_LE(raw_norm, lam + 0.05);
    }
}

TEST(boosting, estimator_guarantee_sampled_mode) {
    std::mt19937_64 rng(29);
    int held = 0;
    const int runs = 200;
    for (int seed = 0; seed < runs; seed++) {
        auto labels = distinct_labels(6, 3, rng);
        auto beta = random_betas(3, 0.1, 0.8, rng);
        StateVector psi = oracle::state_with_coefficients(6, labels, beta, seed);
        CopySource src(psi, OracleMode::Sampled, seed);
        ParameterEstimates est = estimate_projection_coefficients(src, labels, 0.05, 0.1, 0.05);
        double lam = lambda_mass(psi, labels);
        double raw_norm = 0;
        for (auto &c : est.beta_raw) {
            raw_norm += std::norm(c);
        }
        held += hypothesis_fidelity(psi, labels, est.beta_raw) >= lam * lam - 0.05 && raw_norm <= lam + 0.05;
    }
    EXPECT_GE(held, 190);
}

TEST(boosting, estimator_rejects_small_reference) {
    ParityLabel labels[2] = {{1}, {2}};
    cplx coeffs[2] = {0.05, std::sqrt(1 - 0.0025)};
    StateVector psi = parity_combination(3, labels, coeffs);
    CopySource src(psi, OracleMode::Exact, 0);
    EXPECT_THROW(estimate_projection_coefficients(src, labels, 0.05, 0.1, 0.1), PromiseViolation);
    CopySource again(psi, OracleMode::Exact, 0);
    CoefficientOptions opt;
    opt.largest_first = true;
    ParameterEstimates est = estimate_projection_coefficients(again, labels, 0.05, 0.1, 0.1, opt);
    EXPECT_EQ(est.labels[0].bits, 2u);
}

TEST(boosting, parameter_learning_in_span_is_exact) {
    std::mt19937_64 rng(31);
    auto labels = distinct_labels(5, 4, rng);
    auto beta = random_betas(4, 0.05, 1.0, rng);
    StateVector psi = parity_combination(5, labels, beta);
    CopySource src(psi, OracleMode::Exact, 0);
    ParityDecomposition d = parameter_learning(src, labels, 0.05, 0.05, 0.1);
    EXPECT_NEAR(fidelity(d.to_state(5), psi), 1, 1e-9);
}

TEST(boosting, parameter_learning_with_junk) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; trial++) {
        auto labels = distinct_labels(6, 3, rng);
        auto beta = random_betas(3, 0.1, 0.9, rng);
        StateVector psi = oracle::state_with_coefficients(6, labels, beta, trial);
        for (auto mode : {OracleMode::Exact, OracleMode::Sampled}) {
            CopySource src(psi, mode, trial);
            double eps_p = 0.05;
            ParityDecomposition d = parameter_learning(src, labels, eps_p, 0.1, 0.1);
            double norm = 0;
            for (auto &c : d.coefficients) {
                norm += std::norm(c);
            }
            ASSERT_NEAR(norm, 1, 1e-12);
            ASSERT_GE(fidelity(d.to_state(6), psi), 0.9 - 2 * eps_p);
        }
    }
}

TEST(boosting, pure_tree_state) {
    BooleanConcept f = random_concept(ConceptKind::DecisionTree, ConceptParams{10, 5}, 3);
    StateVector psi = phase_state_of(f, 10);
    CopySource src(psi, OracleMode::Exact, 0);
    BoostResult r = agnostic_boost(src, make_dt_weak_learner(6), 0.1, 0.1);
    EXPECT_GE(fidelity(r.decomposition.to_state(10), psi), 0.9);
    EXPECT_LE(r.kappa, r.config.t_max);
}

TEST(boosting, corrupted_tree_state) {
    BooleanConcept f = random_concept(ConceptKind::DecisionTree, ConceptParams{10, 5}, 4);
    StateVector psi = make_corrupted_state(f, 0.85, 11);
    CopySource src(psi, OracleMode::Exact, 0);
    BoostResult r = agnostic_boost(src, make_dt_weak_learner(6), 0.1, 0.1);
    EXPECT_GE(fidelity(r.decomposition.to_state(10), psi), 0.75);
}

TEST(boosting, vacuous_accuracy) {
    CopySource src(StateVector::random(4, 2), OracleMode::Sampled, 0);
    BoostResult r = agnostic_boost(src, make_parity_weak_learner(), 1.0, 0.1);
    EXPECT_EQ(r.stop, StopReason::Vacuous);
    EXPECT_LE(r.kappa, 1);
    EXPECT_EQ(r.decomposition.labels.size(), 1u);
}

TEST(boosting, record_serialization) {
    ParityLabel labels[2] = {{10}, {255}};
    cplx coeffs[2] = {M_SQRT1_2, M_SQRT1_2};
    CopySource src(parity_combination(8, labels, coeffs), OracleMode::Exact, 0);
    BoostResult r = agnostic_boost(src, make_parity_weak_learner(), 0.2, 0.1);
    nlohmann::json j = r;
    EXPECT_EQ(j["stop_reason"], "norm-break");
    std::vector<std::string> hex;
    for (const auto &e : j["decomposition"]) {
        hex.push_back(e["label"]);
    }
    std::sort(hex.begin(), hex.end());
    EXPECT_EQ(hex, (std::vector<std::string>{"a", "ff"}));
    EXPECT_TRUE(j["trace"][0]["label"].is_string());
    EXPECT_EQ(j["ledger"]["weak_learner_calls"], 2);
}

TEST(boosting, squared_projection_norm_bound_fails_for_exact_coefficients) {
    // With exact magnitudes the raw norm equals <psi|Lambda psi>, which exceeds its square plus eps
    // once the captured mass is far from 0 and 1.
    ParityLabel labels[2] = {{1}, {2}};
    cplx beta[2] = {std::sqrt(0.3), std::sqrt(0.2)};
    StateVector psi = oracle::state_with_coefficients(4, labels, beta, 1);
    CopySource src(psi, OracleMode::Exact, 0);
    ParameterEstimates est = estimate_projection_coefficients(src, labels, 0.05, 0.1, 0.1);
    double raw = std::norm(est.beta_raw[0]) + std::norm(est.beta_raw[1]);
    double lam = lambda_mass(psi, labels);
    EXPECT_NEAR(raw, lam, 1e-12);
    EXPECT_GT(raw, lam * lam + 0.05);
}
