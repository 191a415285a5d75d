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

#include "qboost/experiment.h"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace qboost {

const char *const VERSION_TAG = "qboost-0.1.0";

StateVector make_corrupted_state(const StateVector &planted, double opt_lb, uint64_t junk_seed) {
    if (!(opt_lb > 0 && opt_lb <= 1)) {
        throw ParameterError("opt_lb must lie in (0, 1]");
    }
    if (opt_lb == 1) {
        return planted;
    }
    const int n = planted.num_qubits();
    StateVector junk = StateVector::random(n, junk_seed);
    cplx c = overlap(planted, junk);
    std::vector<cplx> amps(junk.dim());
    for (std::size_t x = 0; x < amps.size(); x++) {
        amps[x] = junk[x] - c * planted[x];
    }
    StateVector orth = StateVector(n, std::move(amps)).normalized();
    double a = std::sqrt(opt_lb);
    double b = std::sqrt(1 - opt_lb);
    std::vector<cplx> out(junk.dim());
    for (std::size_t x = 0; x < out.size(); x++) {
        out[x] = a * planted[x] + b * orth[x];
    }
    return StateVector(n, std::move(out)).normalized();
}

StateVector make_corrupted_state(const BooleanConcept &concept_, double opt_lb, uint64_t junk_seed) {
    return make_corrupted_state(phase_state_of(concept_, concept_.num_vars()), opt_lb, junk_seed);
}

LearnerKind parse_learner(const std::string &text) {
    if (text == "parity") return LearnerKind::Parity;
    if (text == "dt") return LearnerKind::Dt;
    if (text == "junta") return LearnerKind::Junta;
    if (text == "junta-noboost") return LearnerKind::JuntaNoBoost;
    if (text == "dnf") return LearnerKind::Dnf;
    if (text == "depth3") return LearnerKind::Depth3;
    throw ParameterError("unknown learner '" + text + "'");
}

std::string learner_name(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::Parity:
            return "parity";
        case LearnerKind::Dt:
            return "dt";
        case LearnerKind::Junta:
            return "junta";
        case LearnerKind::JuntaNoBoost:
            return "junta-noboost";
        case LearnerKind::Dnf:
            return "dnf";
        case LearnerKind::Depth3:
            return "depth3";
    }
    return "?";
}

namespace {

ConceptKind planted_kind(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::Parity:
            return ConceptKind::Parity;
        case LearnerKind::Dt:
            return ConceptKind::DecisionTree;
        case LearnerKind::Junta:
        case LearnerKind::JuntaNoBoost:
            return ConceptKind::Junta;
        case LearnerKind::Dnf:
            return ConceptKind::Dnf;
        case LearnerKind::Depth3:
            return ConceptKind::Tac;
    }
    return ConceptKind::Parity;
}

uint64_t mix(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + salt * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

int ExperimentConfig::effective_size() const {
    return class_size ? class_size : planted.size;
}

int ExperimentConfig::effective_k() const {
    return class_k ? class_k : planted.k;
}

int ExperimentConfig::effective_m() const {
    return class_m ? class_m : planted.m;
}

void ExperimentConfig::validate() const {
    if (planted.n < 1 || planted.n > MAX_QUBITS) {
        throw ParameterError("n must lie in [1, " + std::to_string(MAX_QUBITS) + "]");
    }
    if (!(eps > 0 && eps < 1)) {
        throw ParameterError("eps must lie in (0, 1)");
    }
    if (!(delta > 0 && delta < 1)) {
        throw ParameterError("delta must lie in (0, 1)");
    }
    if (!(opt_lb > 0 && opt_lb <= 1)) {
        throw ParameterError("opt-lb must lie in (0, 1]");
    }
    if (!(tau >= 0 && tau <= 1)) {
        throw ParameterError("tau must lie in (0, 1]");
    }
    if (seeds.empty()) {
        throw ParameterError("at least one seed is required");
    }
    if (!(mansour.c1 > 0 && mansour.c2 > 0)) {
        throw ParameterError("Mansour constants must be positive");
    }
    if (learner == LearnerKind::Depth3 && opt_lb != 1) {
        throw ParameterError("the depth-3 learner needs an uncorrupted phase state (opt-lb 1)");
    }
    if ((learner == LearnerKind::Dt || learner == LearnerKind::Dnf || learner == LearnerKind::Depth3) &&
        effective_size() < 1) {
        throw ParameterError("class size must be positive");
    }
    if (learner == LearnerKind::Depth3 && effective_m() < 1) {
        throw ParameterError("threshold fan-in m must be positive");
    }
    // Surfaces infeasible planted parameters before any run.
    (void)random_concept(planted_kind(learner), planted, 0);
}

void to_json(nlohmann::json &j, const ExperimentConfig &c) {
    j = nlohmann::json{
        {"learner", learner_name(c.learner)},
        {"n", c.planted.n},
        {"planted",
         {{"kind", concept_kind_name(planted_kind(c.learner))},
          {"size", c.planted.size},
          {"k", c.planted.k},
          {"width", c.planted.width},
          {"m", c.planted.m},
          {"level_ordered", c.planted.level_ordered}}},
        {"class_size", c.effective_size()},
        {"class_k", c.effective_k()},
        {"class_m", c.effective_m()},
        {"opt_lb", c.opt_lb},
        {"eps", c.eps},
        {"delta", c.delta},
        {"tau", c.tau},
        {"mode", mode_name(c.mode)},
        {"seeds", c.seeds},
        {"mansour", {{"c1", c.mansour.c1}, {"c2", c.mansour.c2}}},
        {"max_t_max", c.limits.max_t_max},
    };
}

nlohmann::json run_single(const ExperimentConfig &cfg, uint64_t seed) {
    nlohmann::json rec;
    rec["schema"] = RECORD_SCHEMA_VERSION;
    rec["version"] = VERSION_TAG;
    rec["config"] = cfg;
    rec["seed"] = seed;
    rec["error"] = nullptr;
    rec["success"] = false;
    auto start = std::chrono::steady_clock::now();
    try {
        const int n = cfg.planted.n;
        BooleanConcept planted = random_concept(planted_kind(cfg.learner), cfg.planted, seed);
        rec["concept"] = to_text(planted);
        StateVector psi = make_corrupted_state(planted, cfg.opt_lb, mix(seed, 1));
        CopySource src(psi, cfg.mode, mix(seed, 2));

        if (cfg.learner == LearnerKind::Depth3) {
            PacOutcome pac =
                pac_learn_depth3(src, cfg.effective_size(), cfg.effective_m(), cfg.eps, cfg.delta, cfg.mansour, cfg.limits);
            auto f = truth_table(planted);
            double agree = agreement(pac.hypothesis, f);
            double agree_mod = std::max(agree, 1.0 - agree);
            rec["outcome"] = pac;
            rec["agreement"] = agree;
            rec["agreement_up_to_complement"] = agree_mod;
            rec["pac_error"] = 1.0 - agree_mod;
            rec["kappa"] = pac.kappa;
            rec["stop_reason"] = stop_reason_name(pac.stop);
            rec["ledger"] = pac.ledger;
            rec["success"] = 1.0 - agree_mod <= cfg.eps;
        } else {
            LearningOutcome out;
            switch (cfg.learner) {
                case LearnerKind::Parity: {
                    double tau = cfg.tau > 0 ? cfg.tau : cfg.opt_lb;
                    out = agnostic_learn_parity(src, tau, std::min(cfg.eps, tau), cfg.delta);
                    break;
                }
                case LearnerKind::Dt:
                    out = agnostic_learn_dt(src, cfg.effective_size(), cfg.eps, cfg.delta, cfg.limits);
                    break;
                case LearnerKind::Junta:
                    out = agnostic_learn_junta(src, cfg.effective_k(), cfg.eps, cfg.delta, cfg.limits);
                    break;
                case LearnerKind::JuntaNoBoost:
                    out = agnostic_learn_junta_noboost(src, cfg.effective_k(), cfg.eps, cfg.delta);
                    break;
                case LearnerKind::Dnf:
                    out = agnostic_learn_dnf(src, cfg.effective_size(), cfg.eps, cfg.delta, cfg.mansour, cfg.limits);
                    break;
                case LearnerKind::Depth3:
                    break;
            }
            out.seed = seed;
            out.opt_lower_bound = cfg.opt_lb;
            double achieved = fidelity(out.hypothesis.to_state(n), psi);
            rec["outcome"] = out;
            rec["achieved_fidelity"] = achieved;
            rec["kappa"] = out.kappa;
            rec["stop_reason"] = out.stop ? nlohmann::json(stop_reason_name(*out.stop)) : nlohmann::json(nullptr);
            rec["ledger"] = out.ledger;
            rec["success"] = achieved >= cfg.opt_lb - cfg.eps;
        }
    } catch (const std::exception &e) {
        rec["error"] = e.what();
        rec["success"] = false;
    }
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    rec["wallclock_s"] = elapsed.count();
    return rec;
}

std::vector<nlohmann::json> run_experiment(const ExperimentConfig &cfg, std::ostream *jsonl, std::ostream *summary,
                                           ExperimentSummary *totals) {
    cfg.validate();
    const std::ptrdiff_t count = (std::ptrdiff_t)cfg.seeds.size();
    std::vector<nlohmann::json> records(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; i++) {
        records[i] = run_single(cfg, cfg.seeds[i]);
    }
    ExperimentSummary s;
    for (const auto &rec : records) {
        s.runs++;
        if (rec["success"].get<bool>()) {
            s.successes++;
        }
        if (!rec["error"].is_null()) {
            s.errors++;
            continue;
        }
        s.mean_copies += rec["ledger"]["total"].get<double>();
        s.mean_kappa += rec["kappa"].get<double>();
    }
    std::size_t ok = s.runs - s.errors;
    if (ok > 0) {
        s.mean_copies /= (double)ok;
        s.mean_kappa /= (double)ok;
    }
    if (jsonl) {
        for (const auto &rec : records) {
            *jsonl << rec.dump() << '\n';
        }
    }
    if (summary) {
        *summary << std::left << std::setw(16) << "learner" << std::setw(8) << "runs" << std::setw(10) << "success"
                 << std::setw(8) << "errors" << std::setw(14) << "mean_copies" << "mean_kappa\n";
        *summary << std::setw(16) << learner_name(cfg.learner) << std::setw(8) << s.runs << std::setw(10)
                 << (std::to_string(s.successes) + "/" + std::to_string(s.runs)) << std::setw(8) << s.errors
                 << std::setw(14) << std::setprecision(4) << s.mean_copies << s.mean_kappa << '\n';
    }
    if (totals) {
        *totals = s;
    }
    return records;
}

double swap_failure_rate(double overlap_sq, double eps, double delta, int trials, uint64_t seed, int n) {
    if (!(overlap_sq >= 0 && overlap_sq <= 1) || trials < 1) {
        throw ParameterError("overlap must lie in [0, 1] and trials must be positive");
    }
    ParityLabel labels[2] = {ParityLabel{0}, ParityLabel{1}};
    cplx coeffs[2] = {std::sqrt(overlap_sq), std::sqrt(1 - overlap_sq)};
    StateVector hidden = parity_combination(n, labels, coeffs);
    StateVector other = StateVector::parity(n, labels[0]);
    CopySource src(hidden, OracleMode::Sampled, seed);
    int failures = 0;
    for (int t = 0; t < trials; t++) {
        double est = swap_test_estimate(src, other, eps, delta);
        failures += std::abs(est - overlap_sq) > eps;
    }
    return (double)failures / trials;
}

}  // namespace qboost
