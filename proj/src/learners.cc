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

#include "qboost/learners.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qboost {

namespace {

void finish(LearningOutcome &out, CopySource &src) {
    out.ledger = src.ledger();
    if (src.mode() == OracleMode::Exact) {
        StateVector phi = out.hypothesis.to_state(src.num_qubits());
        out.achieved_fidelity = std::clamp(fidelity(phi, src.hidden_for_diagnostics()), 0.0, 1.0);
    }
}

LearningOutcome from_boost(const std::string &name, BoostResult &&r) {
    LearningOutcome out;
    out.learner = name;
    out.hypothesis = std::move(r.decomposition);
    out.kappa = r.kappa;
    out.stop = r.stop;
    out.config = r.config;
    return out;
}

}  // namespace

void to_json(nlohmann::json &j, const LearningOutcome &o) {
    j = nlohmann::json{
        {"learner", o.learner},
        {"hypothesis", o.hypothesis},
        {"ledger", o.ledger},
        {"seed", o.seed},
        {"kappa", o.kappa},
        {"sstar_clamped", o.sstar_clamped},
        {"warnings", o.warnings},
    };
    j["achieved_fidelity"] = o.achieved_fidelity ? nlohmann::json(*o.achieved_fidelity) : nlohmann::json(nullptr);
    j["opt_lower_bound"] = o.opt_lower_bound ? nlohmann::json(*o.opt_lower_bound) : nlohmann::json(nullptr);
    j["stop_reason"] = o.stop ? nlohmann::json(stop_reason_name(*o.stop)) : nlohmann::json(nullptr);
    j["config"] = o.config ? nlohmann::json(*o.config) : nlohmann::json(nullptr);
    j["log2_sstar"] = o.log2_sstar ? nlohmann::json(*o.log2_sstar) : nlohmann::json(nullptr);
    if (o.sieve) {
        j["sieve"] = {
            {"eps1", o.sieve->eps1},
            {"eps2", o.sieve->eps2},
            {"samples", o.sieve->samples},
            {"candidates", o.sieve->candidates.size()},
            {"survivors", o.sieve->survivors.size()},
        };
    }
}

LearningOutcome agnostic_learn_parity(CopySource &src, double tau, double eps, double delta) {
    LearningOutcome out;
    out.learner = "parity";
    ParityLabel label = agnostic_parity_learner(src, tau, eps, delta);
    src.note_weak_learner_call();
    out.hypothesis = ParityDecomposition{{label}, {cplx{1.0, 0.0}}};
    out.kappa = 1;
    finish(out, src);
    return out;
}

LearningOutcome agnostic_learn_dt(CopySource &src, int s, double eps, double delta, const BoostingLimits &limits) {
    WeakLearner wal = make_dt_weak_learner(s);
    LearningOutcome out = from_boost("dt", agnostic_boost(src, wal, eps, delta, limits));
    finish(out, src);
    return out;
}

LearningOutcome agnostic_learn_junta(CopySource &src, int k, double eps, double delta, const BoostingLimits &limits) {
    if (k < 0 || k > src.num_qubits() || k > 20) {
        throw ParameterError("junta arity must lie in [0, min(n, 20)]");
    }
    int s = (1 << (k + 1)) - 1;
    LearningOutcome out = agnostic_learn_dt(src, s, eps, delta, limits);
    out.learner = "junta";
    return out;
}

LearningOutcome agnostic_learn_dnf(CopySource &src, int s, double eps, double delta, const MansourConstants &mansour,
                                   const BoostingLimits &limits) {
    if (s < 1) {
        throw ParameterError("DNF size must be positive");
    }
    check_accuracy(std::min(eps, 0.5), delta);
    // s* is fixed at the tau the boosting loop will use, eps_s for eta2 = 1.
    double tau_ref = std::min(1.0, std::pow(2.0 / 3.0, 2.0) * eps * eps / 16.0);
    WeakLearner wal = make_dnf_weak_learner(s, tau_ref, mansour, src.num_qubits(), true);
    LearningOutcome out = from_boost("dnf", agnostic_boost(src, wal, eps, delta, limits));
    out.log2_sstar = wal.log2_sstar;
    out.sstar_clamped = wal.sstar_clamped;
    if (wal.sstar_clamped) {
        out.warnings.push_back("s* exceeded 2^n and was capped");
    }
    finish(out, src);
    return out;
}

LearningOutcome agnostic_learn_junta_noboost(CopySource &src, int k, double eps, double delta) {
    check_accuracy(eps, delta);
    if (k < 0 || k > src.num_qubits() || k > 20) {
        throw ParameterError("junta arity must lie in [0, min(n, 20)]");
    }
    LearningOutcome out;
    out.learner = "junta-noboost";
    AmplitudeSieve sieve;
    double four_k = std::ldexp(1.0, 2 * k);
    sieve.eps1 = eps * eps / 16.0;
    sieve.eps2 = sieve.eps1 / four_k;
    sieve.samples = std::ceil(four_k / sieve.eps1 * (k + std::log(1.0 / delta)));

    sieve.candidates = fourier_candidates(src, sieve.samples);
    double delta_each = delta / (2.0 * (double)sieve.candidates.size());
    for (Mask y : sieve.candidates) {
        double e = swap_test_parity(src, ParityLabel{y}, sieve.eps2 / 4.0, delta_each);
        sieve.estimates.push_back(e);
        if (e >= 3.0 * sieve.eps2 / 4.0) {
            sieve.survivors.push_back(y);
            sieve.survivor_estimates.push_back(e);
        }
    }
    if (sieve.survivors.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < sieve.estimates.size(); i++) {
            if (sieve.estimates[i] > sieve.estimates[best]) {
                best = i;
            }
        }
        out.hypothesis = ParityDecomposition{{ParityLabel{sieve.candidates[best]}}, {cplx{1.0, 0.0}}};
        out.warnings.push_back("no amplitude survived the sieve; returning the best single parity");
    } else {
        std::vector<std::size_t> order(sieve.survivors.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return sieve.survivor_estimates[a] > sieve.survivor_estimates[b];
        });
        std::vector<ParityLabel> labels;
        for (std::size_t i : order) {
            labels.push_back(ParityLabel{sieve.survivors[i]});
        }
        double eps_p = 2.0 * std::sqrt(sieve.eps1);
        ParameterEstimates est =
            estimate_projection_coefficients(src, labels, eps_p, sieve.eps2 / 2.0, delta / 2.0);
        out.hypothesis = ParityDecomposition{est.labels, est.beta_hat};
    }
    out.kappa = (int)out.hypothesis.labels.size();
    out.sieve = std::move(sieve);
    finish(out, src);
    return out;
}

std::vector<uint8_t> sign_round(const ParityDecomposition &d, int n) {
    // h is evaluated for all x at once: its transform has c_i at S_i.
    std::vector<double> h(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < d.labels.size(); i++) {
        h[d.labels[i].bits] += d.coefficients[i].real();
    }
    kernels::fwht(std::span<double>(h));
    std::vector<uint8_t> g(h.size());
    for (std::size_t x = 0; x < h.size(); x++) {
        g[x] = h[x] < 0 ? 1 : 0;
    }
    return g;
}

double agreement(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    if (a.size() != b.size() || a.empty()) {
        throw ContractViolation("agreement needs equal nonempty tables");
    }
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        same += a[i] == b[i];
    }
    return (double)same / (double)a.size();
}

void to_json(nlohmann::json &j, const PacOutcome &o) {
    j = nlohmann::json{
        {"decomposition", o.decomposition},
        {"kappa", o.kappa},
        {"stop_reason", stop_reason_name(o.stop)},
        {"trace", o.trace},
        {"eps_s", o.eps_s},
        {"eta", o.eta},
        {"t_max", o.t_max},
        {"mu", o.mu},
        {"log2_sstar", o.log2_sstar},
        {"sstar_clamped", o.sstar_clamped},
        {"ledger", o.ledger},
    };
}

PacOutcome pac_learn_depth3(CopySource &src, int s, int m, double eps, double delta, const MansourConstants &mansour,
                            const BoostingLimits &limits) {
    if (s < 1 || m < 1) {
        throw ParameterError("depth-3 learner needs s >= 1 and m >= 1");
    }
    if (!(eps > 0) || !(delta > 0 && delta < 1)) {
        throw ParameterError("eps must be positive and delta in (0, 1)");
    }
    const int n = src.num_qubits();
    PacOutcome out;
    if (eps >= 1) {
        out.decomposition = ParityDecomposition{{ParityLabel{0}}, {cplx{1.0, 0.0}}};
        out.hypothesis = sign_round(out.decomposition, n);
        out.stop = StopReason::Vacuous;
        out.ledger = src.ledger();
        return out;
    }
    const double m2 = (double)m * (double)m;
    out.eps_s = eps / 9.0;
    // The residual keeps DNF fidelity >= eps_s / (4 m^2); that is the weak learner's tau.
    double tau = out.eps_s / (4.0 * m2);
    out.log2_sstar = mansour_log2_sstar(s, tau, mansour);
    if (out.log2_sstar > n) {
        out.log2_sstar = n;
        out.sstar_clamped = true;
    }
    double sstar = std::exp2(out.log2_sstar);
    out.eta = eps / (36.0 * m2 * sstar);
    out.t_max = std::ceil(4.0 / (out.eps_s * out.eta));
    if (!std::isfinite(out.t_max) || out.t_max > limits.max_t_max) {
        throw ConfigError("derived t_max exceeds the configured guard");
    }
    StructurePlan plan;
    plan.eps_s = out.eps_s;
    plan.eta = out.eta;
    plan.t_max = out.t_max;
    plan.delta_prime = delta / (3.0 * out.t_max);
    plan.attempt_cap = std::ceil(20.0 / out.eps_s * std::log(1.0 / plan.delta_prime));
    plan.fidelity_break = false;

    WeakLearner wal;
    wal.name = "dnf";
    wal.promise = Promise{1.0 / (2.0 * sstar), 1.0};
    double l2 = out.log2_sstar;
    wal.learn = [l2, tau](CopySource &cur, double, double d) { return wal_dnf_with_sstar(cur, l2, tau, d); };

    StructureResult sr = structure_learning(src, wal, plan);
    out.kappa = (int)sr.labels.size();
    out.stop = sr.stop;
    out.trace = std::move(sr.trace);
    if ((double)out.kappa > out.t_max) {
        throw std::logic_error("iteration count exceeded t_max");
    }
    // Each label carries at least (eps_s / 2) * (tau / (2 s*)) of the squared mass.
    out.mu = out.eps_s * (tau / (2.0 * sstar)) / 2.0;
    out.decomposition = parameter_learning(src, sr.labels, eps / 2.0, out.mu, delta / 2.0);
    out.hypothesis = sign_round(out.decomposition, n);
    out.ledger = src.ledger();
    return out;
}

}  // namespace qboost
