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

#include "qboost/boosting.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace qboost {

StateVector ParityDecomposition::to_state(int n) const {
    return parity_combination(n, labels, coefficients);
}

double ParityDecomposition::real_value(Mask x) const {
    double v = 0;
    for (std::size_t i = 0; i < labels.size(); i++) {
        double sign = dot_parity(labels[i].bits, x) ? -1.0 : 1.0;
        v += sign * coefficients[i].real();
    }
    return v;
}

namespace {

std::string hex_label(ParityLabel l) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llx", (unsigned long long)l.bits);
    return buf;
}

}  // namespace

void to_json(nlohmann::json &j, const ParityDecomposition &d) {
    j = nlohmann::json::array();
    for (std::size_t i = 0; i < d.labels.size(); i++) {
        j.push_back({{"label", hex_label(d.labels[i])}, {"re", d.coefficients[i].real()}, {"im", d.coefficients[i].imag()}});
    }
}

std::string stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::FidelityBreak:
            return "fidelity-break";
        case StopReason::NormBreak:
            return "norm-break";
        case StopReason::TMax:
            return "t_max";
        case StopReason::Vacuous:
            return "vacuous";
    }
    return "?";
}

BoostingConfig BoostingConfig::derive(double eps, double delta, const Promise &promise, OracleMode mode,
                                      const BoostingLimits &limits) {
    check_accuracy(eps, delta);
    if (!(promise.eta1 > 0 && promise.eta1 <= 1 && promise.eta2 >= 1)) {
        throw ConfigError("promise needs 0 < eta1 <= 1 and eta2 >= 1");
    }
    BoostingConfig c;
    c.eps = eps;
    c.delta = delta;
    c.promise = promise;
    c.mode = mode;
    c.eps_s = std::pow(2.0 / 3.0, 1.0 / promise.eta2 + 1.0) * eps * eps / 16.0;
    c.eps_p = eps / 2.0;
    c.eta = promise(c.eps_s);
    c.t_max = std::ceil(4.0 / (c.eps_s * c.eta));
    if (!std::isfinite(c.t_max) || c.t_max > limits.max_t_max) {
        throw ConfigError("derived t_max " + std::to_string(c.t_max) + " exceeds the configured guard");
    }
    c.delta_prime = delta / (3.0 * c.t_max);
    c.attempt_cap = std::ceil(20.0 / c.eps_s * std::log(1.0 / c.delta_prime));
    c.mu = c.eps_s * c.eta / 4.0;
    c.theorem_kappa_scale = 1.0 / (eps * eps * c.eta);
    return c;
}

void BoostingConfig::set_kappa(int k) {
    kappa = k;
    if (k <= 0) {
        upsilon1 = upsilon2 = upsilon_prime = 0;
        return;
    }
    upsilon1 = eps_p * eta / (63.0 * k);
    upsilon2 = eps_p * std::sqrt(eta) / (18.0 * k);
    upsilon_prime = eps_p * std::sqrt(eta) / (36.0 * k);
}

void to_json(nlohmann::json &j, const BoostingConfig &c) {
    j = nlohmann::json{
        {"eps", c.eps},
        {"delta", c.delta},
        {"eta1", c.promise.eta1},
        {"eta2", c.promise.eta2},
        {"mode", mode_name(c.mode)},
        {"eps_s", c.eps_s},
        {"eps_p", c.eps_p},
        {"eta", c.eta},
        {"t_max", c.t_max},
        {"delta_prime", c.delta_prime},
        {"attempt_cap", c.attempt_cap},
        {"mu", c.mu},
        {"theorem_kappa_scale", c.theorem_kappa_scale},
        {"kappa", c.kappa},
        {"upsilon1", c.upsilon1},
        {"upsilon2", c.upsilon2},
        {"upsilon_prime", c.upsilon_prime},
    };
}

StructurePlan StructurePlan::from(const BoostingConfig &cfg) {
    StructurePlan p;
    p.eps_s = cfg.eps_s;
    p.eta = cfg.eta;
    p.t_max = cfg.t_max;
    p.delta_prime = cfg.delta_prime;
    p.attempt_cap = cfg.attempt_cap;
    p.fidelity_break = true;
    return p;
}

void to_json(nlohmann::json &j, const IterationRecord &r) {
    j = nlohmann::json{
        {"t", r.t},
        {"label", hex_label(r.label)},
        {"appended", r.appended},
        {"residual_norm_sq_before", r.residual_norm_sq_before},
        {"residual_norm_sq_after", r.residual_norm_sq_after},
        {"label_weight", r.label_weight},
        {"residual_label_weight", r.residual_label_weight},
    };
    j["nu"] = r.nu ? nlohmann::json(*r.nu) : nlohmann::json(nullptr);
    j["alpha_sq_hat"] = r.alpha_sq_hat ? nlohmann::json(*r.alpha_sq_hat) : nlohmann::json(nullptr);
}

StructureResult structure_learning(CopySource &src, const WeakLearner &wal, const StructurePlan &plan) {
    if (!(plan.eps_s > 0 && plan.eps_s < 1 && plan.eta > 0 && plan.eta < 1 && plan.t_max >= 1)) {
        throw ConfigError("structure plan out of range");
    }
    const int n = src.num_qubits();
    StateVector root_hat = walsh_hadamard(src.hidden_for_diagnostics());
    auto weight = [&](ParityLabel l) { return std::norm(root_hat[l.bits]); };

    StructureResult result;
    ParitySpan span;
    std::optional<CopySource> residual;
    double captured = 0;
    for (long long t = 1; (double)t <= plan.t_max; t++) {
        CopySource &cur = residual ? *residual : src;
        ParityLabel label = wal.learn(cur, plan.eps_s, plan.delta_prime);
        src.note_weak_learner_call();

        IterationRecord rec;
        rec.t = (int)t;
        rec.label = label;
        rec.residual_norm_sq_before = std::max(0.0, 1.0 - captured);
        rec.label_weight = weight(label);
        rec.residual_label_weight = fidelity(cur.hidden_for_diagnostics(), StateVector::parity(n, label));

        if (span.contains(label)) {
            throw ContractViolation("weak learner returned a label already in the span");
        }
        if (plan.fidelity_break) {
            double nu = swap_test_parity(cur, label, plan.eta / 2.0, plan.delta_prime);
            rec.nu = nu;
            if (nu < plan.eta) {
                rec.residual_norm_sq_after = rec.residual_norm_sq_before;
                result.trace.push_back(rec);
                result.stop = StopReason::FidelityBreak;
                return result;
            }
        }
        span.push_back(label);
        result.labels.push_back(label);
        rec.appended = true;
        captured += weight(label);
        rec.residual_norm_sq_after = std::max(0.0, 1.0 - captured);

        double alpha_sq = povm_norm_estimate(src, span, plan.eps_s / 2.0, plan.delta_prime);
        rec.alpha_sq_hat = alpha_sq;
        result.trace.push_back(rec);
        if (alpha_sq < plan.eps_s) {
            result.stop = StopReason::NormBreak;
            return result;
        }
        residual = prepare_residual(src, span, plan.attempt_cap);
    }
    result.stop = StopReason::TMax;
    return result;
}

StructureResult structure_learning(CopySource &src, const WeakLearner &wal, const BoostingConfig &cfg) {
    return structure_learning(src, wal, StructurePlan::from(cfg));
}

cplx combine_estimates(double xi1, double xij, double gamma_r, double gamma_i) {
    double a = (2.0 * gamma_r * gamma_r - xi1 * xi1 - xij * xij) / (2.0 * xi1);
    double b = (2.0 * gamma_i * gamma_i - xi1 * xi1 - xij * xij) / (2.0 * xi1);
    return {a, b};
}

StateVector parity_pair_state(int n, ParityLabel first, ParityLabel other, cplx phase) {
    ParityLabel labels[2] = {first, other};
    cplx coeffs[2] = {M_SQRT1_2, phase * M_SQRT1_2};
    return parity_combination(n, labels, coeffs);
}

namespace {

double magnitude(CopySource &src, ParityLabel l, double accuracy, double delta) {
    return std::sqrt(std::max(0.0, swap_test_parity(src, l, accuracy * accuracy, delta)));
}

double magnitude(CopySource &src, const StateVector &s, double accuracy, double delta) {
    return std::sqrt(std::max(0.0, swap_test_estimate(src, s, accuracy * accuracy, delta)));
}

}  // namespace

ParameterEstimates estimate_projection_coefficients(CopySource &src, std::span<const ParityLabel> labels_in,
                                                    double eps, double mu, double delta,
                                                    CoefficientOptions options) {
    check_accuracy(eps, delta);
    if (!(mu > 0 && mu <= 1)) {
        throw ParameterError("mu must lie in (0, 1]");
    }
    if (labels_in.empty()) {
        throw ParameterError("no labels to estimate");
    }
    (void)ParitySpan(std::vector<ParityLabel>(labels_in.begin(), labels_in.end()));
    const int n = src.num_qubits();
    const std::size_t k = labels_in.size();
    const double kd = (double)k;

    ParameterEstimates est;
    est.upsilon1 = std::min(eps * mu / (63.0 * kd), std::sqrt(mu) / 2.0);
    est.upsilon2 = eps * std::sqrt(mu) / (18.0 * kd);
    est.upsilon_prime = eps * std::sqrt(mu) / (36.0 * kd);
    double delta_each = delta / (3.0 * kd);

    est.labels.assign(labels_in.begin(), labels_in.end());
    est.xi.assign(k, 0.0);
    if (options.largest_first) {
        for (std::size_t j = 0; j < k; j++) {
            est.xi[j] = magnitude(src, est.labels[j], est.upsilon1, delta_each);
        }
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return est.xi[a] > est.xi[b]; });
        std::size_t top = order[0];
        std::swap(est.labels[0], est.labels[top]);
        std::swap(est.xi[0], est.xi[top]);
    } else {
        est.xi[0] = magnitude(src, est.labels[0], est.upsilon1, delta_each);
        for (std::size_t j = 1; j < k; j++) {
            est.xi[j] = magnitude(src, est.labels[j], est.upsilon2, delta_each);
        }
    }
    if (est.xi[0] < std::sqrt(mu) - est.upsilon1) {
        throw PromiseViolation("reference coefficient estimate is below sqrt(mu) - upsilon1");
    }

    est.gamma_r.assign(k, 0.0);
    est.gamma_i.assign(k, 0.0);
    est.a.assign(k, 0.0);
    est.b.assign(k, 0.0);
    est.beta_raw.assign(k, 0.0);
    est.a[0] = est.xi[0];
    est.beta_raw[0] = est.xi[0];
    for (std::size_t j = 1; j < k; j++) {
        StateVector chi_r = parity_pair_state(n, est.labels[0], est.labels[j], 1.0);
        StateVector chi_i = parity_pair_state(n, est.labels[0], est.labels[j], cplx{0.0, 1.0});
        est.gamma_r[j] = magnitude(src, chi_r, est.upsilon_prime, delta_each);
        est.gamma_i[j] = magnitude(src, chi_i, est.upsilon_prime, delta_each);
        cplx beta = combine_estimates(est.xi[0], est.xi[j], est.gamma_r[j], est.gamma_i[j]);
        est.a[j] = beta.real();
        est.b[j] = beta.imag();
        est.beta_raw[j] = beta;
    }
    double norm = 0;
    for (const cplx &c : est.beta_raw) {
        norm += std::norm(c);
    }
    norm = std::sqrt(norm);
    est.beta_hat = est.beta_raw;
    for (cplx &c : est.beta_hat) {
        c /= norm;
    }
    return est;
}

ParityDecomposition parameter_learning(CopySource &src, std::span<const ParityLabel> labels, double eps_p, double mu,
                                       double delta, ParameterEstimates *estimates_out, CoefficientOptions options) {
    double gamma = eps_p * (double)labels.size() * mu * mu / 2.0;
    ParameterEstimates est = estimate_projection_coefficients(src, labels, gamma, mu, delta, options);
    ParityDecomposition d{est.labels, est.beta_hat};
    if (estimates_out) {
        *estimates_out = std::move(est);
    }
    return d;
}

void to_json(nlohmann::json &j, const BoostResult &r) {
    j = nlohmann::json{
        {"config", r.config},
        {"decomposition", r.decomposition},
        {"kappa", r.kappa},
        {"stop_reason", stop_reason_name(r.stop)},
        {"trace", r.trace},
        {"ledger", r.ledger},
    };
}

BoostResult agnostic_boost(CopySource &src, const WeakLearner &wal, double eps, double delta,
                           const BoostingLimits &limits) {
    if (!(eps > 0)) {
        throw ParameterError("eps must be positive");
    }
    if (!(delta > 0 && delta < 1)) {
        throw ParameterError("delta must lie in (0, 1)");
    }
    BoostResult result;
    if (eps >= 1) {
        // Every hypothesis meets opt - eps; one weak-learner call supplies a valid one.
        result.config.eps = eps;
        result.config.delta = delta;
        result.config.promise = wal.promise;
        result.config.mode = src.mode();
        ParityLabel label = wal.learn(src, 1.0, delta);
        src.note_weak_learner_call();
        result.decomposition = ParityDecomposition{{label}, {cplx{1.0, 0.0}}};
        result.kappa = 1;
        result.config.set_kappa(1);
        result.stop = StopReason::Vacuous;
        result.ledger = src.ledger();
        return result;
    }
    result.config = BoostingConfig::derive(eps, delta, wal.promise, src.mode(), limits);
    StructureResult sr = structure_learning(src, wal, result.config);
    result.kappa = (int)sr.labels.size();
    result.stop = sr.stop;
    result.trace = std::move(sr.trace);
    result.config.set_kappa(result.kappa);
    if ((double)result.kappa > result.config.t_max) {
        throw std::logic_error("iteration count exceeded t_max");
    }
    if (sr.labels.empty()) {
        // Fidelity broke on the first round, so opt is already below eps; the rejected label will do.
        result.decomposition = ParityDecomposition{{result.trace.front().label}, {cplx{1.0, 0.0}}};
    } else {
        result.decomposition =
            parameter_learning(src, sr.labels, result.config.eps_p, result.config.mu, delta / 2.0);
    }
    result.ledger = src.ledger();
    return result;
}

}  // namespace qboost
