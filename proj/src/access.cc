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

#include "qboost/access.h"

#include <algorithm>
#include <cmath>

namespace qboost {

namespace {

constexpr double SUPPORT_TOL = 1e-14;
constexpr double DEGENERATE_ALPHA_SQ = 1e-12;
constexpr double MAX_LISTED_SHOTS = 1e8;

std::vector<double> fourier_weights_of(const StateVector &s) {
    StateVector hat = walsh_hadamard(s);
    std::vector<double> w(hat.dim());
    for (std::size_t z = 0; z < w.size(); z++) {
        w[z] = std::norm(hat[z]);
    }
    return w;
}

void check_label(const CopySource &src, ParityLabel label) {
    if (label.bits >> src.num_qubits()) {
        throw ContractViolation("parity label out of range");
    }
}

}  // namespace

OracleMode parse_mode(const std::string &text) {
    if (text == "exact") {
        return OracleMode::Exact;
    }
    if (text == "sampled") {
        return OracleMode::Sampled;
    }
    throw ParameterError("mode must be 'exact' or 'sampled', got '" + text + "'");
}

std::string mode_name(OracleMode mode) {
    return mode == OracleMode::Exact ? "exact" : "sampled";
}

void to_json(nlohmann::json &j, const CopyLedger &ledger) {
    j = nlohmann::json{
        {"total", ledger.total()},
        {"swap_test", ledger.swap_test},
        {"basis_sample", ledger.basis_sample},
        {"norm_estimate", ledger.norm_estimate},
        {"postselect_attempts", ledger.postselect_attempts},
        {"weak_learner_calls", ledger.weak_learner_calls},
    };
}

void check_accuracy(double eps, double delta) {
    if (!(eps > 0 && eps < 1)) {
        throw ParameterError("accuracy eps must lie in (0, 1)");
    }
    if (!(delta > 0 && delta < 1)) {
        throw ParameterError("failure probability delta must lie in (0, 1)");
    }
}

double swap_shots(double eps, double delta, double c) {
    return std::ceil(c / (eps * eps) * std::log(1.0 / delta));
}

CopySource::CopySource(StateVector hidden, OracleMode mode, uint64_t seed, AccessOptions options) {
    if (std::abs(hidden.norm() - 1.0) > NORM_TOL) {
        throw ContractViolation("hidden state must be normalized");
    }
    if (!(options.swap_constant > 0)) {
        throw ParameterError("swap constant must be positive");
    }
    shared_ = std::make_shared<Shared>(Shared{CopyLedger{}, Rng(seed), mode, options});
    fourier_weights_ = std::make_shared<const std::vector<double>>(fourier_weights_of(hidden));
    hidden_ = std::make_shared<const StateVector>(std::move(hidden));
}

void CopySource::consume(CopyUse use, double copies) {
    copies = std::ceil(copies);
    if (copies <= 0) {
        return;
    }
    // Walk up the post-selection chain: each level needs one accepted attempt per copy.
    double needed = copies;
    for (std::size_t level = chain_.size(); level-- > 0;) {
        double p = chain_[level];
        double cap = caps_[level];
        if (mode() == OracleMode::Exact) {
            double per_copy = std::ceil(1.0 / p - 1e-9);
            if (per_copy > cap) {
                throw PostSelectionFailure("expected attempts per copy exceed the attempt cap");
            }
            needed *= per_copy;
        } else {
            // P[some copy needs more than cap attempts] = 1 - (1 - (1-p)^cap)^needed.
            double miss = std::exp(cap * std::log1p(-p));
            double any_fail = -std::expm1(needed * std::log1p(-miss));
            if (any_fail > 0 && std::bernoulli_distribution(std::min(1.0, any_fail))(rng())) {
                throw PostSelectionFailure("post-selection exhausted its attempt cap");
            }
            needed += draw_failures(rng(), needed, p);
        }
    }
    CopyLedger &ledger = shared_->ledger;
    switch (use) {
        case CopyUse::SwapTest:
            ledger.swap_test += copies;
            break;
        case CopyUse::BasisSample:
            ledger.basis_sample += copies;
            break;
        case CopyUse::NormEstimate:
            ledger.norm_estimate += copies;
            break;
    }
    ledger.postselect_attempts += needed - copies;
}

double CopySource::draw_estimate(double truth, double shots, bool swap) {
    truth = std::clamp(truth, 0.0, 1.0);
    if (mode() == OracleMode::Exact) {
        return truth;
    }
    // A SWAP shot accepts with probability (1 + F) / 2 and the estimate is 2 * mean - 1.
    if (swap) {
        double dev = draw_binomial_deviation(rng(), shots, (1.0 + truth) / 2.0);
        return std::clamp(truth + 2.0 * dev, 0.0, 1.0);
    }
    return std::clamp(truth + draw_binomial_deviation(rng(), shots, truth), 0.0, 1.0);
}

double swap_test_estimate(CopySource &src, const StateVector &other, double eps, double delta) {
    check_accuracy(eps, delta);
    double truth = fidelity(*src.hidden_, other);
    double shots = swap_shots(eps, delta, src.options().swap_constant);
    src.consume(CopyUse::SwapTest, shots);
    return src.draw_estimate(truth, shots, true);
}

double swap_test_parity(CopySource &src, ParityLabel label, double eps, double delta) {
    check_accuracy(eps, delta);
    check_label(src, label);
    double truth = (*src.fourier_weights_)[label.bits];
    double shots = swap_shots(eps, delta, src.options().swap_constant);
    src.consume(CopyUse::SwapTest, shots);
    return src.draw_estimate(truth, shots, true);
}

std::vector<Mask> basis_sample(CopySource &src, uint64_t shots, bool fourier) {
    if (shots < 1) {
        throw ParameterError("shots must be at least 1");
    }
    if ((double)shots > MAX_LISTED_SHOTS) {
        throw ResourceError("too many shots to list individually");
    }
    std::vector<double> weights;
    if (fourier) {
        weights = *src.fourier_weights_;
    } else {
        for (const cplx &a : src.hidden_->amplitudes()) {
            weights.push_back(std::norm(a));
        }
    }
    src.consume(CopyUse::BasisSample, (double)shots);
    std::discrete_distribution<Mask> dist(weights.begin(), weights.end());
    std::vector<Mask> out(shots);
    for (auto &x : out) {
        x = dist(src.rng());
    }
    return out;
}

std::vector<Mask> fourier_candidates(CopySource &src, double shots) {
    shots = std::ceil(shots);
    if (!(shots >= 1)) {
        throw ParameterError("shots must be at least 1");
    }
    src.consume(CopyUse::BasisSample, shots);
    const auto &w = *src.fourier_weights_;
    std::vector<Mask> out;
    if (src.mode() == OracleMode::Exact) {
        for (std::size_t z = 0; z < w.size(); z++) {
            if (w[z] > SUPPORT_TOL) {
                out.push_back(z);
            }
        }
        return out;
    }
    for (const auto &[z, count] : draw_histogram(src.rng(), shots, w)) {
        out.push_back(z);
    }
    return out;
}

CopySource prepare_residual(const CopySource &src, const ParitySpan &span, double attempt_cap) {
    if (!(attempt_cap >= 1)) {
        throw ParameterError("attempt cap must be at least 1");
    }
    ProjectionReport report = project_onto_span(*src.hidden_, span);
    double alpha_sq = report.residual_norm * report.residual_norm;
    if (alpha_sq < DEGENERATE_ALPHA_SQ || !report.residual) {
        throw DegenerateResidual("residual norm is numerically zero");
    }
    CopySource out;
    out.shared_ = src.shared_;
    out.fourier_weights_ = std::make_shared<const std::vector<double>>(fourier_weights_of(*report.residual));
    out.hidden_ = std::make_shared<const StateVector>(std::move(*report.residual));
    out.chain_ = src.chain_;
    out.chain_.push_back(alpha_sq);
    out.caps_ = src.caps_;
    out.caps_.push_back(attempt_cap);
    return out;
}

CopySource derive_postselected(const CopySource &root, StateVector state, double acceptance, double attempt_cap) {
    if (!(acceptance > 0 && acceptance <= 1)) {
        throw ParameterError("acceptance probability must lie in (0, 1]");
    }
    if (!(attempt_cap >= 1)) {
        throw ParameterError("attempt cap must be at least 1");
    }
    if (std::abs(state.norm() - 1.0) > NORM_TOL) {
        throw ContractViolation("post-selected state must be normalized");
    }
    CopySource out;
    out.shared_ = root.shared_;
    out.fourier_weights_ = std::make_shared<const std::vector<double>>(fourier_weights_of(state));
    out.hidden_ = std::make_shared<const StateVector>(std::move(state));
    out.chain_ = root.chain_;
    out.chain_.push_back(acceptance);
    out.caps_ = root.caps_;
    out.caps_.push_back(attempt_cap);
    return out;
}

double povm_norm_estimate(CopySource &src, const ParitySpan &span, double eps, double delta) {
    check_accuracy(eps, delta);
    const auto &w = *src.fourier_weights_;
    double inside = 0;
    for (auto l : span.labels()) {
        check_label(src, l);
        inside += w[l.bits];
    }
    double truth = std::max(0.0, 1.0 - inside);
    double shots = swap_shots(eps, delta, src.options().swap_constant);
    src.consume(CopyUse::NormEstimate, shots);
    return src.draw_estimate(truth, shots, false);
}

}  // namespace qboost
