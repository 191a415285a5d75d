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

#include "qboost/weaklearn.h"

#include <cmath>

namespace qboost {

double Promise::operator()(double tau) const {
    return eta1 * std::pow(tau, eta2);
}

double parity_learner_samples(double tau, double delta) {
    return std::ceil(std::log(2.0 / delta) / tau);
}

ParityLabel agnostic_parity_learner(CopySource &src, double tau, double eps, double delta) {
    if (!(eps > 0 && eps <= tau && tau <= 1)) {
        throw ParameterError("parity learner needs 0 < eps <= tau <= 1");
    }
    if (!(delta > 0 && delta < 1)) {
        throw ParameterError("parity learner needs delta in (0, 1)");
    }
    std::vector<Mask> candidates = fourier_candidates(src, parity_learner_samples(tau, delta));
    if (candidates.empty()) {
        return ParityLabel{0};
    }
    double delta_each = delta / (2.0 * (double)candidates.size());
    ParityLabel best{candidates[0]};
    double best_value = -1;
    // Candidates arrive in increasing order, so a strict comparison keeps the smaller mask on ties.
    for (Mask z : candidates) {
        double value = swap_test_parity(src, ParityLabel{z}, eps / 2.0, delta_each);
        if (value > best_value) {
            best_value = value;
            best = ParityLabel{z};
        }
    }
    return best;
}

ParityLabel wal_decision_tree(CopySource &src, int s, double tau, double delta) {
    if (s < 1) {
        throw ParameterError("tree size must be positive");
    }
    if (!(tau > 0 && tau <= 1)) {
        throw ParameterError("tau must lie in (0, 1]");
    }
    double s2 = (double)s * (double)s;
    return agnostic_parity_learner(src, tau / s2, tau / (2.0 * s2), delta);
}

double mansour_log2_sstar(int s, double tau, const MansourConstants &mansour) {
    if (s < 1 || !(tau > 0 && tau <= 1)) {
        throw ParameterError("s* needs s >= 1 and tau in (0, 1]");
    }
    if (!(mansour.c1 > 0 && mansour.c2 > 0)) {
        throw ParameterError("Mansour constants must be positive");
    }
    double ratio = (double)s / tau;
    double exponent = mansour.c1 * std::log2(std::log2(std::max(ratio, 4.0))) * std::log2(mansour.c2 / tau);
    return std::max(0.0, exponent * std::log2(ratio));
}

ParityLabel wal_dnf_with_sstar(CopySource &src, double log2_sstar, double tau, double delta) {
    if (!(tau > 0 && tau <= 1)) {
        throw ParameterError("tau must lie in (0, 1]");
    }
    double sstar = std::exp2(log2_sstar);
    return agnostic_parity_learner(src, tau / sstar, tau / (2.0 * sstar), delta);
}

ParityLabel wal_dnf(CopySource &src, int s, double tau, double delta, const MansourConstants &mansour) {
    double l2 = mansour_log2_sstar(s, tau, mansour);
    if (l2 > src.num_qubits()) {
        throw ThresholdDegenerate("s* = 2^" + std::to_string(l2) + " exceeds 2^n");
    }
    return wal_dnf_with_sstar(src, l2, tau, delta);
}

WeakLearner make_parity_weak_learner() {
    WeakLearner w;
    w.name = "parity";
    w.promise = Promise{0.5, 1.0};
    w.learn = [](CopySource &src, double tau, double delta) {
        return agnostic_parity_learner(src, tau, tau / 2.0, delta);
    };
    return w;
}

WeakLearner make_dt_weak_learner(int s) {
    if (s < 1) {
        throw ParameterError("tree size must be positive");
    }
    WeakLearner w;
    w.name = "dt";
    w.promise = Promise{1.0 / (2.0 * (double)s * (double)s), 1.0};
    w.learn = [s](CopySource &src, double tau, double delta) { return wal_decision_tree(src, s, tau, delta); };
    return w;
}

WeakLearner make_dnf_weak_learner(int s, double tau_ref, const MansourConstants &mansour, int n, bool clamp) {
    double l2 = mansour_log2_sstar(s, tau_ref, mansour);
    bool clamped = false;
    if (l2 > n) {
        if (!clamp) {
            throw ThresholdDegenerate("s* = 2^" + std::to_string(l2) + " exceeds 2^n");
        }
        l2 = n;
        clamped = true;
    }
    WeakLearner w;
    w.name = "dnf";
    w.promise = Promise{1.0 / (2.0 * std::exp2(l2)), 1.0};
    w.learn = [l2](CopySource &src, double tau, double delta) { return wal_dnf_with_sstar(src, l2, tau, delta); };
    w.log2_sstar = l2;
    w.sstar_clamped = clamped;
    return w;
}

}  // namespace qboost
