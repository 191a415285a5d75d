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

#ifndef QBOOST_WEAKLEARN_H
#define QBOOST_WEAKLEARN_H

#include <functional>
#include <string>

#include "qboost/access.h"

namespace qboost {

/// eta(tau) = eta1 * tau^eta2.
struct Promise {
    double eta1 = 0;
    double eta2 = 1;
    double operator()(double tau) const;
};

/// A procedure that, given copies of a state with class fidelity >= tau,
/// returns a parity with squared overlap >= promise(tau) w.p. >= 1 - delta.
struct WeakLearner {
    std::string name;
    Promise promise;
    std::function<ParityLabel(CopySource &, double tau, double delta)> learn;
    /// DNF learners only: log2 of the s* in use, and whether it was capped at 2^n.
    double log2_sstar = 0;
    bool sstar_clamped = false;
};

/// Number of Fourier samples drawn by the parity learner: ceil(ln(2/delta) / tau).
double parity_learner_samples(double tau, double delta);

ParityLabel agnostic_parity_learner(CopySource &src, double tau, double eps, double delta);

ParityLabel wal_decision_tree(CopySource &src, int s, double tau, double delta);

struct MansourConstants {
    double c1 = 1.0;
    double c2 = 8.0;
};

/// log2 of s* = (s/tau)^{c1 * log2 log2 max(s/tau, 4) * log2(c2/tau)}.
double mansour_log2_sstar(int s, double tau, const MansourConstants &mansour);

/// Parity learner at threshold tau/s*. Throws ThresholdDegenerate when s* > 2^n.
ParityLabel wal_dnf(CopySource &src, int s, double tau, double delta, const MansourConstants &mansour);
/// Same, with s* given explicitly (as log2) so that callers may clamp it.
ParityLabel wal_dnf_with_sstar(CopySource &src, double log2_sstar, double tau, double delta);

/// Threshold tau, accuracy tau/2, promise eta(tau) = tau/2.
WeakLearner make_parity_weak_learner();
/// Promise eta(tau) = tau / (2 s^2).
WeakLearner make_dt_weak_learner(int s);
/// s* is evaluated once at tau_ref and then held fixed, so eta(tau) = tau / (2 s*).
/// When clamp is set, s* is capped at 2^n.
WeakLearner make_dnf_weak_learner(int s, double tau_ref, const MansourConstants &mansour, int n, bool clamp);

}  // namespace qboost

#endif
