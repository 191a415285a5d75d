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

#ifndef QBOOST_ACCESS_H
#define QBOOST_ACCESS_H

#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "qboost/sampling.h"
#include "qboost/statevec.h"

namespace qboost {

enum class OracleMode { Exact, Sampled };

OracleMode parse_mode(const std::string &text);
std::string mode_name(OracleMode mode);

/// Copies of the root state consumed so far, by purpose. weak_learner_calls
/// counts invocations and is not part of the copy total.
struct CopyLedger {
    double swap_test = 0;
    double basis_sample = 0;
    double norm_estimate = 0;
    double postselect_attempts = 0;
    uint64_t weak_learner_calls = 0;

    double total() const {
        return swap_test + basis_sample + norm_estimate + postselect_attempts;
    }
};

void to_json(nlohmann::json &j, const CopyLedger &ledger);

enum class CopyUse { SwapTest, BasisSample, NormEstimate };

struct AccessOptions {
    /// c in ceil(c / eps^2 * ln(1/delta)).
    double swap_constant = 2.0;
};

/// ceil(c / eps^2 * ln(1/delta)), as a double since it can exceed 2^64.
double swap_shots(double eps, double delta, double c = 2.0);

/// Copies of a fixed hidden state. Residual sources made by prepare_residual
/// share the ledger and random stream of the source they came from.
class CopySource {
   public:
    CopySource(StateVector hidden, OracleMode mode, uint64_t seed, AccessOptions options = {});

    int num_qubits() const {
        return hidden_->num_qubits();
    }
    OracleMode mode() const {
        return shared_->mode;
    }
    const AccessOptions &options() const {
        return shared_->options;
    }
    const CopyLedger &ledger() const {
        return shared_->ledger;
    }
    Rng &rng() {
        return shared_->rng;
    }
    /// Post-selection acceptance probabilities from the root down to this source.
    const std::vector<double> &acceptance_chain() const {
        return chain_;
    }

    void note_weak_learner_call() {
        shared_->ledger.weak_learner_calls++;
    }

    /// Charges `copies` copies of this source to `use`. For a residual source the
    /// root copies spent on rejected post-selection attempts go to postselect_attempts.
    void consume(CopyUse use, double copies);

    /// The hidden state itself. For oracle diagnostics (traces, reports) only;
    /// learning procedures must go through the measurement operations below.
    const StateVector &hidden_for_diagnostics() const {
        return *hidden_;
    }

    friend double swap_test_estimate(CopySource &src, const StateVector &other, double eps, double delta);
    friend double swap_test_parity(CopySource &src, ParityLabel label, double eps, double delta);
    friend std::vector<Mask> basis_sample(CopySource &src, uint64_t shots, bool fourier);
    friend std::vector<Mask> fourier_candidates(CopySource &src, double shots);
    friend CopySource prepare_residual(const CopySource &src, const ParitySpan &span, double attempt_cap);
    friend double povm_norm_estimate(CopySource &src, const ParitySpan &span, double eps, double delta);
    friend CopySource derive_postselected(const CopySource &root, StateVector state, double acceptance,
                                          double attempt_cap);

   private:
    struct Shared {
        CopyLedger ledger;
        Rng rng;
        OracleMode mode;
        AccessOptions options;
    };

    CopySource() = default;
    double draw_estimate(double truth, double shots, bool swap);

    std::shared_ptr<Shared> shared_;
    std::shared_ptr<const StateVector> hidden_;
    /// |<chi_S|hidden>|^2 for every S.
    std::shared_ptr<const std::vector<double>> fourier_weights_;
    std::vector<double> chain_;
    std::vector<double> caps_;
};

/// Estimate of |<hidden|other>|^2 within eps with probability >= 1 - delta.
double swap_test_estimate(CopySource &src, const StateVector &other, double eps, double delta);

/// Same measurement against |chi_label>, using the cached spectrum.
double swap_test_parity(CopySource &src, ParityLabel label, double eps, double delta);

/// Computational-basis (or Fourier-basis when `fourier`) samples.
std::vector<Mask> basis_sample(CopySource &src, uint64_t shots, bool fourier);

/// Distinct outcomes of `shots` Fourier samples, in increasing order. Exact mode
/// returns the support of the Fourier distribution.
std::vector<Mask> fourier_candidates(CopySource &src, double shots);

/// Source for the normalized residual (I - Lambda) hidden / alpha.
CopySource prepare_residual(const CopySource &src, const ParitySpan &span, double attempt_cap);

/// Source for a state obtained from root copies by a measurement that succeeds
/// with probability `acceptance`. Shares the root's ledger and random stream.
CopySource derive_postselected(const CopySource &root, StateVector state, double acceptance, double attempt_cap);

/// Estimate of alpha^2 = <hidden|(I - Lambda)|hidden>.
double povm_norm_estimate(CopySource &src, const ParitySpan &span, double eps, double delta);

/// Throws ParameterError unless 0 < eps < 1 and 0 < delta < 1.
void check_accuracy(double eps, double delta);

}  // namespace qboost

#endif
