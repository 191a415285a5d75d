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

#ifndef QBOOST_CONCEPTS_H
#define QBOOST_CONCEPTS_H

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qboost/statevec.h"

namespace qboost {

struct Parity {
    Mask mask = 0;
};

/// table bit j of the index corresponds to variable support[j].
struct Junta {
    std::vector<int> support;
    std::vector<uint8_t> table;
};

/// Leaves have var < 0 and carry `label`. Internal nodes read x[var] and
/// go to `lo` on 0 and `hi` on 1. Node 0 is the root.
struct DecisionTree {
    struct Node {
        int var = -1;
        int lo = -1;
        int hi = -1;
        uint8_t label = 0;
        bool is_leaf() const {
            return var < 0;
        }
    };
    std::vector<Node> nodes;
};

struct Literal {
    int var = 0;
    bool negated = false;
};

/// OR of ANDs. An empty term is true; an empty formula is false.
struct Dnf {
    std::vector<std::vector<Literal>> terms;
};

/// 1 iff at least k of the DNFs are satisfied.
struct ThresholdOfDnfs {
    int k = 1;
    std::vector<Dnf> dnfs;
};

class BooleanConcept {
   public:
    using Body = std::variant<Parity, Junta, DecisionTree, Dnf, ThresholdOfDnfs>;

    /// Validates variable indices against n. Throws ContractViolation.
    BooleanConcept(int n, Body body);

    int num_vars() const {
        return n_;
    }
    const Body &body() const {
        return body_;
    }
    /// Node count for trees, term count for DNFs, support size for juntas,
    /// number of DNFs for threshold circuits, 1 for parities.
    std::size_t size() const;
    uint8_t evaluate(Mask x) const;

   private:
    int n_;
    Body body_;
};

uint8_t evaluate(const BooleanConcept &c, Mask x);

/// f(x) for every x in index order.
std::vector<uint8_t> truth_table(const BooleanConcept &c);

/// 2^{-n/2} (-1)^{f(x)}.
StateVector phase_state_of(const BooleanConcept &c, int n);

struct FourierSpectrum {
    int n = 0;
    std::vector<double> coeffs;
};

FourierSpectrum fourier_spectrum(const BooleanConcept &c);
/// Spectrum of the +-1 view of an arbitrary truth table.
FourierSpectrum fourier_spectrum_of_table(int n, std::span<const uint8_t> table);

/// Sum of |f^(S)|. Throws ContractViolation when c is not a tree.
double dt_l1_norm(const BooleanConcept &c);
double l1_norm(const FourierSpectrum &spec);

/// Mass of the `budget` largest-magnitude coefficients (smaller mask first on ties).
double spectral_concentration(const FourierSpectrum &spec, std::size_t budget);

enum class ConceptKind { Parity, Junta, DecisionTree, Dnf, Tac };

struct ConceptParams {
    int n = 0;
    /// Tree node count, or term count per DNF.
    int size = 0;
    /// Junta arity, or threshold of a TAC (0 picks a random threshold).
    int k = 0;
    /// Maximum term width.
    int width = 0;
    /// Number of DNFs in a TAC.
    int m = 0;
    /// Trees read variable d at depth d.
    bool level_ordered = false;
};

/// Deterministic in seed. Throws ParameterError for infeasible parameters.
BooleanConcept random_concept(ConceptKind kind, const ConceptParams &params, uint64_t seed);

ConceptKind parse_concept_kind(const std::string &text);
std::string concept_kind_name(ConceptKind kind);

/// One-line text form, e.g. "dnf n=4 terms=x0&!x2|x1".
std::string to_text(const BooleanConcept &c);
BooleanConcept from_text(const std::string &line);

/// A threshold circuit with one DNF, used by the depth-3 code paths.
BooleanConcept as_threshold(const BooleanConcept &dnf);

}  // namespace qboost

#endif
