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

#include "qboost/concepts.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace qboost {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_var(int var, int n) {
    if (var < 0 || var >= n) {
        throw ContractViolation("variable index " + std::to_string(var) + " out of range for n=" + std::to_string(n));
    }
}

void validate_dnf(const Dnf &d, int n) {
    for (const auto &term : d.terms) {
        for (const auto &lit : term) {
            check_var(lit.var, n);
        }
    }
}

void validate_tree(const DecisionTree &t, int n) {
    if (t.nodes.empty()) {
        throw ContractViolation("decision tree has no nodes");
    }
    std::vector<int> parents(t.nodes.size(), 0);
    for (const auto &node : t.nodes) {
        if (node.is_leaf()) {
            continue;
        }
        check_var(node.var, n);
        for (int child : {node.lo, node.hi}) {
            if (child <= 0 || child >= (int)t.nodes.size()) {
                throw ContractViolation("decision tree child index out of range");
            }
            parents[child]++;
        }
    }
    for (std::size_t i = 1; i < parents.size(); i++) {
        if (parents[i] != 1) {
            throw ContractViolation("decision tree nodes must form a single tree rooted at node 0");
        }
    }
}

bool eval_dnf(const Dnf &d, Mask x) {
    for (const auto &term : d.terms) {
        bool sat = true;
        for (const auto &lit : term) {
            bool v = (x >> lit.var) & 1;
            if (v == lit.negated) {
                sat = false;
                break;
            }
        }
        if (sat) {
            return true;
        }
    }
    return false;
}

}  // namespace

BooleanConcept::BooleanConcept(int n, Body body) : n_(n), body_(std::move(body)) {
    if (n < 1 || n > 63) {
        throw ContractViolation("variable count out of range");
    }
    std::visit(
        overloaded{
            [&](const Parity &p) {
                if (p.mask >> n) {
                    throw ContractViolation("parity mask out of range");
                }
            },
            [&](const Junta &j) {
                for (int v : j.support) {
                    check_var(v, n);
                }
                std::vector<int> sorted = j.support;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    throw ContractViolation("junta support has a repeated variable");
                }
                if (j.table.size() != (std::size_t{1} << j.support.size())) {
                    throw ContractViolation("junta table size must be 2^|support|");
                }
            },
            [&](const DecisionTree &t) { validate_tree(t, n); },
            [&](const Dnf &d) { validate_dnf(d, n); },
            [&](const ThresholdOfDnfs &t) {
                for (const auto &d : t.dnfs) {
                    validate_dnf(d, n);
                }
            },
        },
        body_);
}

std::size_t BooleanConcept::size() const {
    return std::visit(
        overloaded{
            [](const Parity &) -> std::size_t { return 1; },
            [](const Junta &j) -> std::size_t { return j.support.size(); },
            [](const DecisionTree &t) -> std::size_t { return t.nodes.size(); },
            [](const Dnf &d) -> std::size_t { return d.terms.size(); },
            [](const ThresholdOfDnfs &t) -> std::size_t { return t.dnfs.size(); },
        },
        body_);
}

uint8_t BooleanConcept::evaluate(Mask x) const {
    if (x >> n_) {
        throw ContractViolation("input has more than n bits");
    }
    return std::visit(
        overloaded{
            [&](const Parity &p) -> uint8_t { return (uint8_t)dot_parity(p.mask, x); },
            [&](const Junta &j) -> uint8_t {
                std::size_t idx = 0;
                for (std::size_t b = 0; b < j.support.size(); b++) {
                    idx |= (std::size_t)((x >> j.support[b]) & 1) << b;
                }
                return j.table[idx];
            },
            [&](const DecisionTree &t) -> uint8_t {
                int at = 0;
                while (!t.nodes[at].is_leaf()) {
                    const auto &node = t.nodes[at];
                    at = ((x >> node.var) & 1) ? node.hi : node.lo;
                }
                return t.nodes[at].label;
            },
            [&](const Dnf &d) -> uint8_t { return eval_dnf(d, x); },
            [&](const ThresholdOfDnfs &t) -> uint8_t {
                int count = 0;
                for (const auto &d : t.dnfs) {
                    count += eval_dnf(d, x);
                }
                return count >= t.k;
            },
        },
        body_);
}

uint8_t evaluate(const BooleanConcept &c, Mask x) {
    return c.evaluate(x);
}

std::vector<uint8_t> truth_table(const BooleanConcept &c) {
    check_qubit_count(c.num_vars());
    std::ptrdiff_t dim = (std::ptrdiff_t)1 << c.num_vars();
    std::vector<uint8_t> table(dim);
#pragma omp parallel for schedule(static) if (dim >= (std::ptrdiff_t)kernels::PARALLEL_THRESHOLD)
    for (std::ptrdiff_t x = 0; x < dim; x++) {
        table[x] = c.evaluate((Mask)x);
    }
    return table;
}

StateVector phase_state_of(const BooleanConcept &c, int n) {
    check_qubit_count(n);
    if (n != c.num_vars()) {
        throw ContractViolation("phase_state_of: n differs from the concept's variable count");
    }
    auto table = truth_table(c);
    return StateVector::phase(n, table);
}

FourierSpectrum fourier_spectrum_of_table(int n, std::span<const uint8_t> table) {
    check_qubit_count(n);
    if (table.size() != (std::size_t{1} << n)) {
        throw ContractViolation("truth table size does not match 2^n");
    }
    FourierSpectrum spec;
    spec.n = n;
    spec.coeffs.resize(table.size());
    for (std::size_t x = 0; x < table.size(); x++) {
        spec.coeffs[x] = table[x] ? -1.0 : 1.0;
    }
    kernels::fwht(std::span<double>(spec.coeffs));
    double scale = std::ldexp(1.0, -n);
    for (auto &v : spec.coeffs) {
        v *= scale;
    }
    return spec;
}

FourierSpectrum fourier_spectrum(const BooleanConcept &c) {
    auto table = truth_table(c);
    return fourier_spectrum_of_table(c.num_vars(), table);
}

double l1_norm(const FourierSpectrum &spec) {
    double total = 0;
    for (double v : spec.coeffs) {
        total += std::abs(v);
    }
    return total;
}

double dt_l1_norm(const BooleanConcept &c) {
    if (!std::holds_alternative<DecisionTree>(c.body())) {
        throw ContractViolation("dt_l1_norm needs a decision tree");
    }
    return l1_norm(fourier_spectrum(c));
}

double spectral_concentration(const FourierSpectrum &spec, std::size_t budget) {
    if (budget < 1) {
        throw ContractViolation("budget must be at least 1");
    }
    std::vector<std::size_t> order(spec.coeffs.size());
    std::iota(order.begin(), order.end(), 0);
    budget = std::min(budget, order.size());
    std::partial_sort(order.begin(), order.begin() + budget, order.end(), [&](std::size_t a, std::size_t b) {
        double fa = std::abs(spec.coeffs[a]);
        double fb = std::abs(spec.coeffs[b]);
        if (fa != fb) {
            return fa > fb;
        }
        return a < b;
    });
    double mass = 0;
    for (std::size_t i = 0; i < budget; i++) {
        mass += spec.coeffs[order[i]] * spec.coeffs[order[i]];
    }
    return mass;
}

namespace {

std::vector<int> pick_distinct(std::mt19937_64 &rng, int n, int k) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < k; i++) {
        std::uniform_int_distribution<int> d(i, n - 1);
        std::swap(all[i], all[d(rng)]);
    }
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
}

Dnf random_dnf(std::mt19937_64 &rng, int n, int terms, int width) {
    Dnf d;
    std::uniform_int_distribution<int> wdist(1, width);
    std::bernoulli_distribution coin(0.5);
    for (int t = 0; t < terms; t++) {
        std::vector<Literal> term;
        for (int v : pick_distinct(rng, n, wdist(rng))) {
            term.push_back({v, coin(rng)});
        }
        d.terms.push_back(std::move(term));
    }
    return d;
}

DecisionTree random_tree(std::mt19937_64 &rng, int n, int size, bool level_ordered) {
    DecisionTree t;
    std::bernoulli_distribution coin(0.5);
    std::vector<int> depth;
    t.nodes.push_back({});
    depth.push_back(0);
    std::uniform_int_distribution<int> vdist(0, n - 1);
    while ((int)t.nodes.size() < size) {
        std::vector<int> open;
        for (std::size_t i = 0; i < t.nodes.size(); i++) {
            if (t.nodes[i].is_leaf() && (!level_ordered || depth[i] < n)) {
                open.push_back((int)i);
            }
        }
        if (open.empty()) {
            throw ParameterError("tree size too large for a level-ordered tree on n variables");
        }
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        int leaf = open[pick(rng)];
        int d = depth[leaf];
        int lo = (int)t.nodes.size();
        t.nodes.push_back({});
        t.nodes.push_back({});
        depth.push_back(d + 1);
        depth.push_back(d + 1);
        t.nodes[leaf].var = level_ordered ? d : vdist(rng);
        t.nodes[leaf].lo = lo;
        t.nodes[leaf].hi = lo + 1;
    }
    for (auto &node : t.nodes) {
        if (node.is_leaf()) {
            node.label = coin(rng);
        }
    }
    return t;
}

}  // namespace

BooleanConcept random_concept(ConceptKind kind, const ConceptParams &p, uint64_t seed) {
    if (p.n < 1 || p.n > 63) {
        throw ParameterError("n out of range");
    }
    std::mt19937_64 rng(seed);
    switch (kind) {
        case ConceptKind::Parity: {
            std::uniform_int_distribution<Mask> d(0, (Mask{1} << p.n) - 1);
            return BooleanConcept(p.n, Parity{d(rng)});
        }
        case ConceptKind::Junta: {
            if (p.k < 0 || p.k > p.n || p.k > 20) {
                throw ParameterError("junta arity must lie in [0, min(n, 20)]");
            }
            Junta j;
            j.support = pick_distinct(rng, p.n, p.k);
            std::bernoulli_distribution coin(0.5);
            j.table.resize(std::size_t{1} << p.k);
            for (auto &b : j.table) {
                b = coin(rng);
            }
            return BooleanConcept(p.n, std::move(j));
        }
        case ConceptKind::DecisionTree: {
            if (p.size < 1 || p.size % 2 == 0) {
                throw ParameterError("decision tree size must be a positive odd node count");
            }
            return BooleanConcept(p.n, random_tree(rng, p.n, p.size, p.level_ordered));
        }
        case ConceptKind::Dnf: {
            if (p.size < 1 || p.width < 1 || p.width > p.n) {
                throw ParameterError("DNF needs size >= 1 and 1 <= width <= n");
            }
            return BooleanConcept(p.n, random_dnf(rng, p.n, p.size, p.width));
        }
        case ConceptKind::Tac: {
            if (p.m < 1 || p.size < 1 || p.width < 1 || p.width > p.n || p.k < 0 || p.k > p.m) {
                throw ParameterError("TAC needs m >= 1, size >= 1, 1 <= width <= n, 0 <= k <= m");
            }
            ThresholdOfDnfs t;
            for (int i = 0; i < p.m; i++) {
                t.dnfs.push_back(random_dnf(rng, p.n, p.size, p.width));
            }
            if (p.k == 0) {
                std::uniform_int_distribution<int> kd(1, p.m);
                t.k = kd(rng);
            } else {
                t.k = p.k;
            }
            return BooleanConcept(p.n, std::move(t));
        }
    }
    throw ParameterError("unknown concept kind");
}

ConceptKind parse_concept_kind(const std::string &text) {
    if (text == "parity") return ConceptKind::Parity;
    if (text == "junta") return ConceptKind::Junta;
    if (text == "dt") return ConceptKind::DecisionTree;
    if (text == "dnf") return ConceptKind::Dnf;
    if (text == "tac") return ConceptKind::Tac;
    throw ParameterError("unknown concept kind '" + text + "'");
}

std::string concept_kind_name(ConceptKind kind) {
    switch (kind) {
        case ConceptKind::Parity:
            return "parity";
        case ConceptKind::Junta:
            return "junta";
        case ConceptKind::DecisionTree:
            return "dt";
        case ConceptKind::Dnf:
            return "dnf";
        case ConceptKind::Tac:
            return "tac";
    }
    return "?";
}

namespace {

std::string dnf_text(const Dnf &d) {
    if (d.terms.empty()) {
        return "F";
    }
    std::string out;
    for (std::size_t t = 0; t < d.terms.size(); t++) {
        if (t) {
            out += '|';
        }
        if (d.terms[t].empty()) {
            out += 'T';
        }
        for (std::size_t l = 0; l < d.terms[t].size(); l++) {
            if (l) {
                out += '&';
            }
            if (d.terms[t][l].negated) {
                out += '!';
            }
            out += 'x' + std::to_string(d.terms[t][l].var);
        }
    }
    return out;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string &s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception &) {
        throw ParameterError("expected an integer, got '" + s + "'");
    }
    if (used != s.size()) {
        throw ParameterError("expected an integer, got '" + s + "'");
    }
    return v;
}

Dnf parse_dnf(const std::string &s) {
    Dnf d;
    if (s == "F") {
        return d;
    }
    for (const auto &term_text : split(s, '|')) {
        std::vector<Literal> term;
        if (term_text != "T") {
            for (auto lit : split(term_text, '&')) {
                Literal l;
                if (!lit.empty() && lit[0] == '!') {
                    l.negated = true;
                    lit = lit.substr(1);
                }
                if (lit.size() < 2 || lit[0] != 'x') {
                    throw ParameterError("bad literal '" + lit + "'");
                }
                l.var = parse_int(lit.substr(1));
                term.push_back(l);
            }
        }
        d.terms.push_back(std::move(term));
    }
    return d;
}

}  // namespace

std::string to_text(const BooleanConcept &c) {
    std::ostringstream out;
    int n = c.num_vars();
    std::visit(
        overloaded{
            [&](const Parity &p) { out << "parity n=" << n << " mask=" << std::hex << p.mask << std::dec; },
            [&](const Junta &j) {
                out << "junta n=" << n << " support=";
                for (std::size_t i = 0; i < j.support.size(); i++) {
                    out << (i ? "," : "") << j.support[i];
                }
                out << " table=";
                for (auto b : j.table) {
                    out << (int)b;
                }
            },
            [&](const DecisionTree &t) {
                out << "dt n=" << n << " nodes=";
                for (std::size_t i = 0; i < t.nodes.size(); i++) {
                    const auto &node = t.nodes[i];
                    out << (i ? ";" : "");
                    if (node.is_leaf()) {
                        out << 'L' << (int)node.label;
                    } else {
                        out << 'v' << node.var << ':' << node.lo << ':' << node.hi;
                    }
                }
            },
            [&](const Dnf &d) { out << "dnf n=" << n << " terms=" << dnf_text(d); },
            [&](const ThresholdOfDnfs &t) {
                out << "tac n=" << n << " k=" << t.k << " dnfs=";
                for (std::size_t i = 0; i < t.dnfs.size(); i++) {
                    out << (i ? ";" : "") << dnf_text(t.dnfs[i]);
                }
            },
        },
        c.body());
    return out.str();
}

BooleanConcept from_text(const std::string &line) {
    std::istringstream in(line);
    std::string kind;
    in >> kind;
    std::map<std::string, std::string> kv;
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("expected key=value, got '" + tok + "'");
        }
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto need = [&](const std::string &key) -> const std::string & {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw ParameterError("concept text is missing '" + key + "'");
        }
        return it->second;
    };
    int n = parse_int(need("n"));
    if (kind == "parity") {
        Mask mask = 0;
        try {
            mask = std::stoull(need("mask"), nullptr, 16);
        } catch (const std::exception &) {
            throw ParameterError("bad parity mask");
        }
        return BooleanConcept(n, Parity{mask});
    }
    if (kind == "junta") {
        Junta j;
        const auto &sup = need("support");
        if (!sup.empty()) {
            for (const auto &v : split(sup, ',')) {
                j.support.push_back(parse_int(v));
            }
        }
        for (char ch : need("table")) {
            if (ch != '0' && ch != '1') {
                throw ParameterError("junta table must be a 0/1 string");
            }
            j.table.push_back(ch == '1');
        }
        return BooleanConcept(n, std::move(j));
    }
    if (kind == "dt") {
        DecisionTree t;
        for (const auto &node_text : split(need("nodes"), ';')) {
            DecisionTree::Node node;
            if (node_text.size() == 2 && node_text[0] == 'L') {
                node.label = node_text[1] == '1';
            } else if (!node_text.empty() && node_text[0] == 'v') {
                auto parts = split(node_text.substr(1), ':');
                if (parts.size() != 3) {
                    throw ParameterError("bad tree node '" + node_text + "'");
                }
                node.var = parse_int(parts[0]);
                node.lo = parse_int(parts[1]);
                node.hi = parse_int(parts[2]);
            } else {
                throw ParameterError("bad tree node '" + node_text + "'");
            }
            t.nodes.push_back(node);
        }
        return BooleanConcept(n, std::move(t));
    }
    if (kind == "dnf") {
        return BooleanConcept(n, parse_dnf(need("terms")));
    }
    if (kind == "tac") {
        ThresholdOfDnfs t;
        t.k = parse_int(need("k"));
        for (const auto &d : split(need("dnfs"), ';')) {
            t.dnfs.push_back(parse_dnf(d));
        }
        return BooleanConcept(n, std::move(t));
    }
    throw ParameterError("unknown concept kind '" + kind + "'");
}

BooleanConcept as_threshold(const BooleanConcept &dnf) {
    const Dnf *d = std::get_if<Dnf>(&dnf.body());
    if (!d) {
        throw ContractViolation("as_threshold needs a DNF");
    }
    return BooleanConcept(dnf.num_vars(), ThresholdOfDnfs{1, {*d}});
}

}  // namespace qboost
