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

#include "qboost/analysis.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace qboost {

BipartitionCut BipartitionCut::contiguous(int c) {
    BipartitionCut cut;
    for (int i = 0; i < c; i++) {
        cut.left.push_back(i);
    }
    return cut;
}

namespace {

Mask gather(Mask x, std::span<const int> positions) {
    Mask out = 0;
    for (std::size_t b = 0; b < positions.size(); b++) {
        out |= ((x >> positions[b]) & 1) << b;
    }
    return out;
}

std::vector<Dnf> inputs_of(const BooleanConcept &f, int &k) {
    if (const auto *t = std::get_if<ThresholdOfDnfs>(&f.body())) {
        k = t->k;
        return t->dnfs;
    }
    if (const auto *d = std::get_if<Dnf>(&f.body())) {
        k = 1;
        return {*d};
    }
    throw ContractViolation("discriminator checks need a threshold circuit or a DNF");
}

}  // namespace

std::size_t schmidt_rank(const StateVector &s, const BipartitionCut &cut, double tol) {
    const int n = s.num_qubits();
    std::vector<bool> on_left(n, false);
    for (int q : cut.left) {
        if (q < 0 || q >= n || on_left[q]) {
            throw ContractViolation("cut lists an invalid or repeated qubit");
        }
        on_left[q] = true;
    }
    std::vector<int> left;
    std::vector<int> right;
    for (int q = 0; q < n; q++) {
        (on_left[q] ? left : right).push_back(q);
    }
    if (left.empty() || right.empty()) {
        throw ContractViolation("both sides of a cut must be nonempty");
    }
    if (std::min(left.size(), right.size()) > 12) {
        throw ResourceError("cut too balanced for a dense SVD");
    }
    Eigen::MatrixXcd m(std::size_t{1} << left.size(), std::size_t{1} << right.size());
    for (std::size_t x = 0; x < s.dim(); x++) {
        m(gather(x, left), gather(x, right)) = s[x];
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto &sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0) {
        return 0;
    }
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); i++) {
        rank += sv(i) > tol * sv(0);
    }
    return rank;
}

std::size_t bond_dimension(const StateVector &s, double tol) {
    std::size_t best = 1;
    for (int c = 1; c < s.num_qubits(); c++) {
        best = std::max(best, schmidt_rank(s, BipartitionCut::contiguous(c), tol));
    }
    return best;
}

BooleanConcept hard_dnf_instance(int s) {
    if (s < 1 || 2 * s > MAX_QUBITS) {
        throw ResourceError("hard instance needs 1 <= s and 2s within the qubit cap");
    }
    Dnf d;
    for (int i = 0; i < s; i++) {
        d.terms.push_back({Literal{i, false}, Literal{s + i, false}});
    }
    return BooleanConcept(2 * s, std::move(d));
}

double hard_dnf_factorization_error(int s) {
    BooleanConcept f = hard_dnf_instance(s);
    auto table = truth_table(f);
    const std::size_t side = std::size_t{1} << s;
    Eigen::MatrixXd m(side, side);
    Eigen::MatrixXd u(side, side);
    Eigen::VectorXd alpha(side);
    for (std::size_t x = 0; x < side; x++) {
        for (std::size_t y = 0; y < side; y++) {
            m(x, y) = table[x | (y << s)] ? -1.0 : 1.0;
        }
        for (std::size_t set = 0; set < side; set++) {
            u(x, set) = (x & set) == set ? 1.0 : 0.0;
        }
    }
    for (std::size_t set = 0; set < side; set++) {
        alpha(set) = set == 0 ? 1.0 : 2.0 * (__builtin_popcountll(set) % 2 ? -1.0 : 1.0);
    }
    Eigen::MatrixXd rebuilt = u * alpha.asDiagonal() * u.transpose();
    return (m - rebuilt).cwiseAbs().maxCoeff();
}

std::vector<double> product_distribution(std::span<const double> p) {
    const int n = (int)p.size();
    check_qubit_count(n);
    std::vector<double> d(std::size_t{1} << n);
    for (std::size_t x = 0; x < d.size(); x++) {
        double w = 1;
        for (int i = 0; i < n; i++) {
            w *= (x >> i) & 1 ? p[i] : 1 - p[i];
        }
        d[x] = w;
    }
    return d;
}

DiscriminatorReport verify_discriminator(const BooleanConcept &f, std::span<const double> dist) {
    const int n = f.num_vars();
    if (n > 16) {
        throw ResourceError("discriminator check is exhaustive and needs n <= 16");
    }
    if (dist.size() != (std::size_t{1} << n)) {
        throw ContractViolation("distribution size does not match 2^n");
    }
    int k = 1;
    std::vector<Dnf> inputs = inputs_of(f, k);
    DiscriminatorReport r;
    r.correlations.assign(inputs.size(), 0.0);
    std::vector<BooleanConcept> parts;
    for (const auto &d : inputs) {
        parts.emplace_back(n, d);
    }
    double mean_f = 0;
    for (std::size_t x = 0; x < dist.size(); x++) {
        if (dist[x] == 0) {
            continue;
        }
        double fx = f.evaluate(x) ? -1.0 : 1.0;
        mean_f += dist[x] * fx;
        for (std::size_t i = 0; i < parts.size(); i++) {
            double cx = parts[i].evaluate(x) ? -1.0 : 1.0;
            r.correlations[i] += dist[x] * fx * cx;
        }
    }
    for (std::size_t i = 0; i < r.correlations.size(); i++) {
        if (std::abs(r.correlations[i]) > r.best) {
            r.best = std::abs(r.correlations[i]);
            r.best_index = i;
        }
    }
    r.constant = std::abs(mean_f);
    r.bound = 1.0 / (2.0 * (double)inputs.size());
    r.holds = r.best >= r.bound - 1e-12;
    r.holds_with_constant = std::max(r.best, r.constant) >= r.bound - 1e-12;
    return r;
}

ResidualReport residual_discriminator_check(const BooleanConcept &f, std::span<const ParityLabel> labels, double eps) {
    const int n = f.num_vars();
    if (n > 14) {
        throw ResourceError("residual check is exhaustive and needs n <= 14");
    }
    int k = 1;
    std::vector<Dnf> inputs = inputs_of(f, k);
    const double m = (double)inputs.size();
    auto table = truth_table(f);
    FourierSpectrum spec = fourier_spectrum_of_table(n, table);

    std::vector<double> h(table.size(), 0.0);
    for (auto l : labels) {
        h[l.bits] += spec.coeffs[l.bits];
    }
    kernels::fwht(std::span<double>(h));

    ResidualReport r;
    r.t = (int)labels.size() + 1;
    const double scale = std::ldexp(1.0, -n);
    std::vector<double> resid(table.size());
    double alpha_sq = 0;
    for (std::size_t x = 0; x < table.size(); x++) {
        resid[x] = (table[x] ? -1.0 : 1.0) - h[x];
        r.delta += std::abs(resid[x]) * scale;
        alpha_sq += resid[x] * resid[x] * scale;
    }
    r.alpha_sq = alpha_sq;
    r.delta_bound_holds = r.delta >= alpha_sq / 2.0 - 1e-12;
    double alpha = std::sqrt(alpha_sq);

    std::vector<double> dist(table.size(), 0.0);
    if (r.delta > 0) {
        for (std::size_t x = 0; x < table.size(); x++) {
            dist[x] = std::abs(resid[x]) * scale / r.delta;
            r.weight_sum += dist[x];
        }
        r.discriminator = verify_discriminator(f, dist);
    }

    if (alpha > 0) {
        double mean = 0;
        for (std::size_t x = 0; x < table.size(); x++) {
            mean += resid[x] * scale;
        }
        for (const auto &d : inputs) {
            BooleanConcept c(n, d);
            double dot = 0;
            for (std::size_t x = 0; x < table.size(); x++) {
                dot += resid[x] * (c.evaluate(x) ? -1.0 : 1.0) * scale;
            }
            r.best_overlap = std::max(r.best_overlap, std::abs(dot) / alpha);
        }
        r.best_overlap_with_constant = std::max(r.best_overlap, std::abs(mean) / alpha);
    }
    r.target_bound = std::sqrt(eps) / m;
    r.target_bound_holds = alpha < std::sqrt(eps) || r.best_overlap >= r.target_bound - 1e-12;
    r.provable_bound = alpha / (4.0 * m);
    r.provable_bound_holds = r.best_overlap_with_constant >= r.provable_bound - 1e-12;
    return r;
}

}  // namespace qboost
