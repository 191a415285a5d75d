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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.h"
#include "qboost/analysis.h"

using namespace qboost;

namespace {

std::vector<std::vector<double>> amplitude_matrix(const StateVector &s, int c) {
    const std::size_t rows = std::size_t{1} << c;
    const std::size_t cols = s.dim() >> c;
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (std::size_t x = 0; x < s.dim(); x++) {
        m[x & (rows - 1)][x >> c] = s[x].real();
    }
    return m;
}

BooleanConcept two_or(int n) {
    ThresholdOfDnfs t;
    t.k = 1;
    for (int v = 0; v < 2; v++) {
        Dnf d;
        d.terms.push_back({Literal{v, false}});
        t.dnfs.push_back(d);
    }
    return BooleanConcept(n, t);
}

std::vector<double> random_product(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(n);
    for (auto &v : p) {
        v = u(rng);
    }
    return product_distribution(p);
}

}  // namespace

TEST(analysis, product_state_has_rank_one) {
    StateVector s = StateVector::basis(6, 0b101101);
    for (int c = 1; c < 6; c++) {
        EXPECT_EQ(schmidt_rank(s, BipartitionCut::contiguous(c)), 1u);
    }
    EXPECT_EQ(bond_dimension(StateVector::parity(8, ParityLabel{0xA5})), 1u);
}

TEST(analysis, rank_ignores_global_phase) {
    StateVector s = StateVector::random(6, 3);
    StateVector t = s.scaled(std::polar(1.0, 1.234));
    for (int c = 1; c < 6; c++) {
        EXPECT_EQ(schmidt_rank(s, BipartitionCut::contiguous(c)), schmidt_rank(t, BipartitionCut::contiguous(c)));
    }
}

TEST(analysis, random_state_has_full_rank) {
    StateVector s = StateVector::random(6, 9);
    EXPECT_EQ(schmidt_rank(s, BipartitionCut::contiguous(3)), 8u);
    EXPECT_EQ(schmidt_rank(s, BipartitionCut{{0, 2, 4}}), 8u);
}

TEST(analysis, invalid_cut_throws) {
    StateVector s = StateVector::random(4, 1);
    EXPECT_THROW(schmidt_rank(s, BipartitionCut{{}}), ContractViolation);
    EXPECT_THROW(schmidt_rank(s, BipartitionCut{{0, 1, 2, 3}}), ContractViolation);
    EXPECT_THROW(schmidt_rank(s, BipartitionCut{{0, 0}}), ContractViolation);
    EXPECT_THROW(schmidt_rank(s, BipartitionCut{{4}}), ContractViolation);
}

TEST(analysis, hard_instance_rank_doubles_per_term) {
    for (int s = 1; s <= 3; s++) {
        BooleanConcept f = hard_dnf_instance(s);
        StateVector psi = phase_state_of(f, 2 * s);
        std::size_t rank = schmidt_rank(psi, BipartitionCut::contiguous(s));
        EXPECT_EQ(rank, std::size_t{1} << s);
        EXPECT_EQ(rank, oracle::matrix_rank(amplitude_matrix(psi, s)));
        EXPECT_EQ(hard_dnf_factorization_error(s), 0.0);
    }
}

TEST(analysis, hard_instance_rank_grows_beyond_three_terms) {
    for (int s = 4; s <= 6; s++) {
        StateVector psi = phase_state_of(hard_dnf_instance(s), 2 * s);
        EXPECT_EQ(schmidt_rank(psi, BipartitionCut::contiguous(s)), std::size_t{1} << s);
        EXPECT_LT(hard_dnf_factorization_error(s), 1e-12);
    }
}

TEST(analysis, hard_instance_shape) {
    BooleanConcept f = hard_dnf_instance(2);
    EXPECT_EQ(f.num_vars(), 4);
    EXPECT_EQ(f.evaluate(0b0101), 1);
    EXPECT_EQ(f.evaluate(0b1010), 1);
    EXPECT_EQ(f.evaluate(0b0110), 0);
    EXPECT_EQ(f.evaluate(0b0011), 0);
    EXPECT_THROW(hard_dnf_instance(0), ResourceError);
    EXPECT_THROW(hard_dnf_instance(13), ResourceError);
}

TEST(analysis, every_two_junta_has_bond_dimension_at_most_two) {
    const int n = 6;
    for (int a = 0; a < n; a++) {
        for (int b = a + 1; b < n; b++) {
            for (int table = 0; table < 16; table++) {
                Junta j{{a, b}, {}};
                for (int i = 0; i < 4; i++) {
                    j.table.push_back((table >> i) & 1);
                }
                StateVector psi = phase_state_of(BooleanConcept(n, j), n);
                EXPECT_LE(bond_dimension(psi), 2u) << a << "," << b << " table " << table;
            }
        }
    }
}

TEST(analysis, random_juntas_respect_half_support_bound) {
    for (int k = 1; k <= 6; k++) {
        for (uint64_t seed = 0; seed < 40; seed++) {
            ConceptParams p;
            p.n = 10;
            p.k = k;
            StateVector psi = phase_state_of(random_concept(ConceptKind::Junta, p, seed), p.n);
            EXPECT_LE(bond_dimension(psi), std::size_t{1} << (k / 2)) << "k=" << k << " seed " << seed;
        }
    }
}

TEST(analysis, product_distribution_sums_to_one) {
    std::vector<double> p{0.1, 0.5, 0.9};
    auto d = product_distribution(p);
    ASSERT_EQ(d.size(), 8u);
    EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-12);
    EXPECT_NEAR(d[0b101], 0.1 * 0.5 * 0.9, 1e-15);
    EXPECT_NEAR(d[0], 0.9 * 0.5 * 0.1, 1e-15);
}

TEST(analysis, single_dnf_discriminates_itself) {
    BooleanConcept f = as_threshold(from_text("dnf n=4 terms=x0&x1|!x2"));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; trial++) {
        auto d = random_product(4, rng);
        auto r = verify_discriminator(f, d);
        EXPECT_NEAR(r.correlations[0], 1.0, 1e-12);
        EXPECT_TRUE(r.holds);
        EXPECT_EQ(r.bound, 0.5);
    }
}

TEST(analysis, two_input_or_under_uniform) {
    const int n = 2;
    std::vector<double> d(4, 0.25);
    auto r = verify_discriminator(two_or(n), d);
    ASSERT_EQ(r.correlations.size(), 2u);
    EXPECT_NEAR(r.correlations[0], 0.5, 1e-12);
    EXPECT_NEAR(r.correlations[1], 0.5, 1e-12);
    EXPECT_EQ(r.bound, 0.25);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.constant, 0.5, 1e-12);
}

TEST(analysis, literal_discriminator_bound_fails_without_constant) {
    // f = OR(x0, x1) is identically true on {10, 01}; each input is a fair coin there.
    std::vector<double> d(4, 0.0);
    d[0b01] = 0.5;
    d[0b10] = 0.5;
    auto r = verify_discriminator(two_or(2), d);
    EXPECT_NEAR(r.correlations[0], 0.0, 1e-12);
    EXPECT_NEAR(r.correlations[1], 0.0, 1e-12);
    EXPECT_FALSE(r.holds);
    EXPECT_NEAR(r.constant, 1.0, 1e-12);
    EXPECT_TRUE(r.holds_with_constant);
}

TEST(analysis, discriminator_with_constant_holds_on_random_ensemble) {
    std::mt19937_64 rng(11);
    for (uint64_t seed = 0; seed < 300; seed++) {
        ConceptParams p;
        p.n = 6;
        p.size = 2;
        p.width = 2;
        p.m = 1 + (int)(seed % 4);
        BooleanConcept f = random_concept(ConceptKind::Tac, p, seed);
        auto r = verify_discriminator(f, random_product(p.n, rng));
        double best = std::max(r.best, r.constant);
        EXPECT_GE(best, 1.0 / (2.0 * p.m - 1.0) - 1e-12) << to_text(f);
        EXPECT_TRUE(r.holds_with_constant) << to_text(f);
    }
}

TEST(analysis, discriminator_rejects_bad_input) {
    std::vector<double> d(8, 0.125);
    EXPECT_THROW(verify_discriminator(two_or(2), d), ContractViolation);
    BooleanConcept parity(3, Parity{0b011});
    EXPECT_THROW(verify_discriminator(parity, d), ContractViolation);
}

TEST(analysis, residual_check_at_first_step_is_uniform) {
    ConceptParams p;
    p.n = 6;
    p.size = 2;
    p.width = 2;
    p.m = 2;
    BooleanConcept f = random_concept(ConceptKind::Tac, p, 7);
    auto r = residual_discriminator_check(f, {}, 0.1);
    EXPECT_EQ(r.t, 1);
    EXPECT_NEAR(r.delta, 1.0, 1e-12);
    EXPECT_NEAR(r.alpha_sq, 1.0, 1e-12);
    EXPECT_NEAR(r.weight_sum, 1.0, 1e-12);
    EXPECT_TRUE(r.delta_bound_holds);
    EXPECT_TRUE(r.provable_bound_holds);
}

TEST(analysis, residual_check_mid_boost) {
    for (uint64_t seed = 0; seed < 30; seed++) {
        ConceptParams p;
        p.n = 7;
        p.size = 2;
        p.width = 3;
        p.m = 2 + (int)(seed % 2);
        BooleanConcept f = random_concept(ConceptKind::Tac, p, seed);
        FourierSpectrum spec = fourier_spectrum(f);
        std::vector<Mask> order(spec.coeffs.size());
        std::iota(order.begin(), order.end(), Mask{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Mask a, Mask b) { return std::abs(spec.coeffs[a]) > std::abs(spec.coeffs[b]); });
        for (std::size_t t : {1u, 2u, 4u}) {
            std::vector<ParityLabel> labels;
            for (std::size_t i = 0; i < t; i++) {
                labels.push_back(ParityLabel{order[i]});
            }
            auto r = residual_discriminator_check(f, labels, 0.05);
            EXPECT_EQ(r.t, (int)t + 1);
            EXPECT_TRUE(r.delta_bound_holds) << to_text(f);
            if (r.alpha_sq > 1e-12) {
                EXPECT_NEAR(r.weight_sum, 1.0, 1e-9);
                EXPECT_TRUE(r.provable_bound_holds) << to_text(f) << " t=" << t;
            }
        }
    }
}

TEST(analysis, sign_error_identity) {
    // For a = +-1 and |b| <= 1, |a - b| = a (a - b); this turns the L1 residual into a correlation.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100000; i++) {
        double a = rng() & 1 ? 1.0 : -1.0;
        double b = u(rng);
        EXPECT_NEAR(std::abs(a - b), a * (a - b), 1e-15);
    }
}
