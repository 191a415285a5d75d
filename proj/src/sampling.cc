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

#include "qboost/sampling.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qboost {

namespace {

constexpr double EXACT_LIMIT = 2147483648.0;
constexpr double POISSON_LIMIT = 1000.0;

double normal_draw(Rng &rng, double mean, double sd) {
    std::normal_distribution<double> g(mean, sd);
    return g(rng);
}

}  // namespace

double draw_binomial(Rng &rng, double trials, double p) {
    trials = std::floor(trials);
    if (trials <= 0 || p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return trials;
    }
    if (trials <= EXACT_LIMIT) {
        std::binomial_distribution<long long> d((long long)trials, p);
        return (double)d(rng);
    }
    double q = std::min(p, 1 - p);
    double rare;
    if (trials * q < POISSON_LIMIT) {
        std::poisson_distribution<long long> d(trials * q);
        rare = std::min((double)d(rng), trials);
    } else {
        rare = std::round(normal_draw(rng, trials * q, std::sqrt(trials * q * (1 - q))));
        rare = std::clamp(rare, 0.0, trials);
    }
    return p <= 0.5 ? rare : trials - rare;
}

double draw_binomial_deviation(Rng &rng, double trials, double p) {
    trials = std::floor(trials);
    if (trials <= 0) {
        throw std::invalid_argument("draw_binomial_deviation needs at least one trial");
    }
    if (p <= 0 || p >= 1) {
        return 0;
    }
    if (trials <= EXACT_LIMIT) {
        std::binomial_distribution<long long> d((long long)trials, p);
        return ((double)d(rng) - trials * p) / trials;
    }
    double q = std::min(p, 1 - p);
    double dev;
    if (trials * q < POISSON_LIMIT) {
        std::poisson_distribution<long long> d(trials * q);
        dev = ((double)d(rng) - trials * q) / trials;
    } else {
        std::normal_distribution<double> g;
        dev = g(rng) * std::sqrt(q * (1 - q) / trials);
    }
    return p <= 0.5 ? dev : -dev;
}

double draw_failures(Rng &rng, double successes, double p) {
    successes = std::floor(successes);
    if (successes <= 0 || p >= 1) {
        return 0;
    }
    if (successes <= 1e6) {
        std::negative_binomial_distribution<long long> d((long long)successes, p);
        return (double)d(rng);
    }
    double mean = successes * (1 - p) / p;
    double sd = std::sqrt(successes * (1 - p)) / p;
    return std::max(0.0, std::round(normal_draw(rng, mean, sd)));
}

std::vector<std::pair<uint64_t, double>> draw_histogram(Rng &rng, double shots, std::span<const double> weights) {
    std::vector<std::pair<uint64_t, double>> out;
    double remaining_mass = 0;
    for (double w : weights) {
        remaining_mass += std::max(0.0, w);
    }
    double remaining = std::floor(shots);
    for (std::size_t z = 0; z < weights.size() && remaining > 0; z++) {
        double w = std::max(0.0, weights[z]);
        if (w == 0) {
            continue;
        }
        double k = remaining_mass <= w ? remaining : draw_binomial(rng, remaining, w / remaining_mass);
        remaining_mass -= w;
        if (k > 0) {
            out.emplace_back(z, k);
            remaining -= k;
        }
    }
    return out;
}

}  // namespace qboost
