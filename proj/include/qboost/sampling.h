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

#ifndef QBOOST_SAMPLING_H
#define QBOOST_SAMPLING_H

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace qboost {

using Rng = std::mt19937_64;

/// Number of successes in `trials` Bernoulli(p) draws. Exact for trials up to
/// 2^31; beyond that a Poisson approximation on the rare side or a rounded
/// normal approximation is used.
double draw_binomial(Rng &rng, double trials, double p);

/// k / trials - p for k ~ Binomial(trials, p), computed without forming k / trials,
/// so deviations far below double resolution of p survive at huge trial counts.
double draw_binomial_deviation(Rng &rng, double trials, double p);

/// Failures seen before `successes` successes of a Bernoulli(p) process.
double draw_failures(Rng &rng, double successes, double p);

/// Multinomial counts of `shots` draws over outcomes with the given weights
/// (normalized internally). Only outcomes with a nonzero count are returned,
/// in increasing outcome order.
std::vector<std::pair<uint64_t, double>> draw_histogram(Rng &rng, double shots, std::span<const double> weights);

}  // namespace qboost

#endif
