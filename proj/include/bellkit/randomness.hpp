// Copyright 2026 The bellkit Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/experiment.hpp"
#include "bellkit/inequality.hpp"

namespace bellkit {

/// H_min = -log2 p*, bits per measurement. Throws InputError unless
/// 0 < p* <= 1.
double min_entropy(double p_star);

/// Randomness certified by an observed Bell value, assuming fair sampling
/// of the detected events.
struct RandomnessReport {
    std::string inequality;
    Estimate observed;
    Estimate p_star_ns;
    Estimate hmin_ns;
    std::optional<Estimate> p_star_quantum; // CHSH only
    std::optional<Estimate> hmin_quantum;
};

/// p*_NS from the no-signaling LP (maximized over party, setting and
/// outcome); for CHSH also the quantum p*. Uncertainties are central
/// differences of each bound at observed +- sigma, cut to the bound's
/// domain. Throws InputError when observed lies outside [I_L, NS max].
RandomnessReport randomness_report(const InequalityTable &table,
                                   const Estimate &observed);

/// K evenly spaced points (observed, p*_NS) across [I_L, NS max].
std::vector<std::pair<double, double>> randomness_curve(const InequalityTable &table,
                                                        int points);

/// True when `table` carries the CHSH coefficients.
bool is_chsh(const InequalityTable &table);

void to_json(nlohmann::json &j, const RandomnessReport &r);

} // namespace bellkit
