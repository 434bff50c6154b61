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

#include <span>
#include <utility>
#include <vector>

#include "bellkit/experiment.hpp"

namespace bellkit {

/// Upper bound on the local weight p_L in a local + no-signaling
/// decomposition of a chained-inequality value:
///   I = p_L 2(N-1) + (1 - p_L) 2N   =>   p_L <= N - I/2.
struct LocalContentBound {
    int n = 0;
    Estimate observed;
    Estimate p_local_max;
    /// N - I/2 fell outside [0, 1] and was clamped.
    bool clamped = false;
};

/// Throws InputError for N < 2 or I above the no-signaling maximum 2N.
LocalContentBound local_content_bound(int n, const Estimate &observed);

/// Chained-inequality maximum on a Werner state: 2 N V cos(pi / 2N).
double werner_chained_value(int n, double visibility);

/// (N, N (1 - V cos(pi / 2N))) for N in [n_min, n_max].
std::vector<std::pair<int, double>> werner_plmax_curve(double visibility,
                                                       int n_min, int n_max);

/// Smallest p_local_max; ties go to the smaller sigma, then the smaller N.
LocalContentBound best_local_bound(std::span<const LocalContentBound> bounds);

void to_json(nlohmann::json &j, const LocalContentBound &b);

} // namespace bellkit
