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
#include "bellkit/epr2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

void check_chained_n(int n) {
    if (n < 2) {
        throw InputError("chained inequalities need N >= 2, got " +
                         std::to_string(n));
    }
}

void check_visibility(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError("visibility " + std::to_string(v) + " outside [0, 1]");
    }
}

} // namespace

LocalContentBound local_content_bound(int n, const Estimate &observed) {
    check_chained_n(n);
    if (observed.value > 2.0 * n + 1e-12) {
        throw InputError("observed value " + std::to_string(observed.value) +
                         " exceeds the no-signaling maximum 2N = " +
                         std::to_string(2 * n));
    }
    LocalContentBound b;
    b.n = n;
    b.observed = observed;
    const double raw = n - observed.value / 2.0;
    b.p_local_max.value = std::clamp(raw, 0.0, 1.0);
    b.p_local_max.sigma = observed.sigma / 2.0;
    b.p_local_max.degenerate = observed.degenerate;
    b.clamped = b.p_local_max.value != raw;
    return b;
}

double werner_chained_value(int n, double visibility) {
    check_chained_n(n);
    check_visibility(visibility);
    return 2.0 * n * visibility * std::cos(std::numbers::pi / (2.0 * n));
}

std::vector<std::pair<int, double>> werner_plmax_curve(double visibility,
                                                       int n_min, int n_max) {
    check_chained_n(n_min);
    check_visibility(visibility);
    if (n_max < n_min) {
        throw InputError("empty settings range [" + std::to_string(n_min) + ", " +
                         std::to_string(n_max) + "]");
    }
    std::vector<std::pair<int, double>> out;
    for (int n = n_min; n <= n_max; ++n) {
        out.emplace_back(
            n, n * (1.0 - visibility * std::cos(std::numbers::pi / (2.0 * n))));
    }
    return out;
}

LocalContentBound best_local_bound(std::span<const LocalContentBound> bounds) {
    if (bounds.empty()) {
        throw InputError("best_local_bound needs at least one entry");
    }
    return *std::min_element(bounds.begin(), bounds.end(),
                             [](const auto &a, const auto &b) {
                                 if (a.p_local_max.value != b.p_local_max.value) {
                                     return a.p_local_max.value < b.p_local_max.value;
                                 }
                                 if (a.p_local_max.sigma != b.p_local_max.sigma) {
                                     return a.p_local_max.sigma < b.p_local_max.sigma;
                                 }
                                 return a.n < b.n;
                             });
}

void to_json(nlohmann::json &j, const LocalContentBound &b) {
    j = {{"n", b.n}, {"observed", b.observed}, {"p_local_max", b.p_local_max}};
    if (b.clamped) {
        j["clamped"] = true;
    }
}

} // namespace bellkit
