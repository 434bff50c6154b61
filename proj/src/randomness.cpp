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
#include "bellkit/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bellkit/error.hpp"
#include "bellkit/polytope.hpp"

namespace bellkit {

namespace {

constexpr double kRangeSlack = 1e-9;

// Propagates `sigma` through f by a central difference on [lo, hi].
template <typename F>
Estimate propagate(F &&f, double value, double sigma, double lo, double hi) {
    Estimate e;
    e.value = f(value);
    const double a = std::clamp(value - sigma, lo, hi);
    const double b = std::clamp(value + sigma, lo, hi);
    if (sigma > 0.0 && b > a) {
        e.sigma = std::abs(f(b) - f(a)) / (b - a) * sigma;
    }
    e.degenerate = e.sigma == 0.0;
    return e;
}

} // namespace

double min_entropy(double p_star) {
    if (!(p_star > 0.0 && p_star <= 1.0 + kRangeSlack)) {
        throw InputError("min-entropy needs 0 < p* <= 1");
    }
    return p_star >= 1.0 ? 0.0 : -std::log2(p_star);
}

bool is_chsh(const InequalityTable &table) {
    const auto ref = catalog_chsh();
    return table.n == ref.n && table.joint == ref.joint &&
           table.alice_marginals == ref.alice_marginals &&
           table.bob_marginals == ref.bob_marginals;
}

RandomnessReport randomness_report(const InequalityTable &table,
                                   const Estimate &observed) {
    const double lo = table.local_bound;
    const double hi = ns_max(table);
    if (observed.value < lo - kRangeSlack || observed.value > hi + kRangeSlack) {
        throw InputError("observed value " + std::to_string(observed.value) +
                         " outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] for '" + table.name + "'");
    }
    const double v = std::clamp(observed.value, lo, hi);

    RandomnessReport r;
    r.inequality = table.name;
    r.observed = observed;
    auto ns = [&](double x) { return ns_marginal_bound_any(table, x); };
    r.p_star_ns = propagate(ns, v, observed.sigma, lo, hi);
    r.hmin_ns = propagate([&](double x) { return min_entropy(ns(x)); }, v,
                          observed.sigma, lo, hi);

    const double tsirelson = 2.0 * std::numbers::sqrt2;
    if (is_chsh(table) && v <= tsirelson + kRangeSlack) {
        const double q = std::min(v, tsirelson);
        r.p_star_quantum = propagate(quantum_marginal_bound_chsh, q, observed.sigma,
                                     2.0, tsirelson);
        r.hmin_quantum = propagate(
            [](double x) { return min_entropy(quantum_marginal_bound_chsh(x)); }, q,
            observed.sigma, 2.0, tsirelson);
    }
    return r;
}

std::vector<std::pair<double, double>> randomness_curve(const InequalityTable &table,
                                                        int points) {
    if (points < 2) {
        throw InputError("randomness curve needs at least two points");
    }
    const double lo = table.local_bound;
    const double hi = ns_max(table);
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < points; ++k) {
        const double x = k + 1 == points ? hi : lo + (hi - lo) * k / (points - 1);
        out.emplace_back(x, ns_marginal_bound_any(table, x));
    }
    return out;
}

void to_json(nlohmann::json &j, const RandomnessReport &r) {
    j = {{"inequality", r.inequality},
         {"observed", r.observed},
         {"p_star_ns", r.p_star_ns},
         {"hmin_ns", r.hmin_ns},
         {"p_star_quantum", nullptr},
         {"hmin_quantum", nullptr},
         {"assumption", "fair sampling of detected events"}};
    if (r.p_star_quantum) {
        j["p_star_quantum"] = *r.p_star_quantum;
        j["hmin_quantum"] = *r.hmin_quantum;
    }
}

} // namespace bellkit
