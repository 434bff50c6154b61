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
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bellkit/error.hpp"
#include "bellkit/polytope.hpp"

using namespace bellkit;

namespace {

double chained_ns_line(int n, double observed) {
    return 0.5 + (2.0 * n - observed) / 4.0;
}

void expect_valid_behavior(const BehaviorLP &space, const std::vector<double> &p) {
    const auto check = check_behavior(space, p);
    EXPECT_GE(check.min_probability, -1e-12);
    EXPECT_LT(check.max_normalization_residual, 1e-8);
    EXPECT_LT(check.max_signaling_residual, 1e-8);
    for (double v : p) {
        EXPECT_LE(v, 1.0 + 1e-12);
    }
}

} // namespace

TEST(BehaviorLPTest, BellFormOnProductOfDeterministicStrategies) {
    // Deterministic behavior a_x = +1 for all x, b_y = (-1)^y.
    const auto t = catalog_i3322();
    const BehaviorLP space(3);
    std::vector<double> p(space.num_vars(), 0.0);
    double expected = 0.0;
    for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
            const int b = y % 2 == 0 ? 1 : -1;
            p[space.index(1, b, x, y)] = 1.0;
            expected += t.l(x, y) * b;
        }
        expected += t.alice_marginals[x];
    }
    for (int y = 0; y < 3; ++y) {
        expected += t.bob_marginals[y] * (y % 2 == 0 ? 1 : -1);
    }
    const auto form = space.bell_form(t);
    double value = 0.0;
    for (int v = 0; v < space.num_vars(); ++v) {
        value += form[v] * p[v];
    }
    EXPECT_DOUBLE_EQ(value, expected);
    expect_valid_behavior(space, p);
}

TEST(BehaviorLPTest, RejectsMismatchedTable) {
    const BehaviorLP space(3);
    EXPECT_THROW((void)space.bell_form(catalog_chsh()), InputError);
    EXPECT_THROW((void)space.marginal_form(Party::Alice, 3, 1), InputError);
    EXPECT_THROW((void)space.index(0, 1, 0, 0), InputError);
}

TEST(NsMaxTest, ChainedReachesTwoN) {
    for (int n = 2; n <= 6; ++n) {
        const auto opt = ns_max_solution(catalog_chained(n));
        EXPECT_NEAR(opt.value, 2.0 * n, 1e-7) << n;
        expect_valid_behavior(BehaviorLP(n), opt.behavior);
    }
    EXPECT_NEAR(ns_max(catalog_chsh()), 4.0, 1e-7);
}

TEST(NsMaxTest, ZeroTableIsZero) {
    InequalityTable zero = catalog_chsh();
    zero.joint = {{0, 0}, {0, 0}};
    zero.local_bound = 0;
    EXPECT_NEAR(ns_max(zero), 0.0, 1e-12);
}

TEST(NsMaxTest, AtLeastLocalBoundForCatalog) {
    for (const auto &t : catalog_all()) {
        const auto opt = ns_max_solution(t);
        EXPECT_GE(opt.value, local_bound_bruteforce(t) - 1e-9) << t.name;
        expect_valid_behavior(BehaviorLP(t.n), opt.behavior);
    }
}

TEST(NsMarginalTest, ReferenceChainedFourPoint) {
    const auto t = catalog_chained(4);
    EXPECT_NEAR(ns_marginal_bound(t, 7.018, Party::Alice, 0, 1), 0.7455, 1e-4);
}

TEST(NsMarginalTest, UnbiasedAtNsMaximum) {
    for (int n = 2; n <= 5; ++n) {
        EXPECT_NEAR(ns_marginal_bound(catalog_chained(n), 2.0 * n, Party::Bob, 1, -1),
                    0.5, 1e-7);
    }
}

TEST(NsMarginalTest, LocalBoundAndBelowGiveOne) {
    EXPECT_EQ(ns_marginal_bound(catalog_chsh(), 2.0, Party::Alice, 0, 1), 1.0);
    EXPECT_EQ(ns_marginal_bound(catalog_chsh(), 1.2, Party::Alice, 0, 1), 1.0);
}

TEST(NsMarginalTest, AboveNsMaximumIsInfeasible) {
    EXPECT_THROW(ns_marginal_bound(catalog_chsh(), 4.1, Party::Alice, 0, 1),
                 InfeasibleError);
}

TEST(NsMarginalTest, ChainedCurveMatchesClosedForm) {
    for (int n = 2; n <= 6; ++n) {
        const auto t = catalog_chained(n);
        for (int k = 0; k < 10; ++k) {
            const double obs = 2.0 * (n - 1) + 2.0 * k / 9.0;
            EXPECT_NEAR(ns_marginal_bound(t, obs, Party::Alice, 0, 1),
                        chained_ns_line(n, obs), 1e-6)
                << "N=" << n << " I=" << obs;
        }
    }
}

TEST(NsMarginalTest, NonIncreasingInObservedValue) {
    for (const auto &t : catalog_all()) {
        const double top = ns_max(t);
        double previous = 1.0 + 1e-12;
        for (int k = 0; k < 10; ++k) {
            const double obs = t.local_bound + (top - t.local_bound) * k / 9.0;
            const double p = ns_marginal_bound_any(t, obs);
            EXPECT_LE(p, previous + 1e-9) << t.name << " at " << obs;
            EXPECT_GE(p, 0.5 - 1e-9);
            previous = p;
        }
    }
}

TEST(NsMarginalTest, AllChoicesAgreeForChainedTables) {
    for (int n : {2, 4}) {
        const auto t = catalog_chained(n);
        const double obs = 2.0 * n - 0.7;
        const double ref = ns_marginal_bound(t, obs, Party::Alice, 0, 1);
        for (Party party : {Party::Alice, Party::Bob}) {
            for (int s = 0; s < n; ++s) {
                for (int o : {1, -1}) {
                    EXPECT_NEAR(ns_marginal_bound(t, obs, party, s, o), ref, 1e-7);
                }
            }
        }
        EXPECT_NEAR(ns_marginal_bound_any(t, obs), ref, 1e-7);
    }
}

TEST(NsMarginalTest, AtLeastModeMatchesEqualityOnDecreasingBranch) {
    const auto t = catalog_chained(3);
    for (double obs : {4.2, 5.0, 5.8}) {
        EXPECT_NEAR(ns_marginal_bound(t, obs, Party::Alice, 0, 1, BellConstraint::AtLeast),
                    ns_marginal_bound(t, obs, Party::Alice, 0, 1), 1e-7);
    }
}

TEST(QuantumChshBoundTest, Examples) {
    EXPECT_NEAR(quantum_marginal_bound_chsh(2.731), 0.684, 1e-3);
    EXPECT_NEAR(quantum_marginal_bound_chsh(2 * std::numbers::sqrt2), 0.5, 1e-12);
    EXPECT_EQ(quantum_marginal_bound_chsh(2.0), 1.0);
    EXPECT_THROW(quantum_marginal_bound_chsh(1.9), InputError);
    EXPECT_THROW(quantum_marginal_bound_chsh(2.9), InputError);
}

TEST(QuantumChshBoundTest, NeverAboveNsBound) {
    const auto t = catalog_chsh();
    for (int k = 0; k <= 10; ++k) {
        const double s = 2.0 + (2 * std::numbers::sqrt2 - 2.0) * k / 10.0;
        EXPECT_LE(quantum_marginal_bound_chsh(s), ns_marginal_bound_any(t, s) + 1e-9);
    }
}
