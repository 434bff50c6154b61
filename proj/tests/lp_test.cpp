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
#include <random>

#include <gtest/gtest.h>

#include "bellkit/error.hpp"
#include "bellkit/lp.hpp"

using namespace bellkit;
using lp::Sense;

namespace {

// Certificate check: primal feasibility, dual sign pattern, dual
// feasibility and a zero duality gap.
void expect_certified(const lp::LinearProgram &p, const lp::Solution &s,
                      double tol = 1e-7) {
    double dual_value = 0.0;
    for (std::size_t r = 0; r < p.constraints.size(); ++r) {
        const auto &c = p.constraints[r];
        double lhs = 0.0;
        for (int v = 0; v < p.num_vars; ++v) {
            lhs += c.coeffs[v] * s.x[v];
        }
        switch (c.sense) {
        case Sense::LessEqual:
            EXPECT_LE(lhs, c.rhs + tol);
            EXPECT_GE(s.duals[r], -tol);
            break;
        case Sense::GreaterEqual:
            EXPECT_GE(lhs, c.rhs - tol);
            EXPECT_LE(s.duals[r], tol);
            break;
        case Sense::Equal:
            EXPECT_NEAR(lhs, c.rhs, tol);
            break;
        }
        dual_value += c.rhs * s.duals[r];
    }
    for (int v = 0; v < p.num_vars; ++v) {
        EXPECT_GE(s.x[v], 0.0);
        double col = 0.0;
        for (std::size_t r = 0; r < p.constraints.size(); ++r) {
            col += p.constraints[r].coeffs[v] * s.duals[r];
        }
        EXPECT_GE(col, p.objective[v] - tol);
    }
    double primal = 0.0;
    for (int v = 0; v < p.num_vars; ++v) {
        primal += p.objective[v] * s.x[v];
    }
    EXPECT_NEAR(primal, s.value, tol);
    EXPECT_NEAR(dual_value, s.value, tol);
}

} // namespace

TEST(LpTest, SingleVariableUpperBound) {
    lp::LinearProgram p;
    p.num_vars = 1;
    p.objective = {1};
    p.add({1}, Sense::LessEqual, 3);
    const auto s = lp::solve(p);
    EXPECT_NEAR(s.value, 3, 1e-12);
    expect_certified(p, s);
}

TEST(LpTest, NormalizedBehaviorSingleEntry) {
    lp::LinearProgram p;
    p.num_vars = 4;
    p.objective = {0, 0, 1, 0};
    p.add({1, 1, 1, 1}, Sense::Equal, 1);
    const auto s = lp::solve(p);
    EXPECT_NEAR(s.value, 1, 1e-12);
    EXPECT_NEAR(s.x[2], 1, 1e-12);
    expect_certified(p, s);
}

TEST(LpTest, MixedSensesAndNegativeRhs) {
    // max 3x + 2y  s.t. x + y <= 4, x - y >= -2, -x <= -1, y = 1.5
    lp::LinearProgram p;
    p.num_vars = 2;
    p.objective = {3, 2};
    p.add({1, 1}, Sense::LessEqual, 4);
    p.add({1, -1}, Sense::GreaterEqual, -2);
    p.add({-1, 0}, Sense::LessEqual, -1);
    p.add({0, 1}, Sense::Equal, 1.5);
    const auto s = lp::solve(p);
    EXPECT_NEAR(s.value, 3 * 2.5 + 2 * 1.5, 1e-10);
    expect_certified(p, s);
}

TEST(LpTest, InfeasibleAndUnboundedAreDistinct) {
    lp::LinearProgram inf;
    inf.num_vars = 1;
    inf.objective = {1};
    inf.add({1}, Sense::GreaterEqual, 2);
    inf.add({1}, Sense::LessEqual, 1);
    EXPECT_THROW(lp::solve(inf), InfeasibleError);

    lp::LinearProgram unb;
    unb.num_vars = 2;
    unb.objective = {1, 0};
    unb.add({1, -1}, Sense::LessEqual, 1);
    EXPECT_THROW(lp::solve(unb), UnboundedError);
}

TEST(LpTest, RedundantEqualitiesAreTolerated) {
    lp::LinearProgram p;
    p.num_vars = 3;
    p.objective = {1, 2, 3};
    p.add({1, 1, 1}, Sense::Equal, 1);
    p.add({2, 2, 2}, Sense::Equal, 2);
    p.add({0, 0, 1}, Sense::LessEqual, 0.25);
    const auto s = lp::solve(p);
    EXPECT_NEAR(s.value, 0.25 * 3 + 0.75 * 2, 1e-10);
    expect_certified(p, s);
}

TEST(LpTest, MalformedProgramIsRejected) {
    lp::LinearProgram p;
    p.num_vars = 2;
    p.objective = {1};
    EXPECT_THROW(lp::solve(p), InputError);
    p.objective = {1, 1};
    p.add({1}, Sense::LessEqual, 1);
    EXPECT_THROW(lp::solve(p), InputError);
}

TEST(LpTest, RandomBoxProgramsMatchVertexOptimum) {
    // max c.x over 0 <= x <= u plus one coupling row sum x <= s: optimum is
    // the greedy fill by decreasing positive cost (fractional knapsack).
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u01(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 7;
        lp::LinearProgram p;
        p.num_vars = n;
        std::vector<double> c(n), ub(n);
        for (int i = 0; i < n; ++i) {
            c[i] = u01(rng) * 2 - 0.5;
            ub[i] = 0.2 + u01(rng);
            std::vector<double> row(n, 0.0);
            row[i] = 1;
            p.add(row, Sense::LessEqual, ub[i]);
        }
        const double cap = 0.5 + u01(rng) * n / 2;
        p.add(std::vector<double>(n, 1.0), Sense::LessEqual, cap);
        p.objective = c;

        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return c[a] > c[b]; });
        double left = cap, expected = 0.0;
        for (int i : order) {
            if (c[i] <= 0) break;
            const double take = std::min(ub[i], left);
            expected += take * c[i];
            left -= take;
        }
        const auto s = lp::solve(p);
        EXPECT_NEAR(s.value, expected, 1e-10);
        expect_certified(p, s);
    }
}
