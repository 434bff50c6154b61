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
#include "bellkit/qstate.hpp"
#include "support/random_states.hpp"
#include "support/reference_source.hpp"

using namespace bellkit;
using bellkit::testing::reference_source_state;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(AngleTest, NormalizesIntoOnePeriod) {
    EXPECT_NEAR(Angle(-kPi / 2).radians(), 3 * kPi / 2, 1e-15);
    EXPECT_NEAR(Angle(5 * kPi).radians(), kPi, 1e-12);
    EXPECT_EQ(Angle(2 * kPi).radians(), 0.0);
    EXPECT_LT(Angle(-1e-18).radians(), 2 * kPi);
    EXPECT_NEAR(Angle::from_degrees(90).radians(), kPi / 2, 1e-15);
    EXPECT_NEAR(Angle(kPi / 4).degrees(), 45.0, 1e-12);
}

TEST(QStateTest, ConstructorRejectsOutOfRangeCoefficients) {
    EXPECT_THROW(make_state(1.5, 0, 0, 0, 0, 0, 0, 0), InputError);
    EXPECT_THROW(make_state(0, 0, 0, 0, 0, 0, 0, -1.0001), InputError);
    EXPECT_THROW(make_state(0, 0, 0, 0, NAN, 0, 0, 0), InputError);
    EXPECT_NO_THROW(make_state(1, -1, 1, -1, 1, -1, 1, -1));
}

TEST(QStateTest, MarginalAlice) {
    for (double a : {0.0, 0.3, 2.0, 5.9}) {
        EXPECT_EQ(marginal_alice(singlet(), Angle(a)), 0.0);
    }
    EXPECT_NEAR(marginal_alice(reference_source_state(), Angle(0)), 0.065, 1e-15);
    XZState s;
    s.a_z = 1.0;
    EXPECT_NEAR(marginal_alice(s, Angle(kPi / 2)), 0.0, 1e-15);
}

TEST(QStateTest, MarginalBob) {
    EXPECT_NEAR(marginal_bob(reference_source_state(), Angle(0)), -0.078, 1e-15);
    EXPECT_NEAR(marginal_bob(reference_source_state(), Angle(kPi / 2)), -0.015, 1e-15);
    XZState s;
    s.a_z = 0.4;
    EXPECT_EQ(marginal_bob(s, Angle(1.1)), 0.0);
}

TEST(QStateTest, JointCorrelations) {
    EXPECT_NEAR(joint(singlet(), Angle(kPi / 3), Angle(kPi / 3)), -1.0, 1e-12);
    EXPECT_NEAR(joint(reference_source_state(), Angle(0), Angle(kPi / 2)), 0.1053,
                1e-15);
    XZState s;
    s.a_z = 0.5;
    s.b_x = -0.2;
    EXPECT_EQ(joint(s, Angle(0.7), Angle(2.1)), 0.0);
}

TEST(QStateTest, SingletJointIsMinusCosineOnGrid) {
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
            const double a = 2 * kPi * i / 100;
            const double b = 2 * kPi * j / 100;
            ASSERT_NEAR(joint(singlet(), Angle(a), Angle(b)), -std::cos(a - b),
                        1e-12);
        }
    }
}

TEST(QStateTest, OutcomeProbabilityExamples) {
    const auto p = outcome_probabilities(singlet(), Angle(0), Angle(0));
    EXPECT_NEAR(p.pp, 0.0, 1e-15);
    EXPECT_NEAR(p.pm, 0.5, 1e-15);
    EXPECT_NEAR(p.mp, 0.5, 1e-15);
    EXPECT_NEAR(p.mm, 0.0, 1e-15);

    const auto q = outcome_probabilities(maximally_mixed(), Angle(1), Angle(2));
    for (double v : {q.pp, q.pm, q.mp, q.mm}) {
        EXPECT_DOUBLE_EQ(v, 0.25);
    }

    const auto t = outcome_probabilities(reference_source_state(), Angle(0), Angle(0));
    EXPECT_NEAR(t.pp, (1 + 0.065 - 0.078 - 0.9649) / 4, 1e-15);
}

TEST(QStateTest, UnphysicalProbabilitiesAreRejected) {
    // c_zz = -1 with a pair of skewed marginals drives p(+,+) negative.
    const XZState s = make_state(0.1, 0, -0.2, 0, -1, 0, 0, -1);
    EXPECT_THROW(outcome_probabilities(s, Angle(0), Angle(0)),
                 UnphysicalStateError);
    EXPECT_FALSE(is_physical(s));
    EXPECT_TRUE(is_physical(singlet()));
    // The measured central values dip slightly below zero near 322 degrees.
    EXPECT_FALSE(is_physical(reference_source_state()));
    EXPECT_LT(min_outcome_probability(reference_source_state()), -0.004);
}

TEST(QStateTest, DepolarizeToPhysical) {
    const auto d = depolarize_to_physical(reference_source_state());
    EXPECT_GT(d.noise_weight, 0.01);
    EXPECT_LT(d.noise_weight, 0.03);
    EXPECT_TRUE(is_physical(d.state, 360));
    EXPECT_GE(min_outcome_probability(d.state), 1e-4 - 1e-12);
    EXPECT_NEAR(d.state.c_zz, (1 - d.noise_weight) * -0.9649, 1e-15);

    const auto untouched = depolarize_to_physical(werner_state({0.9}));
    EXPECT_EQ(untouched.noise_weight, 0.0);
    EXPECT_EQ(untouched.state, werner_state({0.9}));
}

TEST(QStateTest, ProbabilitiesWithinToleranceAreClamped) {
    XZState s = singlet();
    s.a_z = 1e-10;
    s.b_z = -3e-10;
    const auto p = outcome_probabilities(s, Angle(0), Angle(0));
    EXPECT_GE(p.pp, 0.0);
}

TEST(QStateTest, ProbabilitiesReproduceExpectationsOnRandomStates) {
    bellkit::testing::RandomStates gen(7);
    for (int k = 0; k < 50; ++k) {
        const XZState s = gen.next();
        s.validate();
        for (int i = 0; i < 24; ++i) {
            for (int j = 0; j < 24; ++j) {
                const Angle a(2 * kPi * i / 24), b(2 * kPi * j / 24);
                const auto p = outcome_probabilities(s, a, b);
                for (double v : {p.pp, p.pm, p.mp, p.mm}) {
                    ASSERT_GE(v, 0.0);
                    ASSERT_LE(v, 1.0);
                }
                ASSERT_NEAR(p.pp + p.pm + p.mp + p.mm, 1.0, 1e-12);
                ASSERT_NEAR(p.pp + p.pm - p.mp - p.mm, marginal_alice(s, a), 1e-12);
                ASSERT_NEAR(p.pp - p.pm + p.mp - p.mm, marginal_bob(s, b), 1e-12);
                ASSERT_NEAR(p.pp - p.pm - p.mp + p.mm, joint(s, a, b), 1e-12);
            }
        }
    }
}

TEST(QStateTest, WernerState) {
    EXPECT_EQ(werner_state({1.0}), singlet());
    EXPECT_EQ(werner_state({0.0}), maximally_mixed());
    const XZState w = werner_state({0.94});
    EXPECT_EQ(w.c_zz, -0.94);
    EXPECT_EQ(w.c_xx, -0.94);
    EXPECT_EQ(w.a_z, 0.0);
    EXPECT_EQ(w.c_zx, 0.0);
    EXPECT_THROW(werner_state({1.01}), InputError);
    EXPECT_THROW(werner_state({-0.1}), InputError);
    for (int i = 0; i < 20; ++i) {
        const double a = 0.31 * i, b = 1.7 - 0.23 * i;
        EXPECT_NEAR(joint(w, Angle(a), Angle(b)), -0.94 * std::cos(a - b), 1e-12);
    }
}

TEST(QStateTest, MixIsCoefficientwise) {
    const XZState m = mix(singlet(), reference_source_state(), 0.25);
    EXPECT_NEAR(m.c_zz, 0.25 * -1 + 0.75 * -0.9649, 1e-15);
    EXPECT_NEAR(m.a_z, 0.75 * 0.065, 1e-15);
}

TEST(QStateTest, JsonRoundTripAndErrors) {
    const XZState s = reference_source_state();
    const nlohmann::json j = s;
    EXPECT_EQ(j.at("c_zx").get<double>(), 0.1053);
    EXPECT_EQ(j.get<XZState>(), s);

    auto extra = j;
    extra["comment"] = "ignored";
    EXPECT_EQ(extra.get<XZState>(), s);

    auto missing = j;
    missing.erase("b_x");
    EXPECT_THROW(missing.get<XZState>(), InputError);

    auto bad = j;
    bad["a_z"] = "0.1";
    EXPECT_THROW(bad.get<XZState>(), InputError);

    auto out_of_range = j;
    out_of_range["c_zz"] = -1.2;
    EXPECT_THROW(out_of_range.get<XZState>(), InputError);
}
