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

#include <vector>

namespace bellkit::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Constraint {
    std::vector<double> coeffs;
    Sense sense = Sense::Equal;
    double rhs = 0.0;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<Constraint> constraints;

    void add(std::vector<double> coeffs, Sense sense, double rhs) {
        constraints.push_back({std::move(coeffs), sense, rhs});
    }
};

struct Solution {
    double value = 0.0;
    std::vector<double> x;
    /// Dual multipliers, one per constraint. Together with `x` they certify
    /// optimality: rhs . duals == value and duals . A >= objective.
    std::vector<double> duals;
    int pivots = 0;
};

struct Options {
    double pivot_tolerance = 1e-11;
    double feasibility_tolerance = 1e-9;
    int max_pivots = 100000;
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule.
/// Throws InfeasibleError, UnboundedError, or NumericalError (pivot limit).
Solution solve(const LinearProgram &program, const Options &options = {});

} // namespace bellkit::lp
