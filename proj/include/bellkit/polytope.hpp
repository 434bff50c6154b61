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

#include "bellkit/inequality.hpp"
#include "bellkit/lp.hpp"

namespace bellkit {

enum class Party { Alice, Bob };

/// How the Bell expression is pinned when bounding marginals.
enum class BellConstraint { Equal, AtLeast };

/// Behaviors p(a,b|x,y), a, b in {+1, -1}, x, y in {0..N-1}, as 4N^2
/// non-negative reals with normalization and no-signaling constraints.
class BehaviorLP {
  public:
    explicit BehaviorLP(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int num_vars() const { return 4 * n_ * n_; }

    /// Variable index of p(a,b|x,y); outcomes are +1 or -1.
    [[nodiscard]] int index(int a, int b, int x, int y) const;

    /// Linear form of the table's Bell expression over the variables.
    /// Marginals are read off the first setting of the other party, which
    /// no-signaling makes unambiguous.
    [[nodiscard]] std::vector<double> bell_form(const InequalityTable &table) const;

    /// Linear form of P(outcome | setting) for one party.
    [[nodiscard]] std::vector<double> marginal_form(Party party, int setting,
                                                    int outcome) const;

    /// Program with normalization and no-signaling rows and the given
    /// objective.
    [[nodiscard]] lp::LinearProgram program(std::vector<double> objective) const;

  private:
    int n_;
};

struct BehaviorCheck {
    double min_probability = 0.0;
    double max_normalization_residual = 0.0;
    double max_signaling_residual = 0.0;
};

BehaviorCheck check_behavior(const BehaviorLP &space,
                             const std::vector<double> &behavior);

struct NsOptimum {
    double value = 0.0;
    std::vector<double> behavior;
};

/// Maximum of the Bell expression over the no-signaling polytope.
NsOptimum ns_max_solution(const InequalityTable &table);
double ns_max(const InequalityTable &table);

/// Largest P(outcome | setting) of `party` over no-signaling behaviors whose
/// Bell value equals (or, with AtLeast, reaches) `observed`. Returns 1 for
/// observed <= I_L; throws InfeasibleError when observed exceeds the
/// no-signaling maximum.
double ns_marginal_bound(const InequalityTable &table, double observed,
                         Party party, int setting, int outcome,
                         BellConstraint mode = BellConstraint::Equal);

/// Maximum of ns_marginal_bound over every party, setting and outcome.
double ns_marginal_bound_any(const InequalityTable &table, double observed,
                             BellConstraint mode = BellConstraint::Equal);

/// Largest quantum-achievable marginal probability compatible with a CHSH
/// value S: 1/2 + sqrt(2 - S^2 / 4) / 2, for 2 <= S <= 2 sqrt 2.
double quantum_marginal_bound_chsh(double chsh_value);

} // namespace bellkit
