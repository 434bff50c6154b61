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
#include "bellkit/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

constexpr double kBoundTolerance = 1e-9;

int outcome_bit(int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw InputError("outcomes are +1 or -1, got " +
                         std::to_string(outcome));
    }
    return outcome == 1 ? 0 : 1;
}

} // namespace

BehaviorLP::BehaviorLP(int n) : n_(n) {
    if (n < 1) {
        throw InputError("behavior space needs at least one setting");
    }
}

int BehaviorLP::index(int a, int b, int x, int y) const {
    return ((x * n_ + y) * 2 + outcome_bit(a)) * 2 + outcome_bit(b);
}

std::vector<double> BehaviorLP::bell_form(const InequalityTable &table) const {
    if (table.n != n_) {
        throw InputError("inequality '" + table.name + "' has N = " +
                         std::to_string(table.n) + ", behavior space has " +
                         std::to_string(n_));
    }
    std::vector<double> form(static_cast<std::size_t>(num_vars()), 0.0);
    for (int a : {1, -1}) {
        for (int b : {1, -1}) {
            for (int x = 0; x < n_; ++x) {
                form[index(a, b, x, 0)] += table.alice_marginals[x] * a;
            }
            for (int y = 0; y < n_; ++y) {
                form[index(a, b, 0, y)] += table.bob_marginals[y] * b;
            }
            for (int x = 0; x < n_; ++x) {
                for (int y = 0; y < n_; ++y) {
                    form[index(a, b, x, y)] += table.l(x, y) * a * b;
                }
            }
        }
    }
    return form;
}

std::vector<double> BehaviorLP::marginal_form(Party party, int setting,
                                              int outcome) const {
    if (setting < 0 || setting >= n_) {
        throw InputError("setting index " + std::to_string(setting) +
                         " out of range");
    }
    std::vector<double> form(static_cast<std::size_t>(num_vars()), 0.0);
    for (int other : {1, -1}) {
        if (party == Party::Alice) {
            form[index(outcome, other, setting, 0)] = 1.0;
        } else {
            form[index(other, outcome, 0, setting)] = 1.0;
        }
    }
    return form;
}

lp::LinearProgram BehaviorLP::program(std::vector<double> objective) const {
    lp::LinearProgram p;
    p.num_vars = num_vars();
    p.objective = std::move(objective);
    const auto nv = static_cast<std::size_t>(num_vars());
    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
            std::vector<double> row(nv, 0.0);
            for (int a : {1, -1}) {
                for (int b : {1, -1}) {
                    row[index(a, b, x, y)] = 1.0;
                }
            }
            p.add(std::move(row), lp::Sense::Equal, 1.0);
        }
    }
    // P(a=+1|x) is the same for every y; likewise for Bob. The -1 outcome
    // follows from normalization.
    for (int x = 0; x < n_; ++x) {
        for (int y = 1; y < n_; ++y) {
            std::vector<double> row(nv, 0.0);
            for (int b : {1, -1}) {
                row[index(1, b, x, y)] += 1.0;
                row[index(1, b, x, 0)] -= 1.0;
            }
            p.add(std::move(row), lp::Sense::Equal, 0.0);
        }
    }
    for (int y = 0; y < n_; ++y) {
        for (int x = 1; x < n_; ++x) {
            std::vector<double> row(nv, 0.0);
            for (int a : {1, -1}) {
                row[index(a, 1, x, y)] += 1.0;
                row[index(a, 1, 0, y)] -= 1.0;
            }
            p.add(std::move(row), lp::Sense::Equal, 0.0);
        }
    }
    return p;
}

BehaviorCheck check_behavior(const BehaviorLP &space,
                             const std::vector<double> &behavior) {
    const int n = space.n();
    BehaviorCheck check;
    check.min_probability = *std::min_element(behavior.begin(), behavior.end());
    auto p = [&](int a, int b, int x, int y) {
        return behavior[space.index(a, b, x, y)];
    };
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const double total = p(1, 1, x, y) + p(1, -1, x, y) +
                                 p(-1, 1, x, y) + p(-1, -1, x, y);
            check.max_normalization_residual =
                std::max(check.max_normalization_residual, std::abs(total - 1.0));
            const double pa = p(1, 1, x, y) + p(1, -1, x, y);
            const double pa0 = p(1, 1, x, 0) + p(1, -1, x, 0);
            const double pb = p(1, 1, x, y) + p(-1, 1, x, y);
            const double pb0 = p(1, 1, 0, y) + p(-1, 1, 0, y);
            check.max_signaling_residual =
                std::max({check.max_signaling_residual, std::abs(pa - pa0),
                          std::abs(pb - pb0)});
        }
    }
    return check;
}

NsOptimum ns_max_solution(const InequalityTable &table) {
    table.validate();
    const BehaviorLP space(table.n);
    const auto sol = lp::solve(space.program(space.bell_form(table)));
    return {sol.value, sol.x};
}

double ns_max(const InequalityTable &table) {
    return ns_max_solution(table).value;
}

double ns_marginal_bound(const InequalityTable &table, double observed,
                         Party party, int setting, int outcome,
                         BellConstraint mode) {
    table.validate();
    if (observed <= table.local_bound) {
        return 1.0;
    }
    const BehaviorLP space(table.n);
    auto program = space.program(space.marginal_form(party, setting, outcome));
    program.add(space.bell_form(table),
                mode == BellConstraint::Equal ? lp::Sense::Equal
                                              : lp::Sense::GreaterEqual,
                observed);
    try {
        return std::min(1.0, lp::solve(program).value);
    } catch (const InfeasibleError &) {
        throw InfeasibleError("observed value " + std::to_string(observed) +
                              " exceeds the no-signaling maximum of '" +
                              table.name + "'");
    }
}

double ns_marginal_bound_any(const InequalityTable &table, double observed,
                             BellConstraint mode) {
    double best = 0.0;
    for (Party party : {Party::Alice, Party::Bob}) {
        for (int s = 0; s < table.n; ++s) {
            for (int o : {1, -1}) {
                best = std::max(best, ns_marginal_bound(table, observed, party,
                                                        s, o, mode));
            }
        }
    }
    return best;
}

double quantum_marginal_bound_chsh(double chsh_value) {
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    if (chsh_value < 2.0 - kBoundTolerance ||
        chsh_value > tsirelson + kBoundTolerance) {
        throw InputError("CHSH value " + std::to_string(chsh_value) +
                         " outside [2, 2 sqrt 2]");
    }
    const double s = std::clamp(chsh_value, 2.0, tsirelson);
    return 0.5 + 0.5 * std::sqrt(std::max(0.0, 2.0 - s * s / 4.0));
}

} // namespace bellkit
