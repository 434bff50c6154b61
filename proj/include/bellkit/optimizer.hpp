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

#include <cstdint>
#include <vector>

#include "bellkit/inequality.hpp"
#include "bellkit/qstate.hpp"

namespace bellkit {

struct OptimizationResult {
    SettingsVector settings;
    double value = 0.0;
    int restarts_used = 0;
    bool converged = false;
};

struct SeesawOptions {
    int max_sweeps = 1000;
    double tolerance = 1e-10; // minimum gain per full sweep
};

/// Best response for Alice with Bob's angles fixed. For fixed Bob angles the
/// Bell value is sum_i r_i . (cos alpha_i, sin alpha_i) + const, so each
/// alpha_i = atan2(r_i.x, r_i.z). An angle with r_i = 0 is left unchanged.
std::vector<Angle> seesaw_update_alice(const InequalityTable &table,
                                       const XZState &state,
                                       const std::vector<Angle> &alice,
                                       const std::vector<Angle> &bob);

/// Mirror of seesaw_update_alice.
std::vector<Angle> seesaw_update_bob(const InequalityTable &table,
                                     const XZState &state,
                                     const std::vector<Angle> &alice,
                                     const std::vector<Angle> &bob);

struct SeesawRun {
    SettingsVector settings;
    double value = 0.0;
    int sweeps = 0;
    bool converged = false;
    /// Bell value at the start and after every half-step.
    std::vector<double> trace;
};

/// Alternating Alice/Bob updates from `start` until a full sweep gains less
/// than `options.tolerance` or `options.max_sweeps` is reached.
SeesawRun run_seesaw(const InequalityTable &table, const XZState &state,
                     SettingsVector start, const SeesawOptions &options = {});

/// alpha_k = (k-1) pi / N, beta_k = alpha_k + pi / (2N) + pi. Optimal for
/// the chained inequalities on the singlet.
SettingsVector canonical_start(int n);

/// Best see-saw fixed point over `restarts` starts: the canonical start plus
/// restarts - 1 uniformly random angle vectors drawn from `seed`.
OptimizationResult optimize_settings(const InequalityTable &table,
                                     const XZState &state, int restarts = 32,
                                     std::uint64_t seed = 1,
                                     const SeesawOptions &options = {});

} // namespace bellkit
