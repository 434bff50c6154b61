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
#include "bellkit/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

constexpr double kZeroVector = 1e-15;

struct Vec2 {
    double z = 0.0;
    double x = 0.0;
};

Angle best_direction(const Vec2 &r, Angle current) {
    if (std::hypot(r.z, r.x) < kZeroVector) {
        return current;
    }
    return Angle(std::atan2(r.x, r.z));
}

} // namespace

std::vector<Angle> seesaw_update_alice(const InequalityTable &table,
                                       const XZState &state,
                                       const std::vector<Angle> &alice,
                                       const std::vector<Angle> &bob) {
    SettingsVector{alice, bob}.check_against(table);
    std::vector<Angle> out(alice);
    for (int i = 0; i < table.n; ++i) {
        Vec2 r{table.alice_marginals[i] * state.a_z,
               table.alice_marginals[i] * state.a_x};
        for (int j = 0; j < table.n; ++j) {
            const double l = table.l(i, j);
            if (l == 0.0) {
                continue;
            }
            const double cb = std::cos(bob[j].radians());
            const double sb = std::sin(bob[j].radians());
            r.z += l * (state.c_zz * cb + state.c_zx * sb);
            r.x += l * (state.c_xz * cb + state.c_xx * sb);
        }
        out[i] = best_direction(r, alice[i]);
    }
    return out;
}

std::vector<Angle> seesaw_update_bob(const InequalityTable &table,
                                     const XZState &state,
                                     const std::vector<Angle> &alice,
                                     const std::vector<Angle> &bob) {
    SettingsVector{alice, bob}.check_against(table);
    std::vector<Angle> out(bob);
    for (int j = 0; j < table.n; ++j) {
        Vec2 s{table.bob_marginals[j] * state.b_z,
               table.bob_marginals[j] * state.b_x};
        for (int i = 0; i < table.n; ++i) {
            const double l = table.l(i, j);
            if (l == 0.0) {
                continue;
            }
            const double ca = std::cos(alice[i].radians());
            const double sa = std::sin(alice[i].radians());
            s.z += l * (state.c_zz * ca + state.c_xz * sa);
            s.x += l * (state.c_zx * ca + state.c_xx * sa);
        }
        out[j] = best_direction(s, bob[j]);
    }
    return out;
}

SeesawRun run_seesaw(const InequalityTable &table, const XZState &state,
                     SettingsVector start, const SeesawOptions &options) {
    start.check_against(table);
    SeesawRun run;
    run.settings = std::move(start);
    run.value = evaluate(table, state, run.settings);
    run.trace.push_back(run.value);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double before = run.value;
        run.settings.alice = seesaw_update_alice(table, state, run.settings.alice,
                                                 run.settings.bob);
        run.trace.push_back(evaluate(table, state, run.settings));
        run.settings.bob = seesaw_update_bob(table, state, run.settings.alice,
                                             run.settings.bob);
        run.value = evaluate(table, state, run.settings);
        run.trace.push_back(run.value);
        run.sweeps = sweep + 1;
        if (run.value - before < options.tolerance) {
            run.converged = true;
            break;
        }
    }
    return run;
}

SettingsVector canonical_start(int n) {
    SettingsVector s;
    const double pi = std::numbers::pi;
    for (int k = 0; k < n; ++k) {
        const double alpha = k * pi / n;
        s.alice.emplace_back(alpha);
        s.bob.emplace_back(alpha + pi / (2.0 * n) + pi);
    }
    return s;
}

OptimizationResult optimize_settings(const InequalityTable &table,
                                     const XZState &state, int restarts,
                                     std::uint64_t seed,
                                     const SeesawOptions &options) {
    if (restarts < 1) {
        throw InputError("optimize_settings needs at least one restart");
    }
    table.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0,
                                                   2.0 * std::numbers::pi);

    OptimizationResult best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        SettingsVector start;
        if (r == 0) {
            start = canonical_start(table.n);
        } else {
            for (int k = 0; k < table.n; ++k) {
                start.alice.emplace_back(uniform(rng));
            }
            for (int k = 0; k < table.n; ++k) {
                start.bob.emplace_back(uniform(rng));
            }
        }
        auto run = run_seesaw(table, state, std::move(start), options);
        if (!have_best || run.value > best.value) {
            best.settings = std::move(run.settings);
            best.value = run.value;
            best.converged = run.converged;
            have_best = true;
        }
    }
    best.restarts_used = restarts;
    return best;
}

} // namespace bellkit
