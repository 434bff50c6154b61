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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bellkit/inequality.hpp"
#include "bellkit/qstate.hpp"

namespace bellkit::testing {

// Exhaustive 1-degree grid search for the Bell value of `table` on `state`.
//
// Bob's angles always run over the full grid. For N <= 2 Alice's angles are
// scanned on the same grid as well. For N = 3 the 360^6 lattice is out of
// reach, so for each Bob grid point Alice's per-setting term
// r_i . (cos a, sin a) is replaced by its supremum |r_i|; the result then
// bounds the grid maximum from above, which only makes a comparison
// "optimizer >= oracle - tol" stricter.
inline double grid_maximum(const InequalityTable &table, const XZState &state) {
    constexpr int kSteps = 360;
    const int n = table.n;
    std::vector<double> cs(kSteps), sn(kSteps);
    for (int k = 0; k < kSteps; ++k) {
        const double t = 2.0 * std::numbers::pi * k / kSteps;
        cs[k] = std::cos(t);
        sn[k] = std::sin(t);
    }
    // Per Bob grid angle: marginal value and the 2-vector it contributes to
    // Alice's direction through the joint coefficients.
    std::vector<double> eb(kSteps), wz(kSteps), wx(kSteps);
    for (int k = 0; k < kSteps; ++k) {
        eb[k] = cs[k] * state.b_z + sn[k] * state.b_x;
        wz[k] = state.c_zz * cs[k] + state.c_zx * sn[k];
        wx[k] = state.c_xz * cs[k] + state.c_xx * sn[k];
    }
    const bool scan_alice = n <= 2;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    double best = -1e300;
    for (;;) {
        double value = 0.0;
        for (int j = 0; j < n; ++j) {
            value += table.bob_marginals[j] * eb[idx[j]];
        }
        for (int i = 0; i < n; ++i) {
            double rz = table.alice_marginals[i] * state.a_z;
            double rx = table.alice_marginals[i] * state.a_x;
            for (int j = 0; j < n; ++j) {
                rz += table.l(i, j) * wz[idx[j]];
                rx += table.l(i, j) * wx[idx[j]];
            }
            if (scan_alice) {
                double m = -1e300;
                for (int k = 0; k < kSteps; ++k) {
                    m = std::max(m, rz * cs[k] + rx * sn[k]);
                }
                value += m;
            } else {
                value += std::sqrt(rz * rz + rx * rx);
            }
        }
        best = std::max(best, value);
        int pos = 0;
        while (pos < n && ++idx[pos] == kSteps) {
            idx[pos++] = 0;
        }
        if (pos == n) {
            break;
        }
    }
    return best;
}

} // namespace bellkit::testing
