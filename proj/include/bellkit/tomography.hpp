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

#include <array>
#include <vector>

#include "bellkit/experiment.hpp"
#include "bellkit/qstate.hpp"

namespace bellkit {

struct TomographyResult {
    XZState state;
    std::array<double, 8> sigmas{}; // XZState::coefficients() order
    /// In-plane probability positivity over a 72 x 72 angle grid, evaluated
    /// on the raw (unclamped) estimates.
    bool physical = false;
    /// Some coefficient was outside [-1, 1] and has been clamped.
    bool clamped = false;
};

/// Basis pairs {0, 45} x {0, 45} degrees (sigma_z, sigma_x on each side),
/// each expanded into its four orientation pairs: 16 polarizer pairs.
std::vector<PolarizerPair> tomography_schedule();

/// Correlations c_ij from each basis pair; a_i from the two pairs (i, z) and
/// (i, x), b_j from (z, j) and (x, j), combined with marginal_from_counts.
/// Throws IncompleteDataError naming missing terms.
TomographyResult estimate_state(const CountSet &counts);

/// Per-coefficient clamp into [-1, 1]; returns whether anything moved.
bool clamp_coefficients(std::array<double, 8> &coefficients);

/// {"state": {...}, "sigmas": {"a_z": ...}, "physical", "clamped"}
void to_json(nlohmann::json &j, const TomographyResult &r);

/// Coefficient name -> sigma, the layout of a state.sigmas.json file.
nlohmann::json sigmas_to_json(const std::array<double, 8> &sigmas);

} // namespace bellkit
