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

#include "bellkit/qstate.hpp"

namespace bellkit::testing {

// Partial tomography of the reference source (central values).
inline XZState reference_source_state() {
    XZState s;
    s.c_zz = -0.9649;
    s.c_xx = -0.9344;
    s.c_zx = 0.1053;
    s.c_xz = -0.0201;
    s.a_z = 0.065;
    s.a_x = 0.036;
    s.b_z = -0.078;
    s.b_x = -0.015;
    return s;
}

// Reported one-sigma errors, same order as XZState::coefficients().
inline constexpr std::array<double, 8> kReferenceSourceSigmas = {
    0.034, 0.014, 0.020, 0.019, 0.0012, 0.0045, 0.0048, 0.0017};

} // namespace bellkit::testing
