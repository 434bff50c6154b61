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
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace bellkit {

/// Measurement direction in the xz plane of the Bloch sphere, in radians,
/// normalized to [0, 2pi).
class Angle {
  public:
    constexpr Angle() = default;
    explicit Angle(double radians);

    static Angle from_degrees(double degrees);

    [[nodiscard]] double radians() const { return theta_; }
    [[nodiscard]] double degrees() const {
        return theta_ * 180.0 / std::numbers::pi;
    }

    friend bool operator==(const Angle &, const Angle &) = default;

  private:
    double theta_ = 0.0;
};

/// The eight expectation coefficients of a two-qubit state that are
/// reachable with linear-polarization measurements:
///   a_i = <sigma_i x 1>, b_j = <1 x sigma_j>, c_ij = <sigma_i x sigma_j>
/// with i, j in {z, x}.
struct XZState {
    double a_z = 0.0;
    double a_x = 0.0;
    double b_z = 0.0;
    double b_x = 0.0;
    double c_zz = 0.0;
    double c_zx = 0.0;
    double c_xz = 0.0;
    double c_xx = 0.0;

    /// Throws InputError unless every coefficient lies in [-1, 1].
    void validate() const;

    [[nodiscard]] std::array<double, 8> coefficients() const {
        return {a_z, a_x, b_z, b_x, c_zz, c_zx, c_xz, c_xx};
    }
    static XZState from_coefficients(const std::array<double, 8> &c);

    friend bool operator==(const XZState &, const XZState &) = default;
};

inline constexpr std::array<const char *, 8> kCoefficientNames = {
    "a_z", "a_x", "b_z", "b_x", "c_zz", "c_zx", "c_xz", "c_xx"};

/// Checked XZState constructor.
XZState make_state(double a_z, double a_x, double b_z, double b_x,
                   double c_zz, double c_zx, double c_xz, double c_xx);

/// Coefficientwise mixture `weight * first + (1 - weight) * second`.
XZState mix(const XZState &first, const XZState &second, double weight);

/// All-zero coefficients (identity / 4).
inline XZState maximally_mixed() { return {}; }

/// |psi-> <psi-|: perfect anticorrelation in every in-plane direction.
inline XZState singlet() {
    XZState s;
    s.c_zz = -1.0;
    s.c_xx = -1.0;
    return s;
}

struct WernerParams {
    double visibility = 1.0;
};

/// V |psi-><psi-| + (1 - V) identity / 4. Throws InputError for V outside
/// [0, 1].
XZState werner_state(WernerParams params);

double marginal_alice(const XZState &state, Angle alpha);
double marginal_bob(const XZState &state, Angle beta);
double joint(const XZState &state, Angle alpha, Angle beta);

/// Joint outcome probabilities for outcomes a, b in {+1, -1}.
struct OutcomeProbabilities {
    double pp = 0.0; // p(+,+)
    double pm = 0.0; // p(+,-)
    double mp = 0.0; // p(-,+)
    double mm = 0.0; // p(-,-)
};

/// p(a,b) = (1 + a E_A + b E_B + ab E_AB) / 4, no range checks.
OutcomeProbabilities raw_outcome_probabilities(const XZState &state,
                                               Angle alpha, Angle beta);

inline constexpr double kProbabilityTolerance = 1e-9;

/// Same as raw_outcome_probabilities, but throws UnphysicalStateError when a
/// probability falls outside [-tol, 1 + tol]; values within tol of the range
/// are clamped.
OutcomeProbabilities outcome_probabilities(const XZState &state, Angle alpha,
                                           Angle beta);

/// In-plane positivity: every outcome probability in [-tol, 1 + tol] on a
/// `grid_points` x `grid_points` lattice of angle pairs.
bool is_physical(const XZState &state, int grid_points = 72);

/// Smallest raw outcome probability over a `grid_points`^2 angle lattice.
double min_outcome_probability(const XZState &state, int grid_points = 1440);

struct Depolarized {
    XZState state;
    double noise_weight = 0.0; // weight of identity / 4 in the mixture
};

/// States with a negative in-plane outcome probability (checked on a 1440^2
/// lattice) get the least white noise that lifts every probability to at
/// least `floor`. Physical states are returned unchanged with weight 0.
Depolarized depolarize_to_physical(const XZState &state, double floor = 1e-4);

void to_json(nlohmann::json &j, const XZState &state);
void from_json(const nlohmann::json &j, XZState &state);

} // namespace bellkit
