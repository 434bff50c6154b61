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
#include "bellkit/qstate.hpp"

#include <algorithm>
#include <string>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked_probability(double p) {
    if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
        throw UnphysicalStateError("unphysical state: outcome probability " +
                                   std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

} // namespace

Angle::Angle(double radians) {
    double t = std::fmod(radians, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    // fmod of a value just below a multiple of 2pi can round up to 2pi.
    if (t >= kTwoPi) {
        t = 0.0;
    }
    theta_ = t;
}

Angle Angle::from_degrees(double degrees) {
    return Angle(degrees * std::numbers::pi / 180.0);
}

void XZState::validate() const {
    const auto c = coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!(c[k] >= -1.0 && c[k] <= 1.0)) {
            throw InputError(std::string("coefficient ") +
                             kCoefficientNames[k] + " = " +
                             std::to_string(c[k]) + " outside [-1, 1]");
        }
    }
}

XZState XZState::from_coefficients(const std::array<double, 8> &c) {
    return {c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]};
}

XZState make_state(double a_z, double a_x, double b_z, double b_x,
                   double c_zz, double c_zx, double c_xz, double c_xx) {
    XZState s{a_z, a_x, b_z, b_x, c_zz, c_zx, c_xz, c_xx};
    s.validate();
    return s;
}

XZState mix(const XZState &first, const XZState &second, double weight) {
    const auto a = first.coefficients();
    const auto b = second.coefficients();
    std::array<double, 8> out{};
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = weight * a[k] + (1.0 - weight) * b[k];
    }
    return XZState::from_coefficients(out);
}

XZState werner_state(WernerParams params) {
    const double v = params.visibility;
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError("visibility " + std::to_string(v) +
                         " outside [0, 1]");
    }
    XZState s;
    s.c_zz = -v;
    s.c_xx = -v;
    return s;
}

double marginal_alice(const XZState &state, Angle alpha) {
    const double t = alpha.radians();
    return std::cos(t) * state.a_z + std::sin(t) * state.a_x;
}

double marginal_bob(const XZState &state, Angle beta) {
    const double t = beta.radians();
    return std::cos(t) * state.b_z + std::sin(t) * state.b_x;
}

double joint(const XZState &state, Angle alpha, Angle beta) {
    const double ca = std::cos(alpha.radians());
    const double sa = std::sin(alpha.radians());
    const double cb = std::cos(beta.radians());
    const double sb = std::sin(beta.radians());
    return ca * cb * state.c_zz + ca * sb * state.c_zx + sa * cb * state.c_xz +
           sa * sb * state.c_xx;
}

OutcomeProbabilities raw_outcome_probabilities(const XZState &state,
                                               Angle alpha, Angle beta) {
    const double ea = marginal_alice(state, alpha);
    const double eb = marginal_bob(state, beta);
    const double eab = joint(state, alpha, beta);
    return {
        0.25 * (1.0 + ea + eb + eab),
        0.25 * (1.0 + ea - eb - eab),
        0.25 * (1.0 - ea + eb - eab),
        0.25 * (1.0 - ea - eb + eab),
    };
}

OutcomeProbabilities outcome_probabilities(const XZState &state, Angle alpha,
                                           Angle beta) {
    const auto raw = raw_outcome_probabilities(state, alpha, beta);
    return {checked_probability(raw.pp), checked_probability(raw.pm),
            checked_probability(raw.mp), checked_probability(raw.mm)};
}

bool is_physical(const XZState &state, int grid_points) {
    const double step = kTwoPi / grid_points;
    for (int i = 0; i < grid_points; ++i) {
        for (int j = 0; j < grid_points; ++j) {
            const auto p =
                raw_outcome_probabilities(state, Angle(i * step), Angle(j * step));
            for (double v : {p.pp, p.pm, p.mp, p.mm}) {
                if (v < -kProbabilityTolerance ||
                    v > 1.0 + kProbabilityTolerance) {
                    return false;
                }
            }
        }
    }
    return true;
}

double min_outcome_probability(const XZState &state, int grid_points) {
    const double step = kTwoPi / grid_points;
    double lowest = 1.0;
    for (int i = 0; i < grid_points; ++i) {
        for (int j = 0; j < grid_points; ++j) {
            const auto p =
                raw_outcome_probabilities(state, Angle(i * step), Angle(j * step));
            lowest = std::min({lowest, p.pp, p.pm, p.mp, p.mm});
        }
    }
    return lowest;
}

Depolarized depolarize_to_physical(const XZState &state, double floor) {
    const double lowest = min_outcome_probability(state);
    if (lowest >= -kProbabilityTolerance) {
        return {state, 0.0};
    }
    // (1 - w) p + w / 4 >= floor  <=>  w >= (floor - p) / (1/4 - p)
    const double w = (floor - lowest) / (0.25 - lowest);
    return {mix(maximally_mixed(), state, w), w};
}

void to_json(nlohmann::json &j, const XZState &state) {
    j = nlohmann::json::object();
    const auto c = state.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
        j[kCoefficientNames[k]] = c[k];
    }
}

void from_json(const nlohmann::json &j, XZState &state) {
    if (!j.is_object()) {
        throw InputError("state JSON must be an object");
    }
    std::array<double, 8> c{};
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto it = j.find(kCoefficientNames[k]);
        if (it == j.end()) {
            throw InputError(std::string("state JSON missing key ") +
                             kCoefficientNames[k]);
        }
        if (!it->is_number()) {
            throw InputError(std::string("state JSON key ") +
                             kCoefficientNames[k] + " is not a number");
        }
        c[k] = it->get<double>();
    }
    state = XZState::from_coefficients(c);
    state.validate();
}

} // namespace bellkit
