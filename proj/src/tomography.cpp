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
#include "bellkit/tomography.hpp"

#include <algorithm>
#include <string>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

// Polarizer angle measuring sigma_z (index 0) or sigma_x (index 1).
constexpr std::array<double, 2> kBasisDeg = {0.0, 45.0};
constexpr std::array<const char *, 2> kBasisName = {"z", "x"};

} // namespace

std::vector<PolarizerPair> tomography_schedule() {
    std::vector<PolarizerPair> out;
    for (double a : kBasisDeg) {
        for (double b : kBasisDeg) {
            for (const auto &p : expand_basis({a, b})) {
                out.push_back(p);
            }
        }
    }
    return out;
}

bool clamp_coefficients(std::array<double, 8> &coefficients) {
    bool moved = false;
    for (double &c : coefficients) {
        const double clamped = std::clamp(c, -1.0, 1.0);
        moved = moved || clamped != c;
        c = clamped;
    }
    return moved;
}

TomographyResult estimate_state(const CountSet &counts) {
    std::array<std::array<BasisCounts, 2>, 2> basis{};
    std::string missing;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const std::string term = std::string("<sigma_") + kBasisName[i] +
                                     " x sigma_" + kBasisName[j] + ">";
            try {
                basis[i][j] = counts.basis({kBasisDeg[i], kBasisDeg[j]}, term);
            } catch (const IncompleteDataError &e) {
                missing += std::string("\n  ") + e.what();
            }
        }
    }
    if (!missing.empty()) {
        throw IncompleteDataError("incomplete tomography counts:" + missing);
    }

    std::array<Estimate, 8> est{};
    for (int i = 0; i < 2; ++i) {
        const std::array<Estimate, 2> alice = {alice_marginal_from_counts(basis[i][0]),
                                               alice_marginal_from_counts(basis[i][1])};
        const std::array<Estimate, 2> bob = {bob_marginal_from_counts(basis[0][i]),
                                             bob_marginal_from_counts(basis[1][i])};
        est[0 + i] = marginal_from_counts(alice); // a_z, a_x
        est[2 + i] = marginal_from_counts(bob);   // b_z, b_x
    }
    est[4] = correlation_from_counts(basis[0][0]); // c_zz
    est[5] = correlation_from_counts(basis[0][1]); // c_zx
    est[6] = correlation_from_counts(basis[1][0]); // c_xz
    est[7] = correlation_from_counts(basis[1][1]); // c_xx

    TomographyResult out;
    std::array<double, 8> values{};
    for (std::size_t k = 0; k < est.size(); ++k) {
        values[k] = est[k].value;
        out.sigmas[k] = est[k].sigma;
    }
    out.physical = is_physical(XZState::from_coefficients(values), 72);
    out.clamped = clamp_coefficients(values);
    out.state = XZState::from_coefficients(values);
    return out;
}

nlohmann::json sigmas_to_json(const std::array<double, 8> &sigmas) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        j[kCoefficientNames[k]] = sigmas[k];
    }
    return j;
}

void to_json(nlohmann::json &j, const TomographyResult &r) {
    j = {{"state", r.state},
         {"sigmas", sigmas_to_json(r.sigmas)},
         {"physical", r.physical},
         {"clamped", r.clamped}};
}

} // namespace bellkit
