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

#include <string>
#include <string_view>
#include <vector>

#include "bellkit/qstate.hpp"
#include "json.hpp"

namespace bellkit {

/// Binary-outcome Bell expression with N settings per side,
///
///   I = sum_i n_i E(alpha_i) + sum_j m_j E(beta_j)
///       + sum_ij l_ij E(alpha_i, beta_j) <= I_L
///
/// with coefficients on expectation values (not probabilities).
struct InequalityTable {
    std::string name;
    int n = 0;
    std::vector<double> alice_marginals;         // n_i
    std::vector<double> bob_marginals;           // m_j
    std::vector<std::vector<double>> joint;      // l_ij, row i = Alice
    double local_bound = 0.0;                    // I_L

    [[nodiscard]] int n_settings_alice() const { return n; }
    [[nodiscard]] int n_settings_bob() const { return n; }
    [[nodiscard]] double l(int i, int j) const { return joint[i][j]; }

    /// Throws InputError when the coefficient arrays disagree with n.
    void validate() const;
};

struct SettingsVector {
    std::vector<Angle> alice;
    std::vector<Angle> bob;

    /// Throws InputError when the lengths do not match `table`.
    void check_against(const InequalityTable &table) const;
};

InequalityTable catalog_chsh();
InequalityTable catalog_i3322();
InequalityTable catalog_as1();
InequalityTable catalog_as2();

/// E(a1,b1) + E(b1,a2) + E(a2,b2) + ... + E(aN,bN) - E(bN,a1) <= 2(N-1).
InequalityTable catalog_chained(int n);

/// Resolves "chsh", "i3322", "as1", "as2" or "chained:N".
InequalityTable catalog_lookup(std::string_view ref);

/// The nine inequalities of the reference experiment: chsh, i3322, as1,
/// as2, chained:2 .. chained:6.
std::vector<std::string> experiment_inequality_refs();

/// Every fixed catalog entry plus chained:2 .. chained:6.
std::vector<InequalityTable> catalog_all();

inline constexpr int kMaxBruteForceSettings = 16;

double evaluate(const InequalityTable &table, const XZState &state,
                const SettingsVector &settings);

/// Maximum over deterministic local strategies a_i, b_j in {+1, -1}. Alice's
/// 2^N assignments are enumerated; for each one Bob's best response is exact
/// (b_j = sign of its coefficient), which covers all 2^(2N) strategies.
double local_bound_bruteforce(const InequalityTable &table);

/// White-noise fraction at which a value I_exp stops violating I_L:
/// max(0, 1 - I_L / I_exp). Only valid for white noise, which scores 0 on
/// every table, so that mixing scales the observed value linearly.
double noise_tolerance(double local_bound, double observed);

void to_json(nlohmann::json &j, const InequalityTable &table);
void from_json(const nlohmann::json &j, InequalityTable &table);

/// {"alice": [rad...], "bob": [rad...]} plus informational "alice_deg" and
/// "bob_deg" (Bloch-angle degrees). Reading uses the radian arrays only.
void to_json(nlohmann::json &j, const SettingsVector &settings);
void from_json(const nlohmann::json &j, SettingsVector &settings);

} // namespace bellkit
