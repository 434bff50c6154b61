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
#include "bellkit/inequality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

InequalityTable make_table(std::string name, std::vector<double> alice,
                           std::vector<double> bob,
                           std::vector<std::vector<double>> joint,
                           double local_bound) {
    InequalityTable t;
    t.name = std::move(name);
    t.n = static_cast<int>(alice.size());
    t.alice_marginals = std::move(alice);
    t.bob_marginals = std::move(bob);
    t.joint = std::move(joint);
    t.local_bound = local_bound;
    t.validate();
    return t;
}

} // namespace

void InequalityTable::validate() const {
    if (n < 1) {
        throw InputError("inequality '" + name + "': n must be positive");
    }
    const auto un = static_cast<std::size_t>(n);
    if (alice_marginals.size() != un || bob_marginals.size() != un ||
        joint.size() != un) {
        throw InputError("inequality '" + name +
                         "': coefficient arrays do not match n = " +
                         std::to_string(n));
    }
    for (const auto &row : joint) {
        if (row.size() != un) {
            throw InputError("inequality '" + name +
                             "': joint matrix is not n x n");
        }
    }
}

void SettingsVector::check_against(const InequalityTable &table) const {
    if (alice.size() != static_cast<std::size_t>(table.n) ||
        bob.size() != static_cast<std::size_t>(table.n)) {
        throw InputError("settings have " + std::to_string(alice.size()) +
                         "/" + std::to_string(bob.size()) +
                         " angles, inequality '" + table.name + "' needs " +
                         std::to_string(table.n) + " per side");
    }
}

InequalityTable catalog_chsh() {
    return make_table("chsh", {0, 0}, {0, 0}, {{1, 1}, {-1, 1}}, 2);
}

InequalityTable catalog_i3322() {
    return make_table("i3322", {1, 1, 0}, {1, 1, 0},
                      {{-1, -1, -1}, {-1, -1, 1}, {-1, 1, 0}}, 4);
}

InequalityTable catalog_as1() {
    return make_table(
        "as1", {0, 0, 0, 0}, {0, 0, 0, 0},
        {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -2, 0}, {1, -1, 0, 0}}, 6);
}

InequalityTable catalog_as2() {
    return make_table(
        "as2", {0, 0, 0, 0}, {0, 0, 0, 0},
        {{2, 1, 1, 2}, {1, 1, 2, -2}, {1, 2, -2, -1}, {2, -2, -1, -1}}, 10);
}

InequalityTable catalog_chained(int n) {
    if (n < 2) {
        throw InputError("chained inequality needs N >= 2, got " +
                         std::to_string(n));
    }
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::vector<double>> l(un, std::vector<double>(un, 0.0));
    for (std::size_t i = 0; i < un; ++i) {
        l[i][i] = 1.0;                   // E(a_i, b_i)
        if (i + 1 < un) {
            l[i + 1][i] = 1.0;           // E(b_i, a_{i+1})
        }
    }
    l[0][un - 1] = -1.0;                 // -E(b_N, a_1)
    return make_table("chained:" + std::to_string(n),
                      std::vector<double>(un, 0.0),
                      std::vector<double>(un, 0.0), std::move(l),
                      2.0 * (n - 1));
}

InequalityTable catalog_lookup(std::string_view ref) {
    if (ref == "chsh") {
        return catalog_chsh();
    }
    if (ref == "i3322") {
        return catalog_i3322();
    }
    if (ref == "as1") {
        return catalog_as1();
    }
    if (ref == "as2") {
        return catalog_as2();
    }
    constexpr std::string_view prefix = "chained:";
    if (ref.starts_with(prefix)) {
        const auto digits = ref.substr(prefix.size());
        int n = 0;
        const auto [ptr, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) {
            throw InputError("bad chained inequality reference '" +
                             std::string(ref) + "'");
        }
        if (n > kMaxBruteForceSettings) {
            throw InputError("chained:" + std::to_string(n) +
                             " exceeds the supported maximum N = " +
                             std::to_string(kMaxBruteForceSettings));
        }
        return catalog_chained(n);
    }
    throw InputError("unknown inequality '" + std::string(ref) +
                     "' (expected chsh, i3322, as1, as2 or chained:N)");
}

std::vector<std::string> experiment_inequality_refs() {
    return {"chsh",      "i3322",     "as1",       "as2",      "chained:2",
            "chained:3", "chained:4", "chained:5", "chained:6"};
}

std::vector<InequalityTable> catalog_all() {
    std::vector<InequalityTable> out = {catalog_chsh(), catalog_i3322(),
                                        catalog_as1(), catalog_as2()};
    for (int n = 2; n <= 6; ++n) {
        out.push_back(catalog_chained(n));
    }
    return out;
}

double evaluate(const InequalityTable &table, const XZState &state,
                const SettingsVector &settings) {
    settings.check_against(table);
    double value = 0.0;
    for (int i = 0; i < table.n; ++i) {
        value += table.alice_marginals[i] * marginal_alice(state, settings.alice[i]);
        value += table.bob_marginals[i] * marginal_bob(state, settings.bob[i]);
    }
    for (int i = 0; i < table.n; ++i) {
        for (int j = 0; j < table.n; ++j) {
            if (table.l(i, j) != 0.0) {
                value += table.l(i, j) *
                         joint(state, settings.alice[i], settings.bob[j]);
            }
        }
    }
    return value;
}

double local_bound_bruteforce(const InequalityTable &table) {
    table.validate();
    if (table.n > kMaxBruteForceSettings) {
        throw InputError("local bound enumeration limited to N <= " +
                         std::to_string(kMaxBruteForceSettings));
    }
    const int n = table.n;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> a(static_cast<std::size_t>(n));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double value = 0.0;
        for (int i = 0; i < n; ++i) {
            a[i] = (mask >> i) & 1u ? -1.0 : 1.0;
            value += table.alice_marginals[i] * a[i];
        }
        for (int j = 0; j < n; ++j) {
            double coeff = table.bob_marginals[j];
            for (int i = 0; i < n; ++i) {
                coeff += table.l(i, j) * a[i];
            }
            value += std::abs(coeff);
        }
        best = std::max(best, value);
    }
    return best;
}

double noise_tolerance(double local_bound, double observed) {
    if (!(observed > 0.0)) {
        throw InputError("noise tolerance needs a positive observed value");
    }
    return std::max(0.0, 1.0 - local_bound / observed);
}

void to_json(nlohmann::json &j, const InequalityTable &table) {
    j = {{"name", table.name},
         {"n", table.n},
         {"alice_marginals", table.alice_marginals},
         {"bob_marginals", table.bob_marginals},
         {"joint", table.joint},
         {"local_bound", table.local_bound}};
}

void from_json(const nlohmann::json &j, InequalityTable &table) {
    try {
        table.name = j.at("name").get<std::string>();
        table.n = j.at("n").get<int>();
        table.alice_marginals = j.at("alice_marginals").get<std::vector<double>>();
        table.bob_marginals = j.at("bob_marginals").get<std::vector<double>>();
        table.joint = j.at("joint").get<std::vector<std::vector<double>>>();
        table.local_bound = j.at("local_bound").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("bad inequality JSON: ") + e.what());
    }
    table.validate();
}

void to_json(nlohmann::json &j, const SettingsVector &settings) {
    auto radians = [](const std::vector<Angle> &v) {
        std::vector<double> out;
        for (const Angle &a : v) out.push_back(a.radians());
        return out;
    };
    auto degrees = [](const std::vector<Angle> &v) {
        std::vector<double> out;
        for (const Angle &a : v) out.push_back(a.degrees());
        return out;
    };
    j = {{"alice", radians(settings.alice)},
         {"bob", radians(settings.bob)},
         {"alice_deg", degrees(settings.alice)},
         {"bob_deg", degrees(settings.bob)}};
}

void from_json(const nlohmann::json &j, SettingsVector &settings) {
    auto read = [&j](const char *key) {
        if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
            throw InputError(std::string("settings need an array '") + key + "'");
        }
        std::vector<Angle> out;
        for (const auto &v : j.at(key)) {
            if (!v.is_number()) {
                throw InputError(std::string("non-numeric angle in '") + key + "'");
            }
            out.emplace_back(v.get<double>());
        }
        return out;
    };
    settings.alice = read("alice");
    settings.bob = read("bob");
}

} // namespace bellkit
