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
#include "bellkit/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bellkit/error.hpp"

namespace bellkit {

namespace {

constexpr double kAngleMatch = 1e-6; // degrees

bool same_polarizer(double a, double b) {
    const double d = std::abs(normalize_polarizer(a) - normalize_polarizer(b));
    return std::min(d, 180.0 - d) < kAngleMatch;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string pair_name(double a, double b) {
    return "(" + format_double(a) + "," + format_double(b) + ")";
}

/// sigma^2 = sum_k ((s_k - v) / T)^2 n_k for the four counts and the
/// outcome weights s_k of the estimated quantity.
Estimate propagate(const BasisCounts &c, const std::array<double, 4> &weights) {
    const double t = c.total();
    if (!(t > 0.0)) {
        throw InputError("estimate needs a positive total count");
    }
    const std::array<double, 4> n = {c.pp, c.pm, c.mp, c.mm};
    double value = 0.0;
    for (int k = 0; k < 4; ++k) {
        value += weights[k] * n[k];
    }
    value /= t;
    double var = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double d = (weights[k] - value) / t;
        var += d * d * n[k];
    }
    Estimate e{value, std::sqrt(var), false};
    e.degenerate = e.sigma == 0.0;
    return e;
}

std::vector<PolarizerPair> dedupe(std::vector<PolarizerPair> pairs) {
    std::vector<PolarizerPair> out;
    for (const auto &p : pairs) {
        const bool seen = std::any_of(out.begin(), out.end(), [&](const auto &q) {
            return same_polarizer(p.alice_deg, q.alice_deg) &&
                   same_polarizer(p.bob_deg, q.bob_deg);
        });
        if (!seen) {
            out.push_back(p);
        }
    }
    return out;
}

PolarizerPair basis_of(const SettingsVector &s, int i, int j) {
    return {polarizer_from_bloch(s.alice[i]), polarizer_from_bloch(s.bob[j])};
}

// Other-side settings used to measure a marginal: those it shares a joint
// term with, else the first one.
std::vector<int> alice_marginal_partners(const InequalityTable &t, int i) {
    std::vector<int> out;
    for (int j = 0; j < t.n; ++j) {
        if (t.l(i, j) != 0.0) {
            out.push_back(j);
        }
    }
    if (out.empty()) {
        out.push_back(0);
    }
    return out;
}

std::vector<int> bob_marginal_partners(const InequalityTable &t, int j) {
    std::vector<int> out;
    for (int i = 0; i < t.n; ++i) {
        if (t.l(i, j) != 0.0) {
            out.push_back(i);
        }
    }
    if (out.empty()) {
        out.push_back(0);
    }
    return out;
}

} // namespace

void SourceConfig::validate() const {
    if (!(pair_rate > 0.0)) {
        throw InputError("pair rate must be positive");
    }
    if (!(duration > 0.0)) {
        throw InputError("duration must be positive");
    }
}

double normalize_polarizer(double deg) {
    double d = std::fmod(deg, 180.0);
    if (d < 0.0) {
        d += 180.0;
    }
    return d >= 180.0 ? 0.0 : d;
}

Angle bloch_from_polarizer(double polarizer_deg) {
    return Angle(2.0 * polarizer_deg * std::numbers::pi / 180.0);
}

double polarizer_from_bloch(Angle bloch) {
    return normalize_polarizer(bloch.degrees() / 2.0);
}

std::vector<CountRecord> expected_counts(const XZState &state,
                                         const SourceConfig &config,
                                         std::span<const PolarizerPair> schedule) {
    config.validate();
    std::vector<CountRecord> out;
    out.reserve(schedule.size());
    for (const auto &pair : schedule) {
        const auto p = outcome_probabilities(state, bloch_from_polarizer(pair.alice_deg),
                                             bloch_from_polarizer(pair.bob_deg));
        const double mean = config.pair_rate * config.duration * p.pp;
        out.push_back({pair.alice_deg, pair.bob_deg, config.duration,
                       static_cast<std::uint64_t>(std::llround(mean))});
    }
    return out;
}

std::vector<CountRecord> simulate_counts(const XZState &state,
                                         const SourceConfig &config,
                                         std::span<const PolarizerPair> schedule) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<CountRecord> out;
    out.reserve(schedule.size());
    for (const auto &pair : schedule) {
        const auto p = outcome_probabilities(state, bloch_from_polarizer(pair.alice_deg),
                                             bloch_from_polarizer(pair.bob_deg));
        const double mean = config.pair_rate * config.duration * p.pp;
        std::uint64_t n = 0;
        if (mean > 0.0) {
            std::poisson_distribution<std::uint64_t> poisson(mean);
            n = poisson(rng);
        }
        out.push_back({pair.alice_deg, pair.bob_deg, config.duration, n});
    }
    return out;
}

Estimate correlation_from_counts(double n_pp, double n_pm, double n_mp,
                                 double n_mm) {
    return correlation_from_counts(BasisCounts{n_pp, n_pm, n_mp, n_mm});
}

Estimate correlation_from_counts(const BasisCounts &c) {
    return propagate(c, {1.0, -1.0, -1.0, 1.0});
}

Estimate alice_marginal_from_counts(const BasisCounts &c) {
    return propagate(c, {1.0, 1.0, -1.0, -1.0});
}

Estimate bob_marginal_from_counts(const BasisCounts &c) {
    return propagate(c, {1.0, -1.0, 1.0, -1.0});
}

Estimate marginal_from_counts(std::span<const Estimate> estimates) {
    if (estimates.size() < 2) {
        throw InputError("marginal combination needs at least two estimates");
    }
    const double k = static_cast<double>(estimates.size());
    double sum = 0.0;
    double var = 0.0;
    double lo = estimates.front().value;
    double hi = lo;
    for (const auto &e : estimates) {
        sum += e.value;
        var += e.sigma * e.sigma;
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
    }
    Estimate out;
    out.value = sum / k;
    out.sigma = std::max(std::sqrt(var) / k, 0.5 * (hi - lo));
    out.degenerate = out.sigma == 0.0;
    return out;
}

std::vector<PolarizerPair> expand_basis(PolarizerPair basis) {
    const double a = basis.alice_deg;
    const double b = basis.bob_deg;
    return {{a, b},
            {a, normalize_polarizer(b + 90.0)},
            {normalize_polarizer(a + 90.0), b},
            {normalize_polarizer(a + 90.0), normalize_polarizer(b + 90.0)}};
}

CountSet::CountSet(std::vector<CountRecord> records) : records_(std::move(records)) {}

const CountRecord *CountSet::find(double alice_deg, double bob_deg) const {
    for (const auto &r : records_) {
        if (same_polarizer(r.alice_polarizer_deg, alice_deg) &&
            same_polarizer(r.bob_polarizer_deg, bob_deg)) {
            return &r;
        }
    }
    return nullptr;
}

BasisCounts CountSet::basis(PolarizerPair basis, const std::string &term) const {
    const auto pairs = expand_basis(basis);
    std::array<double, 4> n{};
    std::string missing;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto *r = find(pairs[k].alice_deg, pairs[k].bob_deg);
        if (r == nullptr) {
            missing += (missing.empty() ? "" : " ") +
                       pair_name(pairs[k].alice_deg, pairs[k].bob_deg);
        } else {
            n[k] = static_cast<double>(r->counts);
        }
    }
    if (!missing.empty()) {
        throw IncompleteDataError(term + ": missing polarizer pairs " + missing);
    }
    return {n[0], n[1], n[2], n[3]};
}

std::vector<PolarizerPair> bell_bases(const InequalityTable &table,
                                      const SettingsVector &settings) {
    settings.check_against(table);
    std::vector<PolarizerPair> bases;
    for (int i = 0; i < table.n; ++i) {
        for (int j = 0; j < table.n; ++j) {
            if (table.l(i, j) != 0.0) {
                bases.push_back(basis_of(settings, i, j));
            }
        }
    }
    for (int i = 0; i < table.n; ++i) {
        if (table.alice_marginals[i] != 0.0) {
            for (int j : alice_marginal_partners(table, i)) {
                bases.push_back(basis_of(settings, i, j));
            }
        }
        if (table.bob_marginals[i] != 0.0) {
            for (int k : bob_marginal_partners(table, i)) {
                bases.push_back(basis_of(settings, k, i));
            }
        }
    }
    return dedupe(std::move(bases));
}

std::vector<PolarizerPair> bell_schedule(const InequalityTable &table,
                                         const SettingsVector &settings) {
    std::vector<PolarizerPair> out;
    for (const auto &b : bell_bases(table, settings)) {
        for (const auto &p : expand_basis(b)) {
            out.push_back(p);
        }
    }
    return dedupe(std::move(out));
}

BellEstimate bell_value_from_counts(const InequalityTable &table,
                                    const SettingsVector &settings,
                                    const CountSet &counts) {
    settings.check_against(table);
    BellEstimate out;
    std::vector<double> coeffs;
    std::vector<std::string> missing;

    auto collect = [&](const std::string &name, double coeff, auto &&estimate) {
        try {
            out.terms.push_back(estimate());
            out.term_names.push_back(name);
            coeffs.push_back(coeff);
        } catch (const IncompleteDataError &e) {
            missing.push_back(e.what());
        }
    };

    for (int i = 0; i < table.n; ++i) {
        for (int j = 0; j < table.n; ++j) {
            const double l = table.l(i, j);
            if (l == 0.0) {
                continue;
            }
            const std::string name =
                "E(A" + std::to_string(i + 1) + ",B" + std::to_string(j + 1) + ")";
            collect(name, l, [&] {
                return correlation_from_counts(
                    counts.basis(basis_of(settings, i, j), name));
            });
        }
    }

    auto marginal = [&](bool alice, int s) {
        const std::string name = std::string("E(") + (alice ? "A" : "B") +
                                 std::to_string(s + 1) + ")";
        const double coeff = alice ? table.alice_marginals[s] : table.bob_marginals[s];
        if (coeff == 0.0) {
            return;
        }
        collect(name, coeff, [&] {
            std::vector<PolarizerPair> bases;
            for (int p : alice ? alice_marginal_partners(table, s)
                               : bob_marginal_partners(table, s)) {
                bases.push_back(alice ? basis_of(settings, s, p)
                                      : basis_of(settings, p, s));
            }
            bases = dedupe(std::move(bases));
            std::vector<Estimate> parts;
            for (const auto &b : bases) {
                const auto c = counts.basis(b, name);
                parts.push_back(alice ? alice_marginal_from_counts(c)
                                      : bob_marginal_from_counts(c));
            }
            return parts.size() == 1 ? parts.front() : marginal_from_counts(parts);
        });
    };
    for (int s = 0; s < table.n; ++s) {
        marginal(true, s);
    }
    for (int s = 0; s < table.n; ++s) {
        marginal(false, s);
    }

    if (!missing.empty()) {
        std::string msg = "incomplete counts for '" + table.name + "':";
        for (const auto &m : missing) {
            msg += "\n  " + m;
        }
        throw IncompleteDataError(msg);
    }

    double var = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out.total.value += coeffs[k] * out.terms[k].value;
        var += coeffs[k] * coeffs[k] * out.terms[k].sigma * out.terms[k].sigma;
    }
    out.total.sigma = std::sqrt(var);
    out.total.degenerate = out.total.sigma == 0.0;
    return out;
}

std::string counts_to_csv(std::span<const CountRecord> records) {
    std::string out = "alice_deg,bob_deg,duration_s,counts\n";
    for (const auto &r : records) {
        out += format_double(r.alice_polarizer_deg) + "," +
               format_double(r.bob_polarizer_deg) + "," +
               format_double(r.duration) + "," + std::to_string(r.counts) + "\n";
    }
    return out;
}

std::vector<CountRecord> counts_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("counts CSV is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "alice_deg,bob_deg,duration_s,counts") {
        throw InputError("counts CSV header must be alice_deg,bob_deg,duration_s,counts");
    }
    std::vector<CountRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 4) {
            throw InputError("counts CSV line " + std::to_string(line_no) +
                             ": expected 4 fields");
        }
        CountRecord r;
        auto parse = [&](const std::string &f, auto &dst) {
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), dst);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                throw InputError("counts CSV line " + std::to_string(line_no) +
                                 ": bad number '" + f + "'");
            }
        };
        parse(fields[0], r.alice_polarizer_deg);
        parse(fields[1], r.bob_polarizer_deg);
        parse(fields[2], r.duration);
        parse(fields[3], r.counts);
        out.push_back(r);
    }
    return out;
}

void to_json(nlohmann::json &j, const PolarizerPair &pair) {
    j = {{"alice_deg", pair.alice_deg}, {"bob_deg", pair.bob_deg}};
}

void from_json(const nlohmann::json &j, PolarizerPair &pair) {
    try {
        pair.alice_deg = j.at("alice_deg").get<double>();
        pair.bob_deg = j.at("bob_deg").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("bad schedule entry: ") + e.what());
    }
}

void to_json(nlohmann::json &j, const Estimate &e) {
    j = {{"value", e.value}, {"sigma", e.sigma}};
    if (e.degenerate) {
        j["degenerate_sigma"] = true;
    }
}

} // namespace bellkit
