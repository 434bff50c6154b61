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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellkit/inequality.hpp"
#include "bellkit/qstate.hpp"

namespace bellkit {

/// Polarization-entangled pair source with a linear polarizer per arm.
struct SourceConfig {
    double pair_rate = 4200.0; // detected coincidences / s without polarizers
    double duration = 20.0;    // seconds per polarizer pair
    std::uint64_t seed = 1;

    void validate() const;
};

/// Polarizer orientations in degrees from vertical.
struct PolarizerPair {
    double alice_deg = 0.0;
    double bob_deg = 0.0;
};

struct CountRecord {
    double alice_polarizer_deg = 0.0;
    double bob_polarizer_deg = 0.0;
    double duration = 0.0;
    std::uint64_t counts = 0;
};

struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
    /// First-order propagation returned sigma = 0 (e.g. perfect
    /// anticorrelation); reported as computed.
    bool degenerate = false;
};

/// Polarizer rotation by theta turns the Bloch vector by 2 theta: H/V is
/// sigma_z, +-45 degrees is sigma_x.
Angle bloch_from_polarizer(double polarizer_deg);
/// Inverse of bloch_from_polarizer, in [0, 180).
double polarizer_from_bloch(Angle bloch);

/// Polarizer angle reduced to [0, 180); theta and theta + 180 are the same
/// polarizer.
double normalize_polarizer(double deg);

/// Counts for one polarizer pair are Poisson with mean
/// rate * duration * p(+,+ | 2 theta_A, 2 theta_B). One generator per call,
/// seeded from config.seed. Throws UnphysicalStateError for a scheduled angle
/// where the state has no valid probabilities.
std::vector<CountRecord> simulate_counts(const XZState &state,
                                         const SourceConfig &config,
                                         std::span<const PolarizerPair> schedule);

/// Expected (noise-free) counts, same layout as simulate_counts.
std::vector<CountRecord> expected_counts(const XZState &state,
                                         const SourceConfig &config,
                                         std::span<const PolarizerPair> schedule);

/// Coincidences of one basis pair: (theta_A, theta_B), (theta_A, theta_B+90),
/// (theta_A+90, theta_B), (theta_A+90, theta_B+90).
struct BasisCounts {
    double pp = 0.0;
    double pm = 0.0;
    double mp = 0.0;
    double mm = 0.0;

    [[nodiscard]] double total() const { return pp + pm + mp + mm; }
};

/// E_AB = (n++ - n+- - n-+ + n--) / T with first-order Poisson propagation
/// sigma^2 = sum_k ((s_k - E) / T)^2 n_k. Throws InputError for T = 0.
Estimate correlation_from_counts(double n_pp, double n_pm, double n_mp,
                                 double n_mm);
Estimate correlation_from_counts(const BasisCounts &c);

/// Single-basis marginal estimates from the same four counts.
Estimate alice_marginal_from_counts(const BasisCounts &c);
Estimate bob_marginal_from_counts(const BasisCounts &c);

/// Combines repeated estimates of one marginal (taken with different bases
/// on the other side): mean value, sigma = max(propagated sigma of the mean,
/// half the spread). Throws InputError for fewer than two estimates.
Estimate marginal_from_counts(std::span<const Estimate> estimates);

/// The four orientation pairs of a basis pair, in BasisCounts order.
std::vector<PolarizerPair> expand_basis(PolarizerPair basis);

/// Lookup of coincidence counts by polarizer pair.
class CountSet {
  public:
    CountSet() = default;
    explicit CountSet(std::vector<CountRecord> records);

    [[nodiscard]] const std::vector<CountRecord> &records() const { return records_; }

    /// Counts at a polarizer pair, or nullptr when not measured. Angles are
    /// compared modulo 180 degrees within 1e-6 degrees.
    [[nodiscard]] const CountRecord *find(double alice_deg, double bob_deg) const;

    /// Four orientation counts of a basis pair; throws IncompleteDataError
    /// naming `term` and the missing polarizer pairs.
    [[nodiscard]] BasisCounts basis(PolarizerPair basis, const std::string &term) const;

  private:
    std::vector<CountRecord> records_;
};

/// Basis pairs needed to evaluate `table` at `settings`: one per non-zero
/// joint coefficient, plus, for a marginal whose setting takes part in no
/// joint term, a pairing with the other side's first setting.
std::vector<PolarizerPair> bell_bases(const InequalityTable &table,
                                      const SettingsVector &settings);

/// bell_bases expanded into orientation pairs.
std::vector<PolarizerPair> bell_schedule(const InequalityTable &table,
                                         const SettingsVector &settings);

struct BellEstimate {
    Estimate total;
    std::vector<std::string> term_names;
    std::vector<Estimate> terms; // same order as term_names
};

/// Table contraction of correlation and marginal estimates; independent-error
/// quadrature sigma = sqrt(sum coeff^2 sigma_term^2). Marginals use every
/// basis pair of bell_bases that contains their setting. Throws
/// IncompleteDataError listing every missing term.
BellEstimate bell_value_from_counts(const InequalityTable &table,
                                    const SettingsVector &settings,
                                    const CountSet &counts);

/// Counts CSV: header alice_deg,bob_deg,duration_s,counts.
std::string counts_to_csv(std::span<const CountRecord> records);
std::vector<CountRecord> counts_from_csv(const std::string &text);

/// Schedule JSON: list of {alice_deg, bob_deg}.
void to_json(nlohmann::json &j, const PolarizerPair &pair);
void from_json(const nlohmann::json &j, PolarizerPair &pair);
void to_json(nlohmann::json &j, const Estimate &e);

} // namespace bellkit
