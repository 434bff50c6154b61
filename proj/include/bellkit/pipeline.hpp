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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bellkit/epr2.hpp"
#include "bellkit/experiment.hpp"
#include "bellkit/inequality.hpp"
#include "bellkit/optimizer.hpp"
#include "bellkit/qstate.hpp"
#include "bellkit/randomness.hpp"
#include "json.hpp"

namespace bellkit {

/// Everything needed to reproduce one end-to-end run. Read from JSON:
///
/// {
///   "state": "state.json",          // relative to the manifest file
///   "inequalities": ["chsh", "chained:4"],
///   "source": {"pair_rate": 4200, "duration": 20},
///   "seeds": {"simulation": 1, "optimizer": 1},
///   "restarts": 32,
///   "estimate_state": false,
///   "out_dir": "results"            // relative to the manifest file
/// }
///
/// Only "state" and "inequalities" are required.
struct RunManifest {
    std::filesystem::path state_path;
    std::vector<std::string> inequalities;
    double pair_rate = 4200.0;
    double duration = 20.0;
    std::uint64_t simulation_seed = 1;
    std::uint64_t optimizer_seed = 1;
    int restarts = 32;
    /// Simulate a tomography run first and optimize settings on the
    /// reconstructed state instead of the declared one.
    bool estimate_state = false;
    std::filesystem::path out_dir = "results";
};

/// Parses and validates: the state file must exist and parse, references
/// must resolve, numbers must be in range. Relative paths are resolved
/// against `base_dir`.
RunManifest manifest_from_json(const nlohmann::json &j,
                               const std::filesystem::path &base_dir);
RunManifest load_manifest(const std::filesystem::path &path);
void to_json(nlohmann::json &j, const RunManifest &m);

/// (value - I_L) / sigma. Throws InputError for a non-positive sigma.
double sigma_distance(const Estimate &observed, double local_bound);

struct CatalogEntry {
    std::string ref;
    std::string name;
    int n = 0;
    double local_bound = 0.0;
    double bruteforce_bound = 0.0;
};

/// chsh, i3322, as1, as2 and chained:2 .. chained:16, each with its
/// declared and brute-force local bound.
std::vector<CatalogEntry> cmd_catalog();

struct InequalityReport {
    std::string ref;
    InequalityTable table;
    OptimizationResult optimized;   // I^tom and the settings used
    std::vector<PolarizerPair> schedule;
    std::uint64_t simulation_seed = 0;
    /// White-noise weight mixed into the declared state for this schedule;
    /// 0 when its probabilities are valid at every scheduled orientation.
    double source_noise_weight = 0.0;
    BellEstimate measured;          // I^exp
    std::optional<double> sigma_distance; // absent for a zero sigma
    double noise_tolerance = 0.0;
    std::optional<LocalContentBound> local_content; // chained only
    std::optional<RandomnessReport> randomness;     // only when violated
};

struct PipelineResult {
    XZState declared_state;
    /// Fallback source for schedules that touch the declared state's
    /// negative-probability region.
    Depolarized source;
    XZState model_state;                // what the optimizer sees
    std::optional<nlohmann::json> tomography;
    std::vector<InequalityReport> inequalities;
    std::vector<std::filesystem::path> written;
};

/// simulate -> (tomography) -> optimize -> evaluate -> epr2 / randomness ->
/// report. Writes into m.out_dir:
///   <ref>.json, <ref>.counts.csv   per inequality
///   summary.json, summary.txt      combined table with provenance
///   metadata.json                  timestamps and tool version
///   tomography.json                when estimate_state is set
/// Every JSON file except metadata.json is a pure function of the manifest.
/// On failure, files written so far are removed and the error is rethrown
/// with the stage name prefixed, keeping its category.
PipelineResult cmd_pipeline(const RunManifest &m);

/// Fixed-width text rendering of summary.json rows at 3-4 decimals.
std::string render_summary_table(const nlohmann::json &summary);

/// File-name-safe form of an inequality reference ("chained:4" -> "chained_4").
std::string ref_file_stem(const std::string &ref);

inline constexpr const char *kToolVersion = "0.1.0";

} // namespace bellkit
