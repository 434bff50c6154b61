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
#include "bellkit/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>
#include <type_traits>

#include "bellkit/error.hpp"
#include "bellkit/polytope.hpp"
#include "bellkit/tomography.hpp"

namespace bellkit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <typename T>
T read_number(const json &j, const char *key, T fallback) {
    if (!j.contains(key)) return fallback;
    const auto &v = j.at(key);
    if (!v.is_number()) {
        throw InputError(std::string("manifest field '") + key + "' must be a number");
    }
    if constexpr (std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned()) {
            throw InputError(std::string("manifest field '") + key +
                             "' must be a non-negative integer");
        }
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) {
            throw InputError(std::string("manifest field '") + key + "' must be an integer");
        }
    }
    return v.get<T>();
}

json read_json_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

XZState read_state(const fs::path &path) {
    return read_json_file(path).get<XZState>();
}

// Runs one stage; any failure is rethrown with the stage name in front and
// the same error category, so the caller's exit-code mapping still works.
template <typename F>
auto stage(const std::string &name, F &&body) {
    try {
        return body();
    } catch (const IncompleteDataError &e) {
        throw IncompleteDataError(name + ": " + e.what());
    } catch (const InputError &e) {
        throw InputError(name + ": " + e.what());
    } catch (const NumericalError &e) {
        throw NumericalError(name + ": " + e.what());
    }
}

// FNV-1a, so that each inequality's simulation seed depends only on the
// base seed and its own reference, not on its position in the list.
std::uint64_t derive_seed(std::uint64_t base, const std::string &ref) {
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (unsigned char c : ref) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Simulated {
    std::vector<CountRecord> records;
    double noise_weight = 0.0;
};

Simulated simulate_source(const XZState &declared, const Depolarized &fallback,
                          const SourceConfig &cfg, const std::vector<PolarizerPair> &schedule) {
    try {
        return {simulate_counts(declared, cfg, schedule), 0.0};
    } catch (const UnphysicalStateError &) {
        return {simulate_counts(fallback.state, cfg, schedule), fallback.noise_weight};
    }
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class OutputSet {
  public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string &name, const std::string &content) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot write " + path.string());
        written_.push_back(path);
        out << content;
        if (!out) throw InputError("failed writing " + path.string());
    }

    void write_json(const std::string &name, const json &j) { write(name, j.dump(2) + "\n"); }

    void discard() noexcept {
        std::error_code ec;
        for (const auto &p : written_) fs::remove(p, ec);
        written_.clear();
    }

    [[nodiscard]] const std::vector<fs::path> &written() const { return written_; }

  private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

json cell(double value, const char *module, json inputs) {
    return {{"value", value}, {"provenance", {{"module", module}, {"inputs", std::move(inputs)}}}};
}

json cell(const Estimate &e, const char *module, json inputs) {
    json c = cell(e.value, module, std::move(inputs));
    c["sigma"] = e.sigma;
    return c;
}

std::vector<double> polarizer_angles(const std::vector<Angle> &v) {
    std::vector<double> out;
    for (const Angle &a : v) out.push_back(polarizer_from_bloch(a));
    return out;
}

json report_json(const InequalityReport &r, const RunManifest &m) {
    json settings = r.optimized.settings;
    settings["alice_polarizer_deg"] = polarizer_angles(r.optimized.settings.alice);
    settings["bob_polarizer_deg"] = polarizer_angles(r.optimized.settings.bob);
    json terms = json::object();
    for (std::size_t k = 0; k < r.measured.terms.size(); ++k) {
        terms[r.measured.term_names[k]] = r.measured.terms[k];
    }
    json j = {{"inequality", r.ref},
              {"table", r.table},
              {"local_bound", r.table.local_bound},
              {"settings", settings},
              {"predicted", {{"value", r.optimized.value},
                             {"restarts_used", r.optimized.restarts_used},
                             {"converged", r.optimized.converged}}},
              {"simulation", {{"seed", r.simulation_seed},
                              {"pair_rate", m.pair_rate},
                              {"duration", m.duration},
                              {"polarizer_pairs", r.schedule.size()},
                              {"source_noise_weight", r.source_noise_weight},
                              {"counts_file", ref_file_stem(r.ref) + ".counts.csv"}}},
              {"measured", r.measured.total},
              {"terms", terms},
              {"sigma_distance", nullptr},
              {"noise_tolerance", r.noise_tolerance},
              {"local_content", nullptr},
              {"randomness", nullptr}};
    if (r.sigma_distance) j["sigma_distance"] = *r.sigma_distance;
    if (r.local_content) j["local_content"] = *r.local_content;
    if (r.randomness) j["randomness"] = *r.randomness;
    return j;
}

json summary_row(const InequalityReport &r, const RunManifest &m, bool from_tomography) {
    const json ref_input = {{"inequality", r.ref}};
    const json measured_input = {{"inequality", r.ref},
                                 {"seed", r.simulation_seed},
                                 {"pair_rate", m.pair_rate},
                                 {"duration", m.duration},
                                 {"source_noise_weight", r.source_noise_weight},
                                 {"counts_file", ref_file_stem(r.ref) + ".counts.csv"}};
    json row = {
        {"inequality", r.ref},
        {"n", r.table.n},
        {"I_L", cell(r.table.local_bound, "inequality", ref_input)},
        {"I_exp", cell(r.measured.total, "experiment", measured_input)},
        {"I_tom", cell(r.optimized.value, "optimizer",
                       {{"inequality", r.ref},
                        {"state", from_tomography ? "tomography" : "declared"},
                        {"restarts", m.restarts},
                        {"seed", m.optimizer_seed}})},
        {"sigma_distance", nullptr},
        {"p_noise", cell(r.noise_tolerance, "inequality",
                         {{"local_bound", r.table.local_bound},
                          {"observed", r.measured.total.value}})},
        {"p_L_max", nullptr},
        {"p_star_ns", nullptr},
        {"hmin_ns", nullptr},
        {"p_star_quantum", nullptr},
        {"hmin_quantum", nullptr}};
    const json observed_input = {{"inequality", r.ref},
                                 {"observed", r.measured.total.value},
                                 {"sigma", r.measured.total.sigma}};
    if (r.sigma_distance) {
        row["sigma_distance"] = cell(*r.sigma_distance, "cli", observed_input);
    }
    if (r.local_content) {
        row["p_L_max"] = cell(r.local_content->p_local_max, "epr2", observed_input);
    }
    if (r.randomness) {
        row["p_star_ns"] = cell(r.randomness->p_star_ns, "randomness", observed_input);
        row["hmin_ns"] = cell(r.randomness->hmin_ns, "randomness", observed_input);
        if (r.randomness->p_star_quantum) {
            row["p_star_quantum"] =
                cell(*r.randomness->p_star_quantum, "randomness", observed_input);
            row["hmin_quantum"] =
                cell(*r.randomness->hmin_quantum, "randomness", observed_input);
        }
    }
    return row;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string &s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

} // namespace

RunManifest manifest_from_json(const json &j, const fs::path &base_dir) {
    if (!j.is_object()) throw InputError("manifest must be a JSON object");
    RunManifest m;
    if (!j.contains("state") || !j.at("state").is_string()) {
        throw InputError("manifest needs a 'state' file path");
    }
    m.state_path = base_dir / j.at("state").get<std::string>();
    if (!fs::exists(m.state_path)) {
        throw InputError("state file not found: " + m.state_path.string());
    }
    read_state(m.state_path);

    if (!j.contains("inequalities") || !j.at("inequalities").is_array()) {
        throw InputError("manifest needs an 'inequalities' array");
    }
    for (const auto &ref : j.at("inequalities")) {
        if (!ref.is_string()) throw InputError("inequality references must be strings");
        m.inequalities.push_back(ref.get<std::string>());
        catalog_lookup(m.inequalities.back());
    }

    const json source = j.value("source", json::object());
    m.pair_rate = read_number(source, "pair_rate", m.pair_rate);
    m.duration = read_number(source, "duration", m.duration);
    SourceConfig{m.pair_rate, m.duration, 0}.validate();

    const json seeds = j.value("seeds", json::object());
    m.simulation_seed = read_number(seeds, "simulation", m.simulation_seed);
    m.optimizer_seed = read_number(seeds, "optimizer", m.optimizer_seed);
    m.restarts = read_number(j, "restarts", m.restarts);
    if (m.restarts < 1) throw InputError("restarts must be at least 1");
    if (j.contains("estimate_state")) {
        if (!j.at("estimate_state").is_boolean()) {
            throw InputError("manifest field 'estimate_state' must be a boolean");
        }
        m.estimate_state = j.at("estimate_state").get<bool>();
    }
    if (j.contains("out_dir")) {
        if (!j.at("out_dir").is_string()) throw InputError("'out_dir' must be a string");
        m.out_dir = j.at("out_dir").get<std::string>();
    }
    m.out_dir = base_dir / m.out_dir;
    return m;
}

RunManifest load_manifest(const fs::path &path) {
    return manifest_from_json(read_json_file(path), path.parent_path());
}

void to_json(json &j, const RunManifest &m) {
    j = {{"state", m.state_path.string()},
         {"inequalities", m.inequalities},
         {"source", {{"pair_rate", m.pair_rate}, {"duration", m.duration}}},
         {"seeds", {{"simulation", m.simulation_seed}, {"optimizer", m.optimizer_seed}}},
         {"restarts", m.restarts},
         {"estimate_state", m.estimate_state},
         {"out_dir", m.out_dir.string()}};
}

double sigma_distance(const Estimate &observed, double local_bound) {
    if (!(observed.sigma > 0.0)) {
        throw InputError("sigma distance needs a positive sigma");
    }
    return (observed.value - local_bound) / observed.sigma;
}

std::vector<CatalogEntry> cmd_catalog() {
    std::vector<std::string> refs = {"chsh", "i3322", "as1", "as2"};
    for (int n = 2; n <= kMaxBruteForceSettings; ++n) {
        refs.push_back("chained:" + std::to_string(n));
    }
    std::vector<CatalogEntry> out;
    for (const auto &ref : refs) {
        const auto t = catalog_lookup(ref);
        out.push_back({ref, t.name, t.n, t.local_bound, local_bound_bruteforce(t)});
    }
    return out;
}

std::string ref_file_stem(const std::string &ref) {
    std::string out = ref;
    for (char &c : out) {
        const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9') || c == '-' || c == '_';
        if (!safe) c = '_';
    }
    return out;
}

PipelineResult cmd_pipeline(const RunManifest &m) {
    if (m.inequalities.empty()) throw InputError("nothing to do");
    const std::string started = utc_now();

    PipelineResult result;
    std::vector<InequalityTable> tables = stage("catalog", [&] {
        std::vector<InequalityTable> t;
        for (const auto &ref : m.inequalities) t.push_back(catalog_lookup(ref));
        return t;
    });

    result.declared_state = stage("state", [&] { return read_state(m.state_path); });
    result.source = stage("state", [&] { return depolarize_to_physical(result.declared_state); });
    result.model_state = result.declared_state;

    std::error_code ec;
    const bool created_dir = fs::create_directories(m.out_dir, ec);
    if (ec) throw InputError("cannot create " + m.out_dir.string() + ": " + ec.message());
    OutputSet out(m.out_dir);

    try {
        if (m.estimate_state) {
            const SourceConfig cfg{m.pair_rate, m.duration, m.simulation_seed};
            const Simulated sim = stage("simulate", [&] {
                return simulate_source(result.declared_state, result.source, cfg,
                                       tomography_schedule());
            });
            const CountSet counts(sim.records);
            const TomographyResult tomo = stage("tomography", [&] { return estimate_state(counts); });
            result.model_state = tomo.state;
            json t = tomo;
            t["seed"] = m.simulation_seed;
            t["source_noise_weight"] = sim.noise_weight;
            result.tomography = t;
            out.write("tomography.counts.csv", counts_to_csv(counts.records()));
            out.write_json("tomography.json", t);
        }

        for (std::size_t k = 0; k < tables.size(); ++k) {
            const auto &ref = m.inequalities[k];
            const auto &table = tables[k];
            InequalityReport r;
            r.ref = ref;
            r.table = table;
            r.optimized = stage("optimize " + ref, [&] {
                return optimize_settings(table, result.model_state, m.restarts, m.optimizer_seed);
            });
            r.schedule = bell_schedule(table, r.optimized.settings);
            r.simulation_seed = derive_seed(m.simulation_seed, ref);
            const Simulated sim = stage("simulate " + ref, [&] {
                return simulate_source(result.declared_state, result.source,
                                       {m.pair_rate, m.duration, r.simulation_seed}, r.schedule);
            });
            const auto &records = sim.records;
            r.source_noise_weight = sim.noise_weight;
            r.measured = stage("evaluate " + ref, [&] {
                return bell_value_from_counts(table, r.optimized.settings, CountSet(records));
            });
            const Estimate &total = r.measured.total;
            if (total.sigma > 0.0) r.sigma_distance = sigma_distance(total, table.local_bound);
            r.noise_tolerance =
                total.value > 0.0 ? noise_tolerance(table.local_bound, total.value) : 0.0;
            if (table.name.rfind("chained", 0) == 0) {
                r.local_content = stage("epr2 " + ref, [&] {
                    return local_content_bound(table.n, total);
                });
            }
            if (total.value >= table.local_bound) {
                r.randomness = stage("randomness " + ref, [&]() -> std::optional<RandomnessReport> {
                    if (total.value > ns_max(table)) return std::nullopt;
                    return randomness_report(table, total);
                });
            }
            out.write(ref_file_stem(ref) + ".counts.csv", counts_to_csv(records));
            out.write_json(ref_file_stem(ref) + ".json", report_json(r, m));
            result.inequalities.push_back(std::move(r));
        }

        json rows = json::array();
        for (const auto &r : result.inequalities) {
            rows.push_back(summary_row(r, m, m.estimate_state));
        }
        json summary = {{"manifest", m},
                        {"fallback_noise_weight", result.source.noise_weight},
                        {"assumption", "fair sampling of detected events"},
                        {"rows", rows}};
        out.write_json("summary.json", summary);
        out.write("summary.txt", render_summary_table(summary));

        std::vector<std::string> files;
        for (const auto &p : out.written()) files.push_back(p.filename().string());
        out.write_json("metadata.json", {{"tool", "bellkit"},
                                         {"version", kToolVersion},
                                         {"started_utc", started},
                                         {"finished_utc", utc_now()},
                                         {"files", files}});
    } catch (...) {
        out.discard();
        if (created_dir) fs::remove(m.out_dir, ec);
        throw;
    }
    result.written = out.written();
    return result;
}

std::string render_summary_table(const json &summary) {
    const std::vector<std::pair<std::string, std::size_t>> columns = {
        {"inequality", 11}, {"I_L", 6},     {"I_exp", 16},  {"I_tom", 8},  {"#sigma", 8},
        {"p_noise%", 9},    {"p_L_max", 8}, {"P*_NS", 8},   {"P*_Q", 8}};
    std::ostringstream os;
    for (const auto &[name, width] : columns) os << pad(name, width) << ' ';
    os << '\n';
    auto value_or_dash = [](const json &c, int decimals) {
        return c.is_null() ? std::string("-") : fixed(c.at("value").get<double>(), decimals);
    };
    for (const auto &row : summary.at("rows")) {
        const json &exp = row.at("I_exp");
        const std::string measured = fixed(exp.at("value").get<double>(), 3) + " +- " +
                                     fixed(exp.at("sigma").get<double>(), 3);
        const json &noise = row.at("p_noise");
        const std::vector<std::string> cells = {
            row.at("inequality").get<std::string>(),
            fixed(row.at("I_L").at("value").get<double>(), 0),
            measured,
            value_or_dash(row.at("I_tom"), 3),
            value_or_dash(row.at("sigma_distance"), 1),
            fixed(100.0 * noise.at("value").get<double>(), 1),
            value_or_dash(row.at("p_L_max"), 4),
            value_or_dash(row.at("p_star_ns"), 4),
            value_or_dash(row.at("p_star_quantum"), 4)};
        for (std::size_t k = 0; k < cells.size(); ++k) {
            os << pad(cells[k], columns[k].second) << ' ';
        }
        os << '\n';
    }
    os << "fair sampling of detected events assumed\n";
    return os.str();
}

} // namespace bellkit
