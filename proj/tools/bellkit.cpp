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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bellkit/epr2.hpp"
#include "bellkit/error.hpp"
#include "bellkit/experiment.hpp"
#include "bellkit/inequality.hpp"
#include "bellkit/optimizer.hpp"
#include "bellkit/pipeline.hpp"
#include "bellkit/qstate.hpp"
#include "bellkit/randomness.hpp"
#include "bellkit/tomography.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bellkit;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::string out_dir;
    std::string format = "json";
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string &path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

// Writes `content` to <out-dir>/<name> when an output directory was given,
// otherwise to stdout.
void emit(const Globals &g, const std::string &name, const std::string &content) {
    if (g.out_dir.empty()) {
        std::cout << content;
        return;
    }
    fs::create_directories(g.out_dir);
    const fs::path path = fs::path(g.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    std::cerr << "wrote " << path.string() << '\n';
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::string num(double v, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string estimate_text(const Estimate &e) {
    return num(e.value) + " +- " + num(e.sigma);
}

json settings_json(const SettingsVector &s) {
    json j = s;
    std::vector<double> a, b;
    for (const Angle &x : s.alice) a.push_back(polarizer_from_bloch(x));
    for (const Angle &x : s.bob) b.push_back(polarizer_from_bloch(x));
    j["alice_polarizer_deg"] = a;
    j["bob_polarizer_deg"] = b;
    return j;
}

std::string curve_csv(const std::string &header,
                      const std::vector<std::pair<double, double>> &points) {
    std::string out = header + "\n";
    for (const auto &[x, y] : points) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, y);
        out += buf;
    }
    return out;
}

void cmd_catalog_print(const Globals &g) {
    const auto entries = cmd_catalog();
    if (g.format == "json") {
        json j = json::array();
        for (const auto &e : entries) {
            j.push_back({{"ref", e.ref}, {"name", e.name}, {"n", e.n},
                         {"local_bound", e.local_bound},
                         {"bruteforce_bound", e.bruteforce_bound}});
        }
        emit(g, "catalog.json", dump(j));
        return;
    }
    std::ostringstream os;
    if (g.format == "csv") {
        os << "ref,n,local_bound,bruteforce_bound\n";
        for (const auto &e : entries) {
            os << e.ref << ',' << e.n << ',' << e.local_bound << ',' << e.bruteforce_bound << '\n';
        }
        emit(g, "catalog.csv", os.str());
        return;
    }
    os << "ref          N   I_L  brute-force\n";
    for (const auto &e : entries) {
        char line[96];
        std::snprintf(line, sizeof line, "%-11s %2d %5g %12g\n", e.ref.c_str(), e.n,
                      e.local_bound, e.bruteforce_bound);
        os << line;
    }
    emit(g, "catalog.txt", os.str());
}

SettingsVector settings_or_optimize(const std::string &settings_path,
                                    const InequalityTable &table, const XZState &state,
                                    int restarts, std::uint64_t seed) {
    if (!settings_path.empty()) {
        auto s = read_json(settings_path);
        if (s.contains("settings")) s = s.at("settings");
        SettingsVector v = s.get<SettingsVector>();
        v.check_against(table);
        return v;
    }
    return optimize_settings(table, state, restarts, seed).settings;
}

int run(int argc, char **argv) {
    CLI::App app{"Bell-test analysis toolkit: simulate, reconstruct, optimize and certify"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Random seed for simulation and optimizer restarts");
    app.add_option("--out-dir", g.out_dir, "Write outputs here instead of stdout");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    auto *catalog = app.add_subcommand("catalog", "List built-in inequalities and verify local bounds");

    std::string state_path, ineq_ref, settings_path, counts_path;
    double pair_rate = 4200, duration = 20;
    int restarts = 32;
    bool tomography_run = false, depolarize = false;

    auto *simulate = app.add_subcommand("simulate", "Simulate coincidence counts (CSV)");
    simulate->add_option("--state", state_path, "State JSON")->required()->check(CLI::ExistingFile);
    auto *sim_ineq = simulate->add_option("--inequality", ineq_ref, "Inequality to measure");
    auto *sim_tomo = simulate->add_flag("--tomography", tomography_run, "Measure the tomography bases");
    sim_ineq->excludes(sim_tomo);
    simulate->add_option("--settings", settings_path, "Settings JSON (default: optimize)")
        ->check(CLI::ExistingFile);
    simulate->add_option("--pair-rate", pair_rate, "Detected pairs per second");
    simulate->add_option("--duration", duration, "Seconds per polarizer pair");
    simulate->add_option("--restarts", restarts, "Optimizer restarts when no settings are given");
    simulate->add_flag("--depolarize", depolarize,
                       "Mix in the least white noise that makes the state physical");

    auto *schedule = app.add_subcommand("schedule", "List the polarizer pairs a measurement needs");
    schedule->add_option("--inequality", ineq_ref, "Inequality")->excludes(
        schedule->add_flag("--tomography", tomography_run, "Tomography bases"));
    schedule->add_option("--settings", settings_path, "Settings JSON")->check(CLI::ExistingFile);
    schedule->add_option("--state", state_path, "State to optimize on when no settings are given")
        ->check(CLI::ExistingFile);

    auto *tomography = app.add_subcommand("tomography", "Reconstruct the state from counts");
    tomography->add_option("--counts", counts_path, "Counts CSV")->required()->check(CLI::ExistingFile);

    auto *optimize = app.add_subcommand("optimize", "Find measurement settings maximizing violation");
    optimize->add_option("--state", state_path, "State JSON")->required()->check(CLI::ExistingFile);
    optimize->add_option("--inequality", ineq_ref, "Inequality")->required();
    optimize->add_option("--restarts", restarts, "Random restarts");

    auto *evaluate = app.add_subcommand("evaluate", "Bell value from counts or from a state");
    evaluate->add_option("--inequality", ineq_ref, "Inequality")->required();
    evaluate->add_option("--settings", settings_path, "Settings JSON")->required()->check(CLI::ExistingFile);
    auto *ev_counts = evaluate->add_option("--counts", counts_path, "Counts CSV")->check(CLI::ExistingFile);
    auto *ev_state = evaluate->add_option("--state", state_path, "State JSON")->check(CLI::ExistingFile);
    ev_counts->excludes(ev_state);

    int n = 0, n_min = 2, n_max = 50, points = 21;
    double value = 0, sigma = 0, visibility = 1;
    auto *epr2 = app.add_subcommand("epr2", "Local-content bound from a chained-inequality value");
    epr2->add_option("--n", n, "Settings per party")->required();
    epr2->add_option("--observed,--value", value, "Observed value")->required();
    epr2->add_option("--sigma", sigma, "One-sigma uncertainty");

    auto *epr2_curve = app.add_subcommand("epr2-curve", "p_L max versus N for a Werner state (CSV)");
    epr2_curve->add_option("--visibility", visibility, "Werner visibility")->required();
    epr2_curve->add_option("--n-min", n_min, "Smallest N");
    epr2_curve->add_option("--n-max", n_max, "Largest N");

    auto *randomness = app.add_subcommand("randomness", "Certified marginal bound and min-entropy");
    randomness->add_option("--inequality", ineq_ref, "Inequality")->required();
    randomness->add_option("--observed,--value", value, "Observed value")->required();
    randomness->add_option("--sigma", sigma, "One-sigma uncertainty");

    auto *randomness_curve_cmd =
        app.add_subcommand("randomness-curve", "No-signaling bound across the violation range (CSV)");
    randomness_curve_cmd->add_option("--inequality", ineq_ref, "Inequality")->required();
    randomness_curve_cmd->add_option("--points", points, "Number of grid points");

    std::string manifest_path;
    auto *pipeline = app.add_subcommand("pipeline", "Run the full analysis from a manifest");
    pipeline->add_option("--manifest", manifest_path, "Manifest JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (catalog->parsed()) {
        cmd_catalog_print(g);
    } else if (simulate->parsed() || schedule->parsed()) {
        if (!tomography_run && ineq_ref.empty()) {
            throw InputError("choose --inequality or --tomography");
        }
        std::vector<PolarizerPair> pairs;
        XZState state;
        if (!state_path.empty()) state = read_json(state_path).get<XZState>();
        if (tomography_run) {
            pairs = tomography_schedule();
        } else {
            if (state_path.empty() && settings_path.empty()) {
                throw InputError("give --settings or a --state to optimize on");
            }
            const auto table = catalog_lookup(ineq_ref);
            pairs = bell_schedule(table, settings_or_optimize(settings_path, table, state,
                                                              restarts, g.seed));
        }
        if (schedule->parsed()) {
            std::ostringstream os;
            os << "alice_deg,bob_deg\n";
            for (const auto &p : pairs) os << p.alice_deg << ',' << p.bob_deg << '\n';
            emit(g, "schedule.csv", os.str());
        } else {
            if (depolarize) state = depolarize_to_physical(state).state;
            const auto records = simulate_counts(state, {pair_rate, duration, g.seed}, pairs);
            emit(g, "counts.csv", counts_to_csv(records));
        }
    } else if (tomography->parsed()) {
        const auto result = estimate_state(CountSet(counts_from_csv(read_file(counts_path))));
        if (!g.out_dir.empty()) {
            emit(g, "state.json", dump(json(result.state)));
            emit(g, "state.sigmas.json", dump(sigmas_to_json(result.sigmas)));
        } else if (g.format == "table") {
            const auto c = result.state.coefficients();
            for (std::size_t k = 0; k < c.size(); ++k) {
                std::cout << kCoefficientNames[k] << "  " << num(c[k]) << " +- "
                          << num(result.sigmas[k]) << '\n';
            }
            std::cout << "physical: " << (result.physical ? "yes" : "no")
                      << (result.clamped ? " (clamped)" : "") << '\n';
        } else {
            std::cout << dump(json(result));
        }
        if (!result.physical) {
            std::cerr << "warning: reconstructed coefficients are not a physical state\n";
        }
    } else if (optimize->parsed()) {
        const auto table = catalog_lookup(ineq_ref);
        const auto state = read_json(state_path).get<XZState>();
        const auto r = optimize_settings(table, state, restarts, g.seed);
        const json j = {{"inequality", ineq_ref},
                        {"value", r.value},
                        {"local_bound", table.local_bound},
                        {"restarts_used", r.restarts_used},
                        {"converged", r.converged},
                        {"settings", settings_json(r.settings)}};
        if (g.format == "table") {
            std::ostringstream os;
            os << ineq_ref << "  value " << num(r.value) << "  (I_L " << table.local_bound << ")\n";
            for (std::size_t i = 0; i < r.settings.alice.size(); ++i) {
                os << "  A" << i + 1 << " " << num(r.settings.alice[i].degrees(), 2) << " deg  B"
                   << i + 1 << " " << num(r.settings.bob[i].degrees(), 2) << " deg\n";
            }
            emit(g, "settings.txt", os.str());
        } else {
            emit(g, "settings.json", dump(j));
        }
    } else if (evaluate->parsed()) {
        const auto table = catalog_lookup(ineq_ref);
        auto s = read_json(settings_path);
        if (s.contains("settings")) s = s.at("settings");
        const auto settings = s.get<SettingsVector>();
        settings.check_against(table);
        json j = {{"inequality", ineq_ref}, {"local_bound", table.local_bound}};
        if (!counts_path.empty()) {
            const auto v = bell_value_from_counts(
                table, settings, CountSet(counts_from_csv(read_file(counts_path))));
            j["value"] = v.total;
            json terms = json::object();
            for (std::size_t k = 0; k < v.terms.size(); ++k) terms[v.term_names[k]] = v.terms[k];
            j["terms"] = terms;
            if (v.total.sigma > 0) j["sigma_distance"] = sigma_distance(v.total, table.local_bound);
            j["noise_tolerance"] = v.total.value > 0 ? noise_tolerance(table.local_bound, v.total.value) : 0.0;
        } else if (!state_path.empty()) {
            j["value"] = bellkit::evaluate(table, read_json(state_path).get<XZState>(), settings);
        } else {
            throw InputError("give --counts or --state");
        }
        emit(g, "evaluation.json", dump(j));
    } else if (epr2->parsed()) {
        const auto b = local_content_bound(n, {value, sigma});
        if (g.format == "table") {
            std::cout << "N=" << n << "  p_L_max " << estimate_text(b.p_local_max)
                      << (b.clamped ? " (clamped)" : "") << '\n';
        } else {
            emit(g, "epr2.json", dump(json(b)));
        }
    } else if (epr2_curve->parsed()) {
        std::vector<std::pair<double, double>> pts;
        for (const auto &[k, p] : werner_plmax_curve(visibility, n_min, n_max)) pts.emplace_back(k, p);
        std::string csv = "N,p_L_max\n";
        for (const auto &[k, p] : pts) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%d,%.17g\n", static_cast<int>(k), p);
            csv += buf;
        }
        emit(g, "epr2_curve.csv", csv);
    } else if (randomness->parsed()) {
        const auto r = randomness_report(catalog_lookup(ineq_ref), {value, sigma});
        if (g.format == "table") {
            std::cout << "P*_NS  " << estimate_text(r.p_star_ns) << "   H_min " << estimate_text(r.hmin_ns) << '\n';
            if (r.p_star_quantum) {
                std::cout << "P*_Q   " << estimate_text(*r.p_star_quantum) << "   H_min "
                          << estimate_text(*r.hmin_quantum) << '\n';
            }
            std::cout << "assumes fair sampling of detected events\n";
        } else {
            emit(g, "randomness.json", dump(json(r)));
        }
    } else if (randomness_curve_cmd->parsed()) {
        emit(g, "randomness_curve.csv",
             curve_csv("observed,p_star_ns", randomness_curve(catalog_lookup(ineq_ref), points)));
    } else if (pipeline->parsed()) {
        auto m = load_manifest(manifest_path);
        if (!g.out_dir.empty()) m.out_dir = g.out_dir;
        if (app.count("--seed") > 0) m.simulation_seed = g.seed;
        const auto result = cmd_pipeline(m);
        std::cout << read_file((m.out_dir / "summary.txt").string());
        std::cerr << "wrote " << result.written.size() << " files to " << m.out_dir.string() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const IncompleteDataError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const fs::filesystem_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
