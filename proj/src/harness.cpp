// Copyright 2026 The ldaqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldaqc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "ldaqc/csv.hpp"
#include "ldaqc/error.hpp"
#include "ldaqc/metrics.hpp"
#include "ldaqc/mis.hpp"
#include "ldaqc/random.hpp"

namespace ldaqc {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Protocol protocol_from_string(const std::string& name) {
    if (name == "traditional") return Protocol::traditional;
    if (name == "local_degree") return Protocol::local_degree;
    fail(ErrorCode::invalid_argument, "unknown protocol '" + name + "'");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
            fail(ErrorCode::invalid_argument, "unknown config key '" + where + key + "'");
        }
    }
}

template <class T>
void read_field(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("config field '") + key + "': " + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot write " + path);
    return out;
}

json fit_json(const std::optional<FitResult>& fit) {
    if (!fit) return nullptr;
    return json{{"scale", fit->scale},
                {"b", fit->exponent},
                {"residual_norm", fit->residual_norm},
                {"samples", fit->samples},
                {"excluded", fit->excluded}};
}

json histogram_json(const Histogram& h) {
    return json{{"edges", h.edges}, {"counts", h.counts}, {"mean", h.mean}};
}

std::size_t resolve_workers(std::size_t requested) {
    if (const char* env = std::getenv("LDAQC_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::string version_string() { return std::string("ldaqc ") + LDAQC_VERSION; }

// ---------------------------------------------------------------------------
// Config

std::string config_to_json(const ExperimentConfig& c) {
    json ens{{"rows", c.ensemble.rows},
             {"cols", c.ensemble.cols},
             {"hole_probability", c.ensemble.hole_probability},
             {"count", c.ensemble.count},
             {"master_seed", c.ensemble.master_seed},
             {"min_vertices", c.ensemble.min_vertices},
             {"max_vertices", c.ensemble.max_vertices},
             {"hp_window", nullptr}};
    if (c.ensemble.hp_window) ens["hp_window"] = {c.ensemble.hp_window->first, c.ensemble.hp_window->second};
    json gap_protocols = json::array();
    for (Protocol p : c.gap_protocols) gap_protocols.push_back(to_string(p));
    json j{{"schema_version", kConfigSchemaVersion},
           {"ensemble", ens},
           {"family", to_string(c.family)},
           {"safety", c.safety},
           {"omega_max", c.omega_max},
           {"delta0_ratio", c.delta0_ratio},
           {"c6", c.c6},
           {"envelope", to_string(c.envelope)},
           {"ramp_fraction", c.ramp_fraction},
           {"tf_list", c.tf_list},
           {"primary_tf", c.primary_tf},
           {"integrator", {{"dt", c.dt}, {"norm_tolerance", c.norm_tolerance}}},
           {"gap",
            {{"protocols", gap_protocols}, {"grid", c.gap_grid}, {"levels", c.gap_mis_levels ? "mis_count" : "one"}}},
           {"workers", c.workers}};
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorCode::invalid_argument, "config must be a JSON object");
    if (!j.contains("schema_version") || j["schema_version"] != kConfigSchemaVersion) {
        fail(ErrorCode::invalid_argument, "config schema_version must be " + std::to_string(kConfigSchemaVersion));
    }
    reject_unknown_keys(j,
                        {"schema_version", "ensemble", "family", "safety", "omega_max", "delta0_ratio", "c6",
                         "envelope", "ramp_fraction", "tf_list", "primary_tf", "integrator", "gap", "workers"},
                        "");
    ExperimentConfig c;
    if (j.contains("ensemble")) {
        const json& e = j["ensemble"];
        reject_unknown_keys(e,
                            {"rows", "cols", "hole_probability", "count", "master_seed", "min_vertices",
                             "max_vertices", "hp_window"},
                            "ensemble.");
        read_field(e, "rows", c.ensemble.rows);
        read_field(e, "cols", c.ensemble.cols);
        read_field(e, "hole_probability", c.ensemble.hole_probability);
        read_field(e, "count", c.ensemble.count);
        read_field(e, "master_seed", c.ensemble.master_seed);
        read_field(e, "min_vertices", c.ensemble.min_vertices);
        read_field(e, "max_vertices", c.ensemble.max_vertices);
        if (e.contains("hp_window") && !e["hp_window"].is_null()) {
            std::vector<double> w;
            read_field(e, "hp_window", w);
            if (w.size() != 2) fail(ErrorCode::invalid_argument, "hp_window must be [lo, hi]");
            c.ensemble.hp_window = std::pair{w[0], w[1]};
        }
    }
    if (j.contains("family")) c.family = profile_kind_from_string(j["family"].get<std::string>());
    read_field(j, "safety", c.safety);
    read_field(j, "omega_max", c.omega_max);
    read_field(j, "delta0_ratio", c.delta0_ratio);
    read_field(j, "c6", c.c6);
    if (j.contains("envelope")) c.envelope = envelope_from_string(j["envelope"].get<std::string>());
    read_field(j, "ramp_fraction", c.ramp_fraction);
    read_field(j, "tf_list", c.tf_list);
    read_field(j, "primary_tf", c.primary_tf);
    if (j.contains("integrator")) {
        const json& i = j["integrator"];
        reject_unknown_keys(i, {"dt", "norm_tolerance"}, "integrator.");
        read_field(i, "dt", c.dt);
        read_field(i, "norm_tolerance", c.norm_tolerance);
    }
    if (j.contains("gap")) {
        const json& g = j["gap"];
        reject_unknown_keys(g, {"protocols", "grid", "levels"}, "gap.");
        std::vector<std::string> names;
        read_field(g, "protocols", names);
        c.gap_protocols.clear();
        for (const auto& name : names) c.gap_protocols.push_back(protocol_from_string(name));
        read_field(g, "grid", c.gap_grid);
        std::string levels = c.gap_mis_levels ? "mis_count" : "one";
        read_field(g, "levels", levels);
        if (levels != "mis_count" && levels != "one") {
            fail(ErrorCode::invalid_argument, "gap.levels must be 'mis_count' or 'one'");
        }
        c.gap_mis_levels = levels == "mis_count";
    }
    read_field(j, "workers", c.workers);
    validate(c);
    return c;
}

void validate(const ExperimentConfig& c) {
    const auto require = [](bool ok, const std::string& msg) {
        if (!ok) fail(ErrorCode::invalid_argument, msg);
    };
    require(c.ensemble.count > 0, "ensemble.count must be positive");
    require(c.ensemble.rows > 0 && c.ensemble.cols > 0, "grid dimensions must be positive");
    require(c.ensemble.hole_probability >= 0.0 && c.ensemble.hole_probability < 1.0,
            "hole_probability must lie in [0, 1)");
    require(c.ensemble.min_vertices >= 1 && c.ensemble.min_vertices <= c.ensemble.max_vertices,
            "vertex range is empty");
    require(c.ensemble.max_vertices <= kDefaultSimulationCap, "max_vertices exceeds the simulation cap");
    require(c.ensemble.min_vertices <= static_cast<std::size_t>(c.ensemble.rows * c.ensemble.cols),
            "grid too small for min_vertices");
    if (c.ensemble.hp_window) {
        require(c.ensemble.hp_window->first < c.ensemble.hp_window->second, "hp_window must satisfy lo < hi");
    }
    require(c.safety > 0.0 && c.safety < 1.0, "safety must lie in (0, 1)");
    require(c.omega_max > 0.0, "omega_max must be positive");
    require(c.delta0_ratio > 0.0, "delta0_ratio must be positive");
    require(c.c6 > 0.0, "c6 must be positive");
    require(!c.tf_list.empty(), "tf_list is empty");
    for (double tf : c.tf_list) require(tf > 0.0, "t_f values must be positive");
    require(std::find(c.tf_list.begin(), c.tf_list.end(), c.primary_tf) != c.tf_list.end(),
            "primary_tf must appear in tf_list");
    require(c.dt > 0.0, "integrator.dt must be positive");
    require(c.norm_tolerance > 0.0, "integrator.norm_tolerance must be positive");
    require(c.gap_grid >= 3, "gap.grid needs at least 3 points");
    if (!c.gap_protocols.empty()) require(c.ensemble.max_vertices <= 12, "gap computation is limited to 12 atoms");
}

// ---------------------------------------------------------------------------
// Ensemble

std::vector<Instance> generate_ensemble(const EnsembleSpec& spec) {
    if (spec.count == 0) fail(ErrorCode::invalid_argument, "ensemble.count must be positive");
    std::vector<Instance> out;
    const std::uint64_t max_draws = 1000 * static_cast<std::uint64_t>(spec.count) + 10000;
    for (std::uint64_t j = 0; out.size() < spec.count; ++j) {
        if (j >= max_draws) fail(ErrorCode::invalid_argument, "ensemble filters reject almost every draw");
        const std::uint64_t seed = splitmix64(spec.master_seed + j);
        Graph g;
        try {
            g = build_kings_graph(spec.rows, spec.cols, spec.hole_probability, seed);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::empty_instance) continue;
            throw;
        }
        if (g.size() < spec.min_vertices || g.size() > spec.max_vertices) continue;
        if (spec.hp_window) {
            const double hp = hardness_traditional(enumerate_independent_sets(g));
            if (!(hp > spec.hp_window->first && hp <= spec.hp_window->second)) continue;
        }
        out.push_back({out.size(), seed, std::move(g)});
    }
    return out;
}

InstanceOutcome run_instance(const ExperimentConfig& config, const Instance& instance) {
    InstanceOutcome outcome;
    outcome.timing.instance = instance.index;
    const Graph& g = instance.graph;
    const double delta0 = config.delta0();

    auto clock = std::chrono::steady_clock::now();
    const IsCatalog catalog = enumerate_independent_sets(g, kDefaultSimulationCap);
    const DetuningProfile profile =
        engineer_detunings(g, ProfileFamily::from_kind(config.family), delta0, config.safety);
    const RydbergModel model = make_rydberg_model(g, config.c6);
    if (!check_blockade(profile, model.u_min())) {
        outcome.skipped = "blockade check failed";
        return outcome;
    }
    const double hp_trad = hardness_traditional(catalog);
    const SpectrumRecord spectrum = final_band_spectrum(catalog, profile);
    const double hp_mult = hardness_local_degree(catalog, spectrum, delta0, HardnessVariant::multiplicity).value;
    const double hp_bin = hardness_local_degree(catalog, spectrum, delta0, HardnessVariant::binary).value;
    outcome.timing.catalog_seconds = seconds_since(clock);

    const auto schedule = [&](Protocol p, double tf_units) {
        const double t_f = config.t_f(tf_units);
        PulseSchedule s = p == Protocol::traditional
                              ? PulseSchedule::traditional(g.size(), t_f, config.omega_max, delta0, config.envelope)
                              : PulseSchedule::local_degree(profile, t_f, config.omega_max, config.envelope);
        s.ramp_fraction = config.ramp_fraction;
        return s;
    };

    // The spectrum along s = t / t_f does not depend on t_f, so one gap per
    // protocol serves every row.
    clock = std::chrono::steady_clock::now();
    std::map<Protocol, GapResult> gaps;
    for (Protocol p : config.gap_protocols) {
        GapOptions opts;
        opts.grid_points = config.gap_grid;
        opts.ground_levels = config.gap_mis_levels ? catalog.mis_count : 1;
        gaps[p] = minimal_gap(model, schedule(p, config.primary_tf), opts);
    }
    outcome.timing.gap_seconds = seconds_since(clock);

    IntegratorConfig integrator;
    integrator.dt = config.dt;
    integrator.norm_tolerance = config.norm_tolerance;

    clock = std::chrono::steady_clock::now();
    for (double tf : config.tf_list) {
        ExperimentRecord rec[2];
        const Protocol protocols[2] = {Protocol::traditional, Protocol::local_degree};
        for (int k = 0; k < 2; ++k) {
            ExperimentRecord& r = rec[k];
            r.instance = instance.index;
            r.seed = instance.seed;
            r.n = g.size();
            r.edges = g.edges().size();
            r.mis_size = catalog.mis_size;
            r.mis_count = catalog.mis_count;
            r.protocol = protocols[k];
            r.tf_units = tf;
            r.hp_trad = hp_trad;
            r.hp_ld_multiplicity = hp_mult;
            r.hp_ld_binary = hp_bin;
            r.hp_ratio = hp_ratio(hp_trad, hp_mult);
            r.k_star = profile.k_star;
            r.a_star = profile.a_star;
            r.a_used = profile.a_used;
            r.delta_min = kNaN;
            if (auto it = gaps.find(protocols[k]); it != gaps.end()) {
                r.delta_min = it->second.delta_min;
                r.gap_degenerate = it->second.degenerate;
            }
            try {
                const EvolutionResult res = evolve(model, schedule(protocols[k], tf), integrator);
                r.p_mis = success_probability(res.state, catalog);
                r.r_ratio = approximation_ratio(res.state, catalog);
                r.spm = spm(r.p_mis);
                r.norm_error = res.norm_error;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::integrator_failure) throw;
                r.status = "integrator_failure";
                r.p_mis = r.r_ratio = r.spm = kNaN;
                outcome.failed = true;
            }
        }
        const double ratio = (rec[0].status == "ok" && rec[1].status == "ok")
                                 ? log_error_ratio(rec[0].p_mis, rec[1].p_mis)
                                 : kNaN;
        for (auto& r : rec) {
            r.log_error_ratio = ratio;
            outcome.records.push_back(std::move(r));
        }
    }
    outcome.timing.evolve_seconds = seconds_since(clock);
    return outcome;
}

EnsembleRun run_ensemble(const ExperimentConfig& config, const std::vector<Instance>& instances) {
    validate(config);
    if (instances.empty()) fail(ErrorCode::invalid_argument, "ensemble has no instances");

    std::vector<InstanceOutcome> outcomes(instances.size());
    std::vector<std::string> errors(instances.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            try {
                outcomes[i] = run_instance(config, instances[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const std::size_t workers = std::min(resolve_workers(config.workers), instances.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    EnsembleRun run;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!errors[i].empty()) {
            run.skipped.emplace_back(instances[i].index, "error: " + errors[i]);
            ++run.failed;
            continue;
        }
        auto& o = outcomes[i];
        if (!o.skipped.empty()) run.skipped.emplace_back(instances[i].index, o.skipped);
        if (o.failed) ++run.failed;
        run.timings.push_back(o.timing);
        for (auto& r : o.records) run.records.push_back(std::move(r));
    }
    return run;
}

// ---------------------------------------------------------------------------
// Records

std::vector<std::string> record_header() {
    return {"instance",   "seed",     "n",         "edges",          "mis_size",       "mis_count",
            "protocol",   "tf_units", "p_mis",     "r_ratio",        "spm",            "hp_trad",
            "hp_ld_multiplicity",     "hp_ld_binary", "hp_ratio",    "log_error_ratio", "delta_min",
            "gap_degenerate",         "k_star",    "a_star",         "a_used",         "norm_error",
            "status"};
}

void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    auto out = open_output(path);
    write_csv_row(out, record_header());
    for (const auto& r : records) {
        write_csv_row(out, {std::to_string(r.instance), std::to_string(r.seed), std::to_string(r.n),
                            std::to_string(r.edges), std::to_string(r.mis_size), std::to_string(r.mis_count),
                            to_string(r.protocol), format_double(r.tf_units), format_double(r.p_mis),
                            format_double(r.r_ratio), format_double(r.spm), format_double(r.hp_trad),
                            format_double(r.hp_ld_multiplicity), format_double(r.hp_ld_binary),
                            format_double(r.hp_ratio), format_double(r.log_error_ratio),
                            format_double(r.delta_min), r.gap_degenerate ? "1" : "0", std::to_string(r.k_star),
                            format_double(r.a_star), format_double(r.a_used), format_double(r.norm_error),
                            r.status});
    }
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

std::vector<ExperimentRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot read " + path);
    const auto rows = parse_csv(in);
    if (rows.empty()) fail(ErrorCode::io, path + " is empty");
    const auto header = record_header();
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < rows[0].size(); ++i) col[rows[0][i]] = i;
    for (const auto& name : header) {
        if (!col.count(name)) fail(ErrorCode::io, path + " lacks column '" + name + "'");
    }
    std::vector<ExperimentRecord> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& row = rows[k];
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != rows[0].size()) {
            fail(ErrorCode::io, path + ": row " + std::to_string(k + 1) + " has the wrong field count");
        }
        const auto f = [&](const char* name) -> const std::string& { return row[col[name]]; };
        const auto u = [&](const char* name) {
            try {
                return std::stoull(f(name));
            } catch (const std::exception&) {
                fail(ErrorCode::io, path + ": bad integer in column " + name);
            }
        };
        ExperimentRecord r;
        r.instance = u("instance");
        r.seed = u("seed");
        r.n = u("n");
        r.edges = u("edges");
        r.mis_size = static_cast<int>(u("mis_size"));
        r.mis_count = u("mis_count");
        r.protocol = protocol_from_string(f("protocol"));
        r.tf_units = parse_double(f("tf_units"));
        r.p_mis = parse_double(f("p_mis"));
        r.r_ratio = parse_double(f("r_ratio"));
        r.spm = parse_double(f("spm"));
        r.hp_trad = parse_double(f("hp_trad"));
        r.hp_ld_multiplicity = parse_double(f("hp_ld_multiplicity"));
        r.hp_ld_binary = parse_double(f("hp_ld_binary"));
        r.hp_ratio = parse_double(f("hp_ratio"));
        r.log_error_ratio = parse_double(f("log_error_ratio"));
        r.delta_min = parse_double(f("delta_min"));
        r.gap_degenerate = f("gap_degenerate") == "1";
        r.k_star = static_cast<int>(u("k_star"));
        r.a_star = parse_double(f("a_star"));
        r.a_used = parse_double(f("a_used"));
        r.norm_error = parse_double(f("norm_error"));
        r.status = f("status");
        out.push_back(std::move(r));
    }
    return out;
}

void write_timings_csv(const std::string& path, const std::vector<InstanceTiming>& timings) {
    auto out = open_output(path);
    write_csv_row(out, {"instance", "catalog_seconds", "gap_seconds", "evolve_seconds"});
    for (const auto& t : timings) {
        write_csv_row(out, {std::to_string(t.instance), format_double(t.catalog_seconds),
                            format_double(t.gap_seconds), format_double(t.evolve_seconds)});
    }
}

// ---------------------------------------------------------------------------
// Summary

Histogram make_histogram(const std::vector<double>& values, std::size_t bins) {
    Histogram h;
    if (values.empty() || bins == 0) return h;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(lo + width * static_cast<double>(b));
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    double sum = 0.0;
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        ++h.counts[std::min(b, bins - 1)];
        sum += v;
    }
    h.mean = sum / static_cast<double>(values.size());
    return h;
}

Summary summarize(const std::vector<ExperimentRecord>& records, double primary_tf) {
    Summary s;
    s.version = version_string();
    s.primary_tf = primary_tf;

    // (t_f, instance) -> {traditional, local_degree}
    std::map<std::pair<double, std::size_t>, std::pair<const ExperimentRecord*, const ExperimentRecord*>> pairs;
    std::set<std::size_t> instances;
    for (const auto& r : records) {
        if (r.status != "ok") continue;
        auto& slot = pairs[{r.tf_units, r.instance}];
        (r.protocol == Protocol::traditional ? slot.first : slot.second) = &r;
        instances.insert(r.instance);
    }
    s.instances = instances.size();

    std::map<double, FidelityRow> by_tf;
    std::vector<const ExperimentRecord*> prim_trad;
    std::vector<const ExperimentRecord*> prim_ld;
    for (const auto& [key, pr] : pairs) {
        if (!pr.first || !pr.second) continue;
        FidelityRow& row = by_tf[key.first];
        row.tf_units = key.first;
        ++row.instances;
        row.p_trad += pr.first->p_mis;
        row.p_ld += pr.second->p_mis;
        row.error_r_trad += 1.0 - pr.first->r_ratio;
        row.error_r_ld += 1.0 - pr.second->r_ratio;
        row.log_error_ratio += pr.second->log_error_ratio;
        if (key.first == primary_tf) {
            prim_trad.push_back(pr.first);
            prim_ld.push_back(pr.second);
        }
    }
    for (auto& [tf, row] : by_tf) {
        const auto n = static_cast<double>(row.instances);
        row.p_trad /= n;
        row.p_ld /= n;
        row.error_r_trad /= n;
        row.error_r_ld /= n;
        row.log_error_ratio /= n;
        s.fidelity.push_back(row);
    }

    const auto column = [](const std::vector<const ExperimentRecord*>& rs, double ExperimentRecord::*field) {
        std::vector<double> v;
        for (const auto* r : rs) v.push_back(r->*field);
        return v;
    };
    const auto attempt = [&](const std::string& what, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::undefined_metric) throw;
            s.notes.push_back(what + ": " + e.what());
        }
    };

    if (prim_trad.empty()) {
        s.notes.push_back("no paired records at the primary t_f");
        return s;
    }
    const auto hp_trad = column(prim_trad, &ExperimentRecord::hp_trad);
    const auto hp_ld = column(prim_ld, &ExperimentRecord::hp_ld_multiplicity);
    const auto spm_trad = column(prim_trad, &ExperimentRecord::spm);
    const auto spm_ld = column(prim_ld, &ExperimentRecord::spm);
    attempt("fit_trad", [&] { s.fit_trad = fit_power_law(hp_trad, spm_trad); });
    attempt("fit_ld", [&] { s.fit_ld = fit_power_law(hp_trad, spm_ld); });
    attempt("fit_ld_hp_ld", [&] { s.fit_ld_hp_ld = fit_power_law(hp_ld, spm_ld); });
    attempt("spm_exponent", [&] { s.spm_exponent = fit_exponent(spm_ld, spm_trad); });

    s.error_ratio_histogram = make_histogram(column(prim_ld, &ExperimentRecord::log_error_ratio), 20);
    s.hp_ratio_histogram = make_histogram(column(prim_ld, &ExperimentRecord::hp_ratio), 20);

    // Gap statistics prefer the LD protocol's gap, since HP_LD describes
    // the LD Hamiltonian.
    for (Protocol p : {Protocol::local_degree, Protocol::traditional}) {
        const auto& rs = p == Protocol::local_degree ? prim_ld : prim_trad;
        std::vector<const ExperimentRecord*> with_gap;
        for (const auto* r : rs) {
            if (std::isfinite(r->delta_min) && r->delta_min > 0.0) with_gap.push_back(r);
        }
        if (with_gap.empty()) continue;
        s.gap_protocol = p;
        s.gap_samples = with_gap.size();
        const auto gap = column(with_gap, &ExperimentRecord::delta_min);
        for (auto [name, field] : {std::pair{"hp_trad", &ExperimentRecord::hp_trad},
                                   std::pair{"hp_ld_binary", &ExperimentRecord::hp_ld_binary},
                                   std::pair{"hp_ld_multiplicity", &ExperimentRecord::hp_ld_multiplicity}}) {
            const auto x = column(with_gap, field);
            CorrelationRow row;
            row.candidate = name;
            attempt(std::string("correlation ") + name, [&] {
                row.spearman = spearman(x, gap);
                row.pearson_log_gap = pearson_log_gap(x, gap);
                row.distance_correlation = distance_correlation(x, gap);
                row.mutual_information = mutual_information(x, gap);
                s.correlations.push_back(row);
            });
        }
        attempt("gap_fit", [&] { s.gap_fit = fit_power_law(column(with_gap, &ExperimentRecord::hp_ld_multiplicity), gap); });
        break;
    }
    return s;
}

std::string summary_to_json(const Summary& s) {
    json fidelity = json::array();
    for (const auto& r : s.fidelity) {
        fidelity.push_back({{"tf_units", r.tf_units},
                            {"instances", r.instances},
                            {"p_mis_traditional", r.p_trad},
                            {"p_mis_local_degree", r.p_ld},
                            {"error_r_traditional", r.error_r_trad},
                            {"error_r_local_degree", r.error_r_ld},
                            {"mean_log_error_ratio", r.log_error_ratio}});
    }
    json corr = json::array();
    for (const auto& c : s.correlations) {
        corr.push_back({{"candidate", c.candidate},
                        {"spearman", c.spearman},
                        {"pearson_log_gap", c.pearson_log_gap},
                        {"distance_correlation", c.distance_correlation},
                        {"mutual_information", c.mutual_information}});
    }
    json gap_fit = fit_json(s.gap_fit);
    if (s.gap_fit) gap_fit["slope"] = -s.gap_fit->exponent;
    json spm_exp = fit_json(s.spm_exponent);
    if (s.spm_exponent) {
        spm_exp.erase("b");
        spm_exp["slope"] = s.spm_exponent->exponent;
    }
    json j{{"version", s.version},
           {"instances", s.instances},
           {"primary_tf_units", s.primary_tf},
           {"fidelity_vs_tf", fidelity},
           {"spm_fit_traditional", fit_json(s.fit_trad)},
           {"spm_fit_local_degree", fit_json(s.fit_ld)},
           {"spm_fit_local_degree_vs_hp_ld", fit_json(s.fit_ld_hp_ld)},
           {"spm_ld_vs_spm_trad", spm_exp},
           {"gap_protocol", s.gap_samples ? json(to_string(s.gap_protocol)) : json(nullptr)},
           {"gap_samples", s.gap_samples},
           {"correlations", corr},
           {"gap_fit", gap_fit},
           {"log_error_ratio_histogram", histogram_json(s.error_ratio_histogram)},
           {"hp_ratio_histogram", histogram_json(s.hp_ratio_histogram)},
           {"notes", s.notes}};
    return j.dump(2) + "\n";
}

void write_report(const Summary& s, const std::vector<ExperimentRecord>& records, const std::string& dir) {
    fs::create_directories(dir);
    {
        auto out = open_output((fs::path(dir) / "summary.json").string());
        out << summary_to_json(s);
    }
    {
        auto out = open_output((fs::path(dir) / "fidelity_vs_tf.csv").string());
        write_csv_row(out, {"tf_units", "instances", "p_mis_traditional", "p_mis_local_degree",
                            "error_r_traditional", "error_r_local_degree", "mean_log_error_ratio"});
        for (const auto& r : s.fidelity) {
            write_csv_row(out, {format_double(r.tf_units), std::to_string(r.instances), format_double(r.p_trad),
                                format_double(r.p_ld), format_double(r.error_r_trad), format_double(r.error_r_ld),
                                format_double(r.log_error_ratio)});
        }
    }
    {
        auto scatter = open_output((fs::path(dir) / "spm_vs_hp.csv").string());
        auto gaps = open_output((fs::path(dir) / "gap_vs_hp.csv").string());
        write_csv_row(scatter, {"instance", "protocol", "hp_trad", "hp_ld_multiplicity", "spm"});
        write_csv_row(gaps, {"instance", "protocol", "hp_trad", "hp_ld_binary", "hp_ld_multiplicity", "delta_min"});
        for (const auto& r : records) {
            if (r.status != "ok" || r.tf_units != s.primary_tf) continue;
            write_csv_row(scatter, {std::to_string(r.instance), to_string(r.protocol), format_double(r.hp_trad),
                                    format_double(r.hp_ld_multiplicity), format_double(r.spm)});
            if (std::isfinite(r.delta_min)) {
                write_csv_row(gaps, {std::to_string(r.instance), to_string(r.protocol), format_double(r.hp_trad),
                                     format_double(r.hp_ld_binary), format_double(r.hp_ld_multiplicity),
                                     format_double(r.delta_min)});
            }
        }
    }
    {
        auto out = open_output((fs::path(dir) / "correlations.csv").string());
        write_csv_row(out, {"candidate", "spearman", "pearson_log_gap", "distance_correlation", "mutual_information"});
        for (const auto& c : s.correlations) {
            write_csv_row(out, {c.candidate, format_double(c.spearman), format_double(c.pearson_log_gap),
                                format_double(c.distance_correlation), format_double(c.mutual_information)});
        }
    }
    {
        auto out = open_output((fs::path(dir) / "histograms.csv").string());
        write_csv_row(out, {"quantity", "lower", "upper", "count"});
        for (auto [name, h] : {std::pair{"log_error_ratio", &s.error_ratio_histogram},
                               std::pair{"hp_ratio", &s.hp_ratio_histogram}}) {
            for (std::size_t b = 0; b < h->counts.size(); ++b) {
                write_csv_row(out, {name, format_double(h->edges[b]), format_double(h->edges[b + 1]),
                                    std::to_string(h->counts[b])});
            }
        }
    }
}

BenchOutcome bench(const ExperimentConfig& config, const std::string& dir) {
    validate(config);
    fs::create_directories(dir);
    {
        auto out = open_output((fs::path(dir) / "config.json").string());
        out << config_to_json(config);
    }
    const auto instances = generate_ensemble(config.ensemble);
    const EnsembleRun run = run_ensemble(config, instances);
    write_records_csv((fs::path(dir) / "records.csv").string(), run.records);
    write_timings_csv((fs::path(dir) / "timings.csv").string(), run.timings);
    {
        auto out = open_output((fs::path(dir) / "skipped.csv").string());
        write_csv_row(out, {"instance", "reason"});
        for (const auto& [index, reason] : run.skipped) write_csv_row(out, {std::to_string(index), reason});
    }
    BenchOutcome outcome;
    outcome.summary = summarize(run.records, config.primary_tf);
    outcome.failed = run.failed;
    outcome.skipped = run.skipped.size();
    write_report(outcome.summary, run.records, dir);
    return outcome;
}

std::string generate_to_directory(const EnsembleSpec& spec, const std::string& dir) {
    fs::create_directories(dir);
    const auto instances = generate_ensemble(spec);
    json graphs = json::array();
    for (const auto& inst : instances) {
        char name[32];
        std::snprintf(name, sizeof name, "graph_%04zu.txt", inst.index);
        save_graph((fs::path(dir) / name).string(), inst.graph);
        graphs.push_back({{"index", inst.index},
                          {"seed", inst.seed},
                          {"file", name},
                          {"vertices", inst.graph.size()},
                          {"edges", inst.graph.edges().size()}});
    }
    json manifest{{"version", version_string()},
                  {"ensemble",
                   {{"rows", spec.rows},
                    {"cols", spec.cols},
                    {"hole_probability", spec.hole_probability},
                    {"count", spec.count},
                    {"master_seed", spec.master_seed},
                    {"min_vertices", spec.min_vertices},
                    {"max_vertices", spec.max_vertices}}},
                  {"graphs", graphs}};
    const std::string text = manifest.dump(2) + "\n";
    auto out = open_output((fs::path(dir) / "manifest.json").string());
    out << text;
    return text;
}

}  // namespace ldaqc
