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

#include "ldaqc/ldaqc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "ldaqc/detuning.hpp"
#include "ldaqc/error.hpp"
#include "ldaqc/graph.hpp"
#include "ldaqc/harness.hpp"
#include "ldaqc/metrics.hpp"
#include "ldaqc/mis.hpp"
#include "ldaqc/selftest.hpp"

struct ldaqc_graph {
    ldaqc::Graph graph;
};

struct ldaqc_catalog {
    ldaqc::IsCatalog catalog;
};

struct ldaqc_profile {
    ldaqc::DetuningProfile profile;
};

namespace {

thread_local std::string last_error;

ldaqc_status map_code(ldaqc::ErrorCode code) {
    using ldaqc::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_argument: return LDAQC_ERR_INVALID_ARGUMENT;
    case ErrorCode::empty_instance: return LDAQC_ERR_EMPTY_INSTANCE;
    case ErrorCode::cap_exceeded: return LDAQC_ERR_CAP_EXCEEDED;
    case ErrorCode::invalid_profile: return LDAQC_ERR_INVALID_PROFILE;
    case ErrorCode::internal_consistency: return LDAQC_ERR_INTERNAL;
    case ErrorCode::integrator_failure: return LDAQC_ERR_INTEGRATOR;
    case ErrorCode::undefined_metric: return LDAQC_ERR_UNDEFINED_METRIC;
    case ErrorCode::io: return LDAQC_ERR_IO;
    }
    return LDAQC_ERR_UNKNOWN;
}

template <class F>
ldaqc_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return LDAQC_OK;
    } catch (const ldaqc::Error& e) {
        last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return LDAQC_ERR_UNKNOWN;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LDAQC_ERR_UNKNOWN;
    }
}

void require(bool ok, const char* what) {
    if (!ok) ldaqc::fail(ldaqc::ErrorCode::invalid_argument, what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ldaqc::ExperimentConfig parse_config(const char* text) {
    if (!text) return {};
    return ldaqc::config_from_json(text);
}

nlohmann::ordered_json record_json(const ldaqc::ExperimentRecord& r) {
    return {{"instance", r.instance},
            {"protocol", ldaqc::to_string(r.protocol)},
            {"tf_units", r.tf_units},
            {"n", r.n},
            {"mis_size", r.mis_size},
            {"mis_count", r.mis_count},
            {"p_mis", r.p_mis},
            {"r_ratio", r.r_ratio},
            {"spm", r.spm},
            {"hp_trad", r.hp_trad},
            {"hp_ld_multiplicity", r.hp_ld_multiplicity},
            {"hp_ld_binary", r.hp_ld_binary},
            {"log_error_ratio", r.log_error_ratio},
            {"delta_min", r.delta_min},
            {"k_star", r.k_star},
            {"a_star", r.a_star},
            {"a_used", r.a_used},
            {"norm_error", r.norm_error},
            {"status", r.status}};
}

}  // namespace

extern "C" {

const char* ldaqc_version(void) { return LDAQC_VERSION; }

const char* ldaqc_last_error(void) { return last_error.c_str(); }

void ldaqc_string_free(char* s) { std::free(s); }

ldaqc_status ldaqc_graph_from_edges(size_t n, const int* edges, size_t m, const double* xy, ldaqc_graph** out) {
    return guarded([&] {
        require(out != nullptr, "out is NULL");
        require(m == 0 || edges != nullptr, "edges is NULL");
        std::vector<ldaqc::Edge> list;
        for (size_t k = 0; k < m; ++k) list.emplace_back(edges[2 * k], edges[2 * k + 1]);
        std::optional<std::vector<ldaqc::Point>> pos;
        if (xy) {
            pos.emplace();
            for (size_t i = 0; i < n; ++i) pos->push_back({xy[2 * i], xy[2 * i + 1]});
        }
        *out = new ldaqc_graph{ldaqc::Graph::from_edge_list(n, list, std::move(pos))};
    });
}

ldaqc_status ldaqc_graph_kings(int rows, int cols, double hole_probability, uint64_t seed, ldaqc_graph** out) {
    return guarded([&] {
        require(out != nullptr, "out is NULL");
        *out = new ldaqc_graph{ldaqc::build_kings_graph(rows, cols, hole_probability, seed)};
    });
}

ldaqc_status ldaqc_graph_load(const char* path, ldaqc_graph** out) {
    return guarded([&] {
        require(path && out, "NULL argument");
        *out = new ldaqc_graph{ldaqc::load_graph(path)};
    });
}

ldaqc_status ldaqc_graph_save(const ldaqc_graph* g, const char* path) {
    return guarded([&] {
        require(g && path, "NULL argument");
        ldaqc::save_graph(path, g->graph);
    });
}

size_t ldaqc_graph_size(const ldaqc_graph* g) { return g ? g->graph.size() : 0; }

size_t ldaqc_graph_edge_count(const ldaqc_graph* g) { return g ? g->graph.edges().size() : 0; }

ldaqc_status ldaqc_graph_degree(const ldaqc_graph* g, size_t v, int* out) {
    return guarded([&] {
        require(g && out, "NULL argument");
        require(v < g->graph.size(), "vertex out of range");
        *out = g->graph.degree(static_cast<int>(v));
    });
}

void ldaqc_graph_free(ldaqc_graph* g) { delete g; }

ldaqc_status ldaqc_catalog_build(const ldaqc_graph* g, ldaqc_catalog** out) {
    return guarded([&] {
        require(g && out, "NULL argument");
        *out = new ldaqc_catalog{ldaqc::enumerate_independent_sets(g->graph)};
    });
}

int ldaqc_catalog_mis_size(const ldaqc_catalog* c) { return c ? c->catalog.mis_size : -1; }

size_t ldaqc_catalog_mis_count(const ldaqc_catalog* c) { return c ? c->catalog.mis_count : 0; }

ldaqc_status ldaqc_catalog_hardness(const ldaqc_catalog* c, double* out) {
    return guarded([&] {
        require(c && out, "NULL argument");
        *out = ldaqc::hardness_traditional(c->catalog);
    });
}

ldaqc_status ldaqc_catalog_json(const ldaqc_catalog* c, char** out) {
    return guarded([&] {
        require(c && out, "NULL argument");
        *out = dup_string(ldaqc::catalog_to_json(c->catalog));
    });
}

void ldaqc_catalog_free(ldaqc_catalog* c) { delete c; }

ldaqc_status ldaqc_profile_engineer(const ldaqc_graph* g, const char* family, double delta0, double safety,
                                    ldaqc_profile** out) {
    return guarded([&] {
        require(g && family && out, "NULL argument");
        const auto fam = ldaqc::ProfileFamily::from_kind(ldaqc::profile_kind_from_string(family));
        *out = new ldaqc_profile{ldaqc::engineer_detunings(g->graph, fam, delta0, safety)};
    });
}

double ldaqc_profile_a_star(const ldaqc_profile* p) { return p ? p->profile.a_star : 0.0; }

double ldaqc_profile_a_used(const ldaqc_profile* p) { return p ? p->profile.a_used : 0.0; }

int ldaqc_profile_k_star(const ldaqc_profile* p) { return p ? p->profile.k_star : 0; }

size_t ldaqc_profile_factors(const ldaqc_profile* p, double* out, size_t n) {
    if (!p || !out) return 0;
    const size_t k = std::min(n, p->profile.factors.size());
    std::copy_n(p->profile.factors.begin(), k, out);
    return k;
}

ldaqc_status ldaqc_profile_hardness(const ldaqc_profile* p, const ldaqc_catalog* c, int binary, double* out) {
    return guarded([&] {
        require(p && c && out, "NULL argument");
        const auto spectrum = ldaqc::final_band_spectrum(c->catalog, p->profile);
        *out = ldaqc::hardness_local_degree(c->catalog, spectrum, p->profile.delta0,
                                            binary ? ldaqc::HardnessVariant::binary
                                                   : ldaqc::HardnessVariant::multiplicity)
                   .value;
    });
}

ldaqc_status ldaqc_profile_json(const ldaqc_profile* p, char** out) {
    return guarded([&] {
        require(p && out, "NULL argument");
        *out = dup_string(ldaqc::profile_to_json(p->profile));
    });
}

void ldaqc_profile_free(ldaqc_profile* p) { delete p; }

ldaqc_status ldaqc_config_default(char** out) {
    return guarded([&] {
        require(out != nullptr, "out is NULL");
        *out = dup_string(ldaqc::config_to_json({}));
    });
}

ldaqc_status ldaqc_simulate(const ldaqc_graph* g, const char* config_json, const char* trajectory_prefix,
                            char** out) {
    return guarded([&] {
        require(g && out, "NULL argument");
        const auto config = parse_config(config_json);
        const ldaqc::Instance instance{0, 0, g->graph};
        const auto outcome = ldaqc::run_instance(config, instance);
        if (!outcome.skipped.empty()) ldaqc::fail(ldaqc::ErrorCode::invalid_argument, outcome.skipped);

        if (trajectory_prefix) {
            const auto catalog = ldaqc::enumerate_independent_sets(g->graph);
            const auto profile = ldaqc::engineer_detunings(g->graph, ldaqc::ProfileFamily::from_kind(config.family),
                                                           config.delta0(), config.safety);
            const auto model = ldaqc::make_rydberg_model(g->graph, config.c6);
            ldaqc::IntegratorConfig ic;
            ic.dt = config.dt;
            ic.norm_tolerance = config.norm_tolerance;
            ic.sample_every = std::max<std::size_t>(1, static_cast<std::size_t>(config.t_f(config.primary_tf) / config.dt / 400));
            ic.sample_gap = !config.gap_protocols.empty();
            ic.gap_levels = config.gap_mis_levels ? catalog.mis_count : 1;
            const double t_f = config.t_f(config.primary_tf);
            for (auto p : {ldaqc::Protocol::traditional, ldaqc::Protocol::local_degree}) {
                auto sched = p == ldaqc::Protocol::traditional
                                 ? ldaqc::PulseSchedule::traditional(g->graph.size(), t_f, config.omega_max,
                                                                     config.delta0(), config.envelope)
                                 : ldaqc::PulseSchedule::local_degree(profile, t_f, config.omega_max, config.envelope);
                sched.ramp_fraction = config.ramp_fraction;
                const auto res = ldaqc::evolve(model, sched, ic, &catalog);
                ldaqc::write_trajectory_csv(std::string(trajectory_prefix) + "_" + ldaqc::to_string(p) + ".csv",
                                            res.trajectory);
            }
        }

        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : outcome.records) arr.push_back(record_json(r));
        *out = dup_string(arr.dump(2) + "\n");
    });
}

ldaqc_status ldaqc_gen(const char* config_json, const char* dir, char** manifest) {
    return guarded([&] {
        require(dir && manifest, "NULL argument");
        const auto config = parse_config(config_json);
        *manifest = dup_string(ldaqc::generate_to_directory(config.ensemble, dir));
    });
}

ldaqc_status ldaqc_bench(const char* config_json, const char* dir, char** summary, size_t* failed) {
    return guarded([&] {
        require(dir && summary, "NULL argument");
        const auto outcome = ldaqc::bench(parse_config(config_json), dir);
        if (failed) *failed = outcome.failed;
        *summary = dup_string(ldaqc::summary_to_json(outcome.summary));
    });
}

ldaqc_status ldaqc_report(const char* records_csv, double primary_tf, const char* dir, char** summary) {
    return guarded([&] {
        require(records_csv && dir && summary, "NULL argument");
        const auto records = ldaqc::read_records_csv(records_csv);
        require(!records.empty(), "record set is empty");
        if (!(primary_tf > 0.0)) {
            for (const auto& r : records) primary_tf = std::max(primary_tf, r.tf_units);
        }
        const auto s = ldaqc::summarize(records, primary_tf);
        ldaqc::write_report(s, records, dir);
        *summary = dup_string(ldaqc::summary_to_json(s));
    });
}

ldaqc_status ldaqc_selftest(uint64_t seed, char** report, int* passed) {
    return guarded([&] {
        require(report != nullptr, "report is NULL");
        const auto checks = ldaqc::run_selftest(seed);
        bool ok = true;
        for (const auto& c : checks) ok = ok && c.passed;
        if (passed) *passed = ok ? 1 : 0;
        *report = dup_string(ldaqc::selftest_to_json(checks));
    });
}

}  // extern "C"
