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

// Command-line front end. Talks to the library only through ldaqc.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldaqc/ldaqc.h"

namespace {

using json = nlohmann::ordered_json;

struct Overrides {
    std::optional<int> rows, cols;
    std::optional<double> hole_probability;
    std::optional<std::size_t> count;
    std::optional<std::uint64_t> master_seed;
    std::optional<std::size_t> min_vertices, max_vertices;
    std::optional<std::string> family;
    std::optional<double> safety, omega_max, delta0_ratio, c6, primary_tf, dt;
    std::vector<double> tf_list;
    std::vector<std::string> gap_protocols;
    std::optional<std::size_t> workers;
    std::string config_path;
};

void add_config_flags(CLI::App* app, Overrides& o, bool ensemble) {
    app->add_option("-c,--config", o.config_path, "experiment config JSON")->check(CLI::ExistingFile);
    if (ensemble) {
        app->add_option("--rows", o.rows, "grid rows");
        app->add_option("--cols", o.cols, "grid columns");
        app->add_option("--hole-probability", o.hole_probability, "site removal probability");
        app->add_option("--count", o.count, "number of instances");
        app->add_option("--seed", o.master_seed, "master seed");
        app->add_option("--min-vertices", o.min_vertices);
        app->add_option("--max-vertices", o.max_vertices);
        app->add_option("--workers", o.workers, "worker threads (LDAQC_WORKERS overrides)");
    }
    app->add_option("--family", o.family, "linear | exponential | power_law");
    app->add_option("--safety", o.safety, "a_used = safety * a*");
    app->add_option("--omega-max", o.omega_max);
    app->add_option("--delta0-ratio", o.delta0_ratio, "delta0 / omega_max");
    app->add_option("--c6", o.c6);
    app->add_option("--tf", o.tf_list, "t_f values in units of pi/omega_max");
    app->add_option("--primary-tf", o.primary_tf);
    app->add_option("--dt", o.dt, "integrator step");
    app->add_option("--gap", o.gap_protocols, "protocols that get a minimal-gap scan");
}

[[noreturn]] void die(const std::string& what) {
    std::cerr << "ldaqc: " << what << "\n";
    std::exit(2);
}

void check(ldaqc_status status) {
    if (status != LDAQC_OK) die(ldaqc_last_error());
}

std::string take(char* s) {
    std::string out = s ? s : "";
    ldaqc_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string build_config(const Overrides& o) {
    json j;
    if (!o.config_path.empty()) {
        j = json::parse(read_file(o.config_path), nullptr, false);
        if (j.is_discarded()) die(o.config_path + " is not valid JSON");
    } else {
        char* text = nullptr;
        check(ldaqc_config_default(&text));
        j = json::parse(take(text));
    }
    auto& e = j["ensemble"];
    if (o.rows) e["rows"] = *o.rows;
    if (o.cols) e["cols"] = *o.cols;
    if (o.hole_probability) e["hole_probability"] = *o.hole_probability;
    if (o.count) e["count"] = *o.count;
    if (o.master_seed) e["master_seed"] = *o.master_seed;
    if (o.min_vertices) e["min_vertices"] = *o.min_vertices;
    if (o.max_vertices) e["max_vertices"] = *o.max_vertices;
    if (o.family) j["family"] = *o.family;
    if (o.safety) j["safety"] = *o.safety;
    if (o.omega_max) j["omega_max"] = *o.omega_max;
    if (o.delta0_ratio) j["delta0_ratio"] = *o.delta0_ratio;
    if (o.c6) j["c6"] = *o.c6;
    if (!o.tf_list.empty()) {
        j["tf_list"] = o.tf_list;
        if (!o.primary_tf) j["primary_tf"] = o.tf_list.back();
    }
    if (o.primary_tf) j["primary_tf"] = *o.primary_tf;
    if (o.dt) j["integrator"]["dt"] = *o.dt;
    if (!o.gap_protocols.empty()) j["gap"]["protocols"] = o.gap_protocols;
    if (o.workers) j["workers"] = *o.workers;
    return j.dump();
}

struct GraphHandle {
    ldaqc_graph* g = nullptr;
    ~GraphHandle() { ldaqc_graph_free(g); }
};

void load_graph_arg(GraphHandle& h, const std::string& path, const std::vector<std::uint64_t>& kings) {
    if (!path.empty()) {
        check(ldaqc_graph_load(path.c_str(), &h.g));
    } else if (kings.size() == 3) {
        check(ldaqc_graph_kings(static_cast<int>(kings[0]), static_cast<int>(kings[1]), 0.15, kings[2], &h.g));
    } else {
        die("give --graph FILE or --kings ROWS COLS SEED");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local-degree adiabatic MIS experiments on Rydberg-blockade graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ldaqc_version()));

    Overrides gen_o, sim_o, bench_o, cfg_o;
    std::string out_dir = "out";

    auto* gen = app.add_subcommand("gen", "generate a King's-graph ensemble");
    add_config_flags(gen, gen_o, true);
    gen->add_option("-o,--out", out_dir, "output directory");

    std::string graph_path, family = "linear";
    std::vector<std::uint64_t> kings;
    double delta0 = 16.0, safety = 0.99;
    auto* eng = app.add_subcommand("engineer", "compute k*, a* and the detuning factors of a graph");
    eng->add_option("-g,--graph", graph_path, "graph file")->check(CLI::ExistingFile);
    eng->add_option("--kings", kings, "random King's graph: ROWS COLS SEED")->expected(3);
    eng->add_option("--family", family, "linear | exponential | power_law");
    eng->add_option("--delta0", delta0);
    eng->add_option("--safety", safety);

    std::string trajectory;
    auto* sim = app.add_subcommand("simulate", "run both protocols on one graph");
    sim->add_option("-g,--graph", graph_path, "graph file")->check(CLI::ExistingFile);
    sim->add_option("--kings", kings, "random King's graph: ROWS COLS SEED")->expected(3);
    sim->add_option("--trajectory", trajectory, "write <prefix>_<protocol>.csv trajectories");
    add_config_flags(sim, sim_o, false);

    auto* bench = app.add_subcommand("bench", "generate, simulate and report an ensemble");
    add_config_flags(bench, bench_o, true);
    bench->add_option("-o,--out", out_dir, "output directory");

    std::string records;
    double primary_tf = 0.0;
    auto* report = app.add_subcommand("report", "rebuild summary tables from records.csv");
    report->add_option("records", records, "records.csv")->required()->check(CLI::ExistingFile);
    report->add_option("-o,--out", out_dir, "output directory");
    report->add_option("--primary-tf", primary_tf, "t_f used for fits (default: largest present)");

    auto* cfg = app.add_subcommand("config", "print the experiment config with overrides applied");
    add_config_flags(cfg, cfg_o, true);

    std::uint64_t seed = 7;
    auto* self = app.add_subcommand("selftest", "run the brute-force oracle suite");
    self->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    if (cfg->parsed()) {
        std::cout << json::parse(build_config(cfg_o)).dump(2) << "\n";
        return 0;
    }
    if (gen->parsed()) {
        char* manifest = nullptr;
        check(ldaqc_gen(build_config(gen_o).c_str(), out_dir.c_str(), &manifest));
        const auto j = json::parse(take(manifest));
        std::cout << "wrote " << j["graphs"].size() << " graphs to " << out_dir << "\n";
        return 0;
    }
    if (eng->parsed()) {
        GraphHandle h;
        load_graph_arg(h, graph_path, kings);
        ldaqc_profile* p = nullptr;
        check(ldaqc_profile_engineer(h.g, family.c_str(), delta0, safety, &p));
        ldaqc_catalog* c = nullptr;
        const ldaqc_status cs = ldaqc_catalog_build(h.g, &c);
        char* text = nullptr;
        const ldaqc_status ps = ldaqc_profile_json(p, &text);
        json j = ps == LDAQC_OK ? json::parse(take(text)) : json::object();
        if (cs == LDAQC_OK) {
            double hp = 0.0, mult = 0.0, bin = 0.0;
            j["mis_size"] = ldaqc_catalog_mis_size(c);
            j["mis_count"] = ldaqc_catalog_mis_count(c);
            if (ldaqc_catalog_hardness(c, &hp) == LDAQC_OK) j["hp_trad"] = hp;
            if (ldaqc_profile_hardness(p, c, 0, &mult) == LDAQC_OK) j["hp_ld_multiplicity"] = mult;
            if (ldaqc_profile_hardness(p, c, 1, &bin) == LDAQC_OK) j["hp_ld_binary"] = bin;
        }
        ldaqc_catalog_free(c);
        ldaqc_profile_free(p);
        check(ps);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (sim->parsed()) {
        GraphHandle h;
        load_graph_arg(h, graph_path, kings);
        char* out = nullptr;
        check(ldaqc_simulate(h.g, build_config(sim_o).c_str(), trajectory.empty() ? nullptr : trajectory.c_str(),
                             &out));
        std::cout << take(out);
        return 0;
    }
    if (bench->parsed()) {
        char* summary = nullptr;
        std::size_t failed = 0;
        check(ldaqc_bench(build_config(bench_o).c_str(), out_dir.c_str(), &summary, &failed));
        std::cout << take(summary);
        if (failed) std::cerr << "ldaqc: " << failed << " instance(s) failed\n";
        return failed ? 1 : 0;
    }
    if (report->parsed()) {
        char* summary = nullptr;
        check(ldaqc_report(records.c_str(), primary_tf, out_dir.c_str(), &summary));
        std::cout << take(summary);
        return 0;
    }
    if (self->parsed()) {
        char* text = nullptr;
        int passed = 0;
        check(ldaqc_selftest(seed, &text, &passed));
        const auto j = json::parse(take(text));
        for (const auto& c : j["checks"]) {
            std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
            if (!c["detail"].get<std::string>().empty()) std::cout << " (" << c["detail"].get<std::string>() << ")";
            std::cout << "\n";
        }
        return passed ? 0 : 1;
    }
    return 0;
}
