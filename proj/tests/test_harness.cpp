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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ldaqc/csv.hpp"
#include "ldaqc/error.hpp"
#include "ldaqc/harness.hpp"
#include "ldaqc/mis.hpp"

using namespace ldaqc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.ensemble.rows = 2;
    c.ensemble.cols = 3;
    c.ensemble.min_vertices = 4;
    c.ensemble.max_vertices = 6;
    c.ensemble.count = 6;
    c.tf_list = {2.0, 4.0};
    c.primary_tf = 4.0;
    c.dt = 0.01;
    c.workers = 2;
    return c;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ldaqc_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config round trip") {
    ExperimentConfig c = small_config();
    c.family = ProfileKind::exponential;
    c.gap_protocols = {Protocol::local_degree};
    c.ensemble.hp_window = std::pair{0.5, 1.5};
    c.envelope = Envelope::trapezoid;
    const auto back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(back.family == ProfileKind::exponential);
    CHECK(back.ensemble.hp_window->second == 1.5);
    CHECK(back.gap_protocols.size() == 1);
    CHECK(back.tf_list == c.tf_list);

    const auto defaults = config_from_json("{\"schema_version\": 1}");
    CHECK(defaults.delta0() == 16.0);
    CHECK(defaults.t_f(20.0) == doctest::Approx(20.0 * kPi));
}

TEST_CASE("config rejects malformed input") {
    CHECK_THROWS_AS(config_from_json("{\"schema_version\": 2}"), Error);
    CHECK_THROWS_AS(config_from_json("{\"schema_version\": 1, \"colour\": 3}"), Error);
    CHECK_THROWS_AS(config_from_json("{\"schema_version\": 1, \"ensemble\": {\"rowz\": 3}}"), Error);
    CHECK_THROWS_AS(config_from_json("not json"), Error);
    CHECK_THROWS_AS(config_from_json("{\"schema_version\": 1, \"family\": \"cubic\"}"), Error);

    ExperimentConfig c = small_config();
    c.primary_tf = 3.0;
    CHECK_THROWS_AS(validate(c), Error);
    c = small_config();
    c.safety = 1.0;
    CHECK_THROWS_AS(validate(c), Error);
    c = small_config();
    c.ensemble.count = 0;
    CHECK_THROWS_AS(validate(c), Error);
    CHECK_THROWS_AS(generate_ensemble(c.ensemble), Error);
    c = small_config();
    c.ensemble.min_vertices = 7;
    CHECK_THROWS_AS(validate(c), Error);
    c = small_config();
    c.ensemble.hp_window = std::pair{2.0, 1.0};
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("ensemble generation is deterministic and filtered") {
    EnsembleSpec spec = small_config().ensemble;
    spec.count = 30;
    const auto a = generate_ensemble(spec);
    const auto b = generate_ensemble(spec);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].graph.edges() == b[i].graph.edges());
        CHECK(a[i].graph.size() >= 4);
        CHECK(a[i].graph.size() <= 6);
        CHECK(a[i].index == i);
    }
    spec.hp_window = std::pair{0.9, 1.2};
    for (const auto& inst : generate_ensemble(spec)) {
        const double hp = hardness_traditional(enumerate_independent_sets(inst.graph));
        CHECK(hp > 0.9);
        CHECK(hp <= 1.2);
    }
    spec.master_seed += 1;
    CHECK(generate_ensemble(spec).front().seed != a.front().seed);
}

TEST_CASE("paired run on one instance") {
    const ExperimentConfig c = small_config();
    const auto inst = generate_ensemble(c.ensemble).front();
    const auto out = run_instance(c, inst);
    REQUIRE_FALSE(out.failed);
    REQUIRE(out.records.size() == 4);
    for (const auto& r : out.records) {
        CHECK(r.status == "ok");
        CHECK(r.p_mis >= 0.0);
        CHECK(r.p_mis <= 1.0 + 1e-9);
        CHECK(r.norm_error < 1e-9);
        CHECK(r.spm == doctest::Approx(spm(r.p_mis)));
        CHECK(std::isnan(r.delta_min));
        CHECK(r.hp_ratio == doctest::Approx(r.hp_trad / r.hp_ld_multiplicity));
    }
    // rows of the same t_f share the error ratio
    CHECK(out.records[0].log_error_ratio == out.records[1].log_error_ratio);
}

TEST_CASE("records CSV round trip and determinism") {
    const ExperimentConfig c = small_config();
    const auto inst = generate_ensemble(c.ensemble);
    const auto run1 = run_ensemble(c, inst);
    ExperimentConfig serial = c;
    serial.workers = 1;
    const auto run2 = run_ensemble(serial, inst);
    const auto dir = scratch("csv");
    write_records_csv((dir / "a.csv").string(), run1.records);
    write_records_csv((dir / "b.csv").string(), run2.records);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    const auto back = read_records_csv((dir / "a.csv").string());
    REQUIRE(back.size() == run1.records.size());
    write_records_csv((dir / "c.csv").string(), back);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "c.csv"));
    std::ifstream in(dir / "a.csv");
    CHECK(parse_csv(in).front() == record_header());
}

TEST_CASE("summary of equal success probabilities") {
    std::vector<ExperimentRecord> records;
    for (std::size_t i = 0; i < 8; ++i) {
        for (Protocol p : {Protocol::traditional, Protocol::local_degree}) {
            ExperimentRecord r;
            r.instance = i;
            r.protocol = p;
            r.tf_units = 20.0;
            r.p_mis = 0.5;
            r.r_ratio = 0.9;
            r.spm = spm(0.5);
            r.hp_trad = 1.0 + 0.1 * i;
            r.hp_ld_multiplicity = r.hp_ld_binary = r.hp_trad;
            r.hp_ratio = 1.0;
            r.log_error_ratio = log_error_ratio(0.5, 0.5);
            r.delta_min = std::numeric_limits<double>::quiet_NaN();
            records.push_back(r);
        }
    }
    const auto s = summarize(records, 20.0);
    CHECK(s.instances == 8);
    REQUIRE(s.fidelity.size() == 1);
    CHECK(s.fidelity[0].log_error_ratio == 0.0);
    CHECK(s.fidelity[0].p_trad == 0.5);
    CHECK(s.fidelity[0].error_r_ld == doctest::Approx(0.1));
    REQUIRE(s.fit_trad);
    CHECK(s.fit_trad->exponent == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.correlations.empty());
    CHECK(s.error_ratio_histogram.counts.size() == 20);
    const auto j = json::parse(summary_to_json(s));
    CHECK(j["gap_protocol"].is_null());
    CHECK_FALSE(j["notes"].empty());  // spm exponent undefined for constant SPM
}

TEST_CASE("histograms") {
    const auto h = make_histogram({0.0, 0.1, 0.2, 0.9, 1.0}, 5);
    REQUIRE(h.edges.size() == 6);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[4] == 2);
    std::size_t total = 0;
    for (auto n : h.counts) total += n;
    CHECK(total == 5);
    CHECK(h.mean == doctest::Approx(0.44));
}

TEST_CASE("smoke bench with gaps") {
    ExperimentConfig c = small_config();
    c.ensemble.count = 20;
    c.gap_protocols = {Protocol::local_degree, Protocol::traditional};
    c.gap_grid = 40;
    const auto dir = scratch("bench");
    const auto out = bench(c, dir.string());
    CHECK(out.failed == 0);
    CHECK(out.summary.instances + out.skipped == 20);
    for (const char* f : {"config.json", "records.csv", "timings.csv", "skipped.csv", "summary.json",
                          "fidelity_vs_tf.csv", "spm_vs_hp.csv", "gap_vs_hp.csv", "correlations.csv",
                          "histograms.csv"}) {
        CHECK_MESSAGE(fs::exists(dir / f), f);
    }
    const auto records = read_records_csv((dir / "records.csv").string());
    for (const auto& r : records) {
        if (r.tf_units == 4.0) CHECK(std::isfinite(r.delta_min));
    }
    CHECK(out.summary.gap_protocol == Protocol::local_degree);
    CHECK(config_from_json(slurp(dir / "config.json")).ensemble.count == 20);

    // report regenerates the same summary from records.csv
    const auto again = summarize(records, 4.0);
    CHECK(summary_to_json(again) == summary_to_json(out.summary));
}

TEST_CASE("generate writes graphs and a manifest") {
    EnsembleSpec spec = small_config().ensemble;
    spec.count = 3;
    const auto dir = scratch("gen");
    const auto manifest = json::parse(generate_to_directory(spec, dir.string()));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "graph_0000.txt"));
    CHECK(fs::exists(dir / "graph_0002.txt"));
    CHECK(load_graph((dir / "graph_0001.txt").string()).edges() ==
          generate_ensemble(spec)[1].graph.edges());
    CHECK(manifest.dump().find("graph_0002.txt") != std::string::npos);
}
