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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldaqc/detuning.hpp"
#include "ldaqc/dynamics.hpp"
#include "ldaqc/graph.hpp"
#include "ldaqc/metrics.hpp"

namespace ldaqc {

inline constexpr int kConfigSchemaVersion = 1;

std::string version_string();

struct EnsembleSpec {
    int rows = 3;
    int cols = 4;
    double hole_probability = 0.15;
    std::size_t count = 100;
    std::uint64_t master_seed = 2026;
    std::size_t min_vertices = 9;
    std::size_t max_vertices = 11;
    /// Keep only instances with lo < HP_trad <= hi. Rejected draws are
    /// replaced by further draws.
    std::optional<std::pair<double, double>> hp_window;
};

struct ExperimentConfig {
    EnsembleSpec ensemble;
    ProfileKind family = ProfileKind::linear;
    double safety = 0.99;
    double omega_max = 1.0;
    double delta0_ratio = 16.0;  // delta0 / omega_max
    double c6 = 128.0;           // lattice spacing 1
    Envelope envelope = Envelope::sin_squared;
    double ramp_fraction = 0.1;
    std::vector<double> tf_list = {5.0, 10.0, 20.0};  // in units of pi / omega_max
    double primary_tf = 20.0;
    double dt = 0.005;
    double norm_tolerance = 1e-6;
    std::vector<Protocol> gap_protocols;  // empty: no gap computation
    std::size_t gap_grid = 200;
    bool gap_mis_levels = true;  // gap to level |MIS-manifold|, else to level 1
    std::size_t workers = 0;     // 0: LDAQC_WORKERS or hardware concurrency

    double delta0() const { return delta0_ratio * omega_max; }
    double t_f(double units) const { return units * kPi / omega_max; }
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
void validate(const ExperimentConfig& config);

struct Instance {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    Graph graph;
};

/// Draws the ensemble: successive seeds splitmix64(master_seed + j) until
/// `count` graphs satisfy the vertex range (and HP window, if any).
std::vector<Instance> generate_ensemble(const EnsembleSpec& spec);

/// One row per instance, protocol and t_f.
struct ExperimentRecord {
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t edges = 0;
    int mis_size = 0;
    std::size_t mis_count = 0;
    Protocol protocol = Protocol::traditional;
    double tf_units = 0.0;
    double p_mis = 0.0;
    double r_ratio = 0.0;
    double spm = 0.0;
    double hp_trad = 0.0;
    double hp_ld_multiplicity = 0.0;
    double hp_ld_binary = 0.0;
    double hp_ratio = 0.0;
    double log_error_ratio = 0.0;
    double delta_min = 0.0;  // NaN when not computed
    bool gap_degenerate = false;
    int k_star = 0;
    double a_star = 0.0;
    double a_used = 0.0;
    double norm_error = 0.0;
    std::string status = "ok";
};

struct InstanceTiming {
    std::size_t instance = 0;
    double catalog_seconds = 0.0;
    double evolve_seconds = 0.0;
    double gap_seconds = 0.0;
};

struct InstanceOutcome {
    std::vector<ExperimentRecord> records;
    InstanceTiming timing;
    std::string skipped;  // reason when the instance produced no records
    bool failed = false;
};

/// Full paired pipeline on one graph.
InstanceOutcome run_instance(const ExperimentConfig& config, const Instance& instance);

struct EnsembleRun {
    std::vector<ExperimentRecord> records;
    std::vector<InstanceTiming> timings;
    std::vector<std::pair<std::size_t, std::string>> skipped;
    std::size_t failed = 0;
};

/// Runs every instance on a worker pool; results come back in instance order.
EnsembleRun run_ensemble(const ExperimentConfig& config, const std::vector<Instance>& instances);

std::vector<std::string> record_header();
void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_csv(const std::string& path);
void write_timings_csv(const std::string& path, const std::vector<InstanceTiming>& timings);

struct FidelityRow {
    double tf_units = 0.0;
    std::size_t instances = 0;
    double p_trad = 0.0;
    double p_ld = 0.0;
    double error_r_trad = 0.0;  // mean 1 - R
    double error_r_ld = 0.0;
    double log_error_ratio = 0.0;
};

struct CorrelationRow {
    std::string candidate;  // hp_trad, hp_ld_binary, hp_ld_multiplicity
    double spearman = 0.0;
    double pearson_log_gap = 0.0;
    double distance_correlation = 0.0;
    double mutual_information = 0.0;
};

struct Histogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    double mean = 0.0;
};

struct Summary {
    std::string version;
    std::size_t instances = 0;
    double primary_tf = 0.0;
    std::vector<FidelityRow> fidelity;
    std::optional<FitResult> fit_trad;  // SPM_trad vs HP_trad
    std::optional<FitResult> fit_ld;    // SPM_LD vs HP_trad
    std::optional<FitResult> fit_ld_hp_ld;  // SPM_LD vs HP_LD
    std::optional<FitResult> spm_exponent;  // ln SPM_LD vs ln SPM_trad
    Protocol gap_protocol = Protocol::local_degree;
    std::size_t gap_samples = 0;
    std::vector<CorrelationRow> correlations;
    std::optional<FitResult> gap_fit;  // delta_min vs HP_LD
    Histogram error_ratio_histogram;
    Histogram hp_ratio_histogram;
    std::vector<std::string> notes;  // metrics that could not be computed
};

Histogram make_histogram(const std::vector<double>& values, std::size_t bins);

/// Aggregates a record set. Fits and correlations use the primary t_f rows.
Summary summarize(const std::vector<ExperimentRecord>& records, double primary_tf);
std::string summary_to_json(const Summary& summary);

/// Writes summary.json and the plot tables (fidelity_vs_tf.csv,
/// spm_vs_hp.csv, gap_vs_hp.csv, correlations.csv, histograms.csv).
void write_report(const Summary& summary, const std::vector<ExperimentRecord>& records, const std::string& dir);

struct BenchOutcome {
    Summary summary;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

/// gen + run + report into `dir`: config.json, records.csv, timings.csv,
/// skipped.csv and the report files.
BenchOutcome bench(const ExperimentConfig& config, const std::string& dir);

/// Writes graph_XXXX.txt files and manifest.json for the ensemble.
std::string generate_to_directory(const EnsembleSpec& spec, const std::string& dir);

}  // namespace ldaqc
