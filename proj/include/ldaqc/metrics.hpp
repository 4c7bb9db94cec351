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
#include <limits>
#include <span>
#include <vector>

#include "ldaqc/dynamics.hpp"
#include "ldaqc/mis.hpp"

namespace ldaqc {

inline constexpr double kProbabilityCeiling = 1.0 - 1e-15;

struct MetricsRecord {
    double p_mis = 0.0;
    double r_ratio = 0.0;
    double spm = 0.0;
    double hp_trad = 0.0;
    double hp_ld_multiplicity = 0.0;
    double hp_ld_binary = 0.0;
    double delta_min = std::numeric_limits<double>::quiet_NaN();
    double log_error_ratio = std::numeric_limits<double>::quiet_NaN();
    double hp_ratio = std::numeric_limits<double>::quiet_NaN();
};

/// Total probability on the MIS manifold (every maximum set).
double success_probability(const QuantumState& state, const IsCatalog& catalog);

/// <sum_i n_i>, divided by |MIS| when normalize is set.
double approximation_ratio(const QuantumState& state, const IsCatalog& catalog, bool normalize = true);

/// D_{|MIS|-1} / (|MIS| D_{|MIS|}). Cross-checked against the c_j-sum form;
/// a mismatch throws internal_consistency.
double hardness_traditional(const IsCatalog& catalog);

/// (sum_j 1) / (sum_j c_j) over the |MIS|-1 stratum.
double hardness_traditional_extension_form(const IsCatalog& catalog);

enum class HardnessVariant { multiplicity, binary };

struct HardnessLd {
    double value = 0.0;
    bool degenerate_weight = false;  // some |E_j - E_MIS| hit the floor
};

/// sum_j w_j / sum_j w_j c_j with w_j = 1 / |E_j - mean E_MIS|. The binary
/// variant replaces c_j by min(c_j, 1).
HardnessLd hardness_local_degree(const IsCatalog& catalog, const SpectrumRecord& spectrum, double delta0,
                                 HardnessVariant variant = HardnessVariant::multiplicity);

/// -ln(1 - p), p clamped below 1 - 1e-15.
double spm(double p);
/// log10[(1 - p_trad) / (1 - p_ld)].
double log_error_ratio(double p_trad, double p_ld);
double hp_ratio(double hp_trad, double hp_ld);

/// Predicted P_LD from the traditional fit (a_t, b_t) and the protocol
/// exponent s: 1 - exp(-a_t^s HP^(-s b_t)).
double composed_success_prediction(double a_trad, double b_trad, double exponent, double hp_trad);

// Correlation statistics. All throw undefined_metric for mismatched lengths,
// fewer than three samples, or constant input.
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
double pearson_log_gap(std::span<const double> x, std::span<const double> gap);
double distance_correlation(std::span<const double> x, std::span<const double> y);
/// Plug-in estimator on equal-frequency bins, natural log. bins = 0 selects
/// ceil(sqrt(n)) capped at 16.
double mutual_information(std::span<const double> x, std::span<const double> y, std::size_t bins = 0);

/// Average ranks (1-based), ties share the mean rank.
std::vector<double> average_ranks(std::span<const double> x);

struct FitResult {
    double scale = 0.0;     // a
    double exponent = 0.0;  // b in y = a x^(-b)
    double residual_norm = 0.0;
    std::size_t samples = 0;
    std::size_t excluded = 0;  // non-positive pairs dropped
};

/// Least squares on ln y = ln a - b ln x.
FitResult fit_power_law(std::span<const double> x, std::span<const double> y);

/// Slope of ln spm_ld against ln spm_trad, reported in FitResult::exponent
/// (scale holds e^intercept). Unlike fit_power_law the slope is not negated.
FitResult fit_exponent(std::span<const double> spm_ld, std::span<const double> spm_trad);

}  // namespace ldaqc
