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

#include "ldaqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldaqc/error.hpp"

namespace ldaqc {

double success_probability(const QuantumState& state, const IsCatalog& catalog) {
    double p = 0.0;
    for (VertexSet s : catalog.maximum_sets()) p += state.probability(static_cast<std::size_t>(s));
    return p;
}

double approximation_ratio(const QuantumState& state, const IsCatalog& catalog, bool normalize) {
    double mean = 0.0;
    for (std::size_t s = 0; s < state.dimension(); ++s) mean += popcount(s) * state.probability(s);
    if (!normalize) return mean;
    if (catalog.mis_size == 0) fail(ErrorCode::undefined_metric, "approximation ratio needs |MIS| > 0");
    return mean / catalog.mis_size;
}

namespace {

void require_near_stratum(const IsCatalog& catalog) {
    if (catalog.mis_size < 1 || catalog.near_maximum_sets().empty()) {
        fail(ErrorCode::undefined_metric, "hardness needs a nonempty |MIS|-1 stratum");
    }
    if (catalog.extension_total() == 0) fail(ErrorCode::undefined_metric, "no connected states");
}

}  // namespace

double hardness_traditional_extension_form(const IsCatalog& catalog) {
    require_near_stratum(catalog);
    return static_cast<double>(catalog.near_maximum_sets().size()) / static_cast<double>(catalog.extension_total());
}

double hardness_traditional(const IsCatalog& catalog) {
    require_near_stratum(catalog);
    const double degeneracy_form = static_cast<double>(catalog.near_maximum_sets().size()) /
                                   (static_cast<double>(catalog.mis_size) * static_cast<double>(catalog.mis_count));
    const double extension_form = hardness_traditional_extension_form(catalog);
    if (std::abs(degeneracy_form - extension_form) > 1e-12 * std::max(1.0, degeneracy_form)) {
        fail(ErrorCode::internal_consistency, "degeneracy and extension-count forms of HP disagree");
    }
    return degeneracy_form;
}

HardnessLd hardness_local_degree(const IsCatalog& catalog, const SpectrumRecord& spectrum, double delta0,
                                 HardnessVariant variant) {
    require_near_stratum(catalog);
    const auto& band = spectrum.bands.at(static_cast<std::size_t>(catalog.mis_size - 1));
    if (band.size() != catalog.extension_counts.size()) {
        fail(ErrorCode::invalid_argument, "spectrum does not match the catalog");
    }
    const double floor = 1e-12 * delta0;
    HardnessLd out;
    double weights = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < band.size(); ++j) {
        double distance = std::abs(band[j].energy - spectrum.e_mis_mean);
        if (distance < floor) {
            distance = floor;
            out.degenerate_weight = true;
        }
        const double w = 1.0 / distance;
        const int c = catalog.extension_counts[j];
        weights += w;
        weighted += w * (variant == HardnessVariant::binary ? std::min(c, 1) : c);
    }
    out.value = weights / weighted;
    return out;
}

double spm(double p) {
    return -std::log1p(-std::min(p, kProbabilityCeiling));
}

double log_error_ratio(double p_trad, double p_ld) {
    const double err_trad = 1.0 - std::min(p_trad, kProbabilityCeiling);
    const double err_ld = 1.0 - std::min(p_ld, kProbabilityCeiling);
    return std::log10(err_trad / err_ld);
}

double hp_ratio(double hp_trad, double hp_ld) {
    if (!(hp_ld > 0.0)) fail(ErrorCode::undefined_metric, "HP_LD must be positive");
    return hp_trad / hp_ld;
}

double composed_success_prediction(double a_trad, double b_trad, double exponent, double hp_trad) {
    return 1.0 - std::exp(-std::pow(a_trad, exponent) * std::pow(hp_trad, -exponent * b_trad));
}

namespace {

void require_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorCode::undefined_metric, "samples differ in length");
    if (x.size() < 3) fail(ErrorCode::undefined_metric, "at least three samples are required");
}

void require_varying(std::span<const double> x) {
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
        fail(ErrorCode::undefined_metric, "constant series; correlation undefined");
    }
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    require_varying(x);
    require_varying(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double pearson_log_gap(std::span<const double> x, std::span<const double> gap) {
    require_pair(x, gap);
    std::vector<double> log_gap;
    log_gap.reserve(gap.size());
    for (double g : gap) {
        if (!(g > 0.0)) fail(ErrorCode::undefined_metric, "log-gap correlation needs positive gaps");
        log_gap.push_back(std::log(g));
    }
    return pearson(x, log_gap);
}

namespace {

std::vector<double> centered_distances(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> a(n * n);
    std::vector<double> row(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = std::abs(x[i] - x[j]);
            a[i * n + j] = d;
            row[i] += d;
        }
        total += row[i];
    }
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] += -row[i] / nn - row[j] / nn + total / (nn * nn);
        }
    }
    return a;
}

double mean_product(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s / static_cast<double>(a.size());
}

}  // namespace

double distance_correlation(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y);
    require_varying(x);
    require_varying(y);
    const auto a = centered_distances(x);
    const auto b = centered_distances(y);
    const double dcov2 = mean_product(a, b);
    const double dvar_x = mean_product(a, a);
    const double dvar_y = mean_product(b, b);
    return std::sqrt(std::max(0.0, dcov2) / std::sqrt(dvar_x * dvar_y));
}

namespace {

std::vector<std::size_t> equal_frequency_bins(std::span<const double> x, std::size_t bins) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<std::size_t> out(x.size());
    std::size_t group_start = 0;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        if (pos > 0 && x[idx[pos]] != x[idx[pos - 1]]) group_start = pos;
        // Ties share the bin of their first occurrence.
        out[idx[pos]] = group_start * bins / idx.size();
    }
    return out;
}

}  // namespace

double mutual_information(std::span<const double> x, std::span<const double> y, std::size_t bins) {
    require_pair(x, y);
    require_varying(x);
    require_varying(y);
    const std::size_t n = x.size();
    if (bins == 0) {
        bins = std::min<std::size_t>(16, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
    }
    const auto bx = equal_frequency_bins(x, bins);
    const auto by = equal_frequency_bins(y, bins);
    std::vector<double> joint(bins * bins, 0.0);
    std::vector<double> px(bins, 0.0);
    std::vector<double> py(bins, 0.0);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        joint[bx[i] * bins + by[i]] += w;
        px[bx[i]] += w;
        py[by[i]] += w;
    }
    double mi = 0.0;
    for (std::size_t a = 0; a < bins; ++a) {
        for (std::size_t b = 0; b < bins; ++b) {
            const double p = joint[a * bins + b];
            if (p > 0.0) mi += p * std::log(p / (px[a] * py[b]));
        }
    }
    return mi;
}

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_norm = 0.0;
    std::size_t samples = 0;
    std::size_t excluded = 0;
};

LineFit fit_log_log(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) fail(ErrorCode::undefined_metric, "samples differ in length");
    std::vector<double> lx;
    std::vector<double> ly;
    LineFit fit;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        } else {
            ++fit.excluded;
        }
    }
    fit.samples = lx.size();
    if (lx.size() < 5) fail(ErrorCode::undefined_metric, "power-law fit needs at least five positive samples");
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) fail(ErrorCode::undefined_metric, "power-law fit needs distinct abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rss += r * r;
    }
    fit.residual_norm = std::sqrt(rss);
    return fit;
}

}  // namespace

FitResult fit_power_law(std::span<const double> x, std::span<const double> y) {
    const LineFit line = fit_log_log(x, y);
    return {std::exp(line.intercept), -line.slope, line.residual_norm, line.samples, line.excluded};
}

FitResult fit_exponent(std::span<const double> spm_ld, std::span<const double> spm_trad) {
    const LineFit line = fit_log_log(spm_trad, spm_ld);
    return {std::exp(line.intercept), line.slope, line.residual_norm, line.samples, line.excluded};
}

}  // namespace ldaqc
