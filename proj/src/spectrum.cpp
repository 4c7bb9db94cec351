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

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ldaqc/dynamics.hpp"
#include "ldaqc/error.hpp"
#include "ldaqc/random.hpp"

namespace ldaqc {

double final_energy(VertexSet s, const std::vector<double>& factors, double delta0) {
    double sum = 0.0;
    for (int v : members(s)) sum += factors[static_cast<std::size_t>(v)];
    return -0.5 * delta0 * sum;
}

SpectrumRecord final_band_spectrum(const IsCatalog& catalog, const std::vector<double>& factors, double delta0) {
    if (factors.size() != catalog.n) {
        fail(ErrorCode::invalid_argument, "factor count does not match the catalog's vertex count");
    }
    SpectrumRecord rec;
    rec.bands.resize(catalog.by_size.size());
    for (std::size_t k = 0; k < catalog.by_size.size(); ++k) {
        for (VertexSet s : catalog.by_size[k]) rec.bands[k].push_back({s, final_energy(s, factors, delta0)});
    }

    double mis_sum = 0.0;
    for (const auto& st : rec.bands.back()) mis_sum += st.energy;
    rec.e_mis_mean = mis_sum / static_cast<double>(rec.bands.back().size());

    for (int c : catalog.extension_counts) rec.connected.push_back(c >= 1);

    rec.bands_separated = true;
    for (std::size_t k = 1; k < rec.bands.size(); ++k) {
        double upper = -std::numeric_limits<double>::infinity();
        for (const auto& st : rec.bands[k]) upper = std::max(upper, st.energy);
        double lower = std::numeric_limits<double>::infinity();
        for (const auto& st : rec.bands[k - 1]) lower = std::min(lower, st.energy);
        if (!(upper < lower)) rec.bands_separated = false;
    }
    return rec;
}

SpectrumRecord final_band_spectrum(const IsCatalog& catalog, const DetuningProfile& profile) {
    return final_band_spectrum(catalog, profile.factors, profile.delta0);
}

bool all_subset_bands_separated(const std::vector<double>& factors, double delta0) {
    const std::size_t n = factors.size();
    const std::vector<double> weight = weight_diagonal(factors);
    std::vector<double> upper(n + 1, -std::numeric_limits<double>::infinity());
    std::vector<double> lower(n + 1, std::numeric_limits<double>::infinity());
    for (std::size_t s = 0; s < weight.size(); ++s) {
        const auto k = static_cast<std::size_t>(popcount(s));
        const double e = -0.5 * delta0 * weight[s];
        upper[k] = std::max(upper[k], e);
        lower[k] = std::min(lower[k], e);
    }
    for (std::size_t k = 1; k <= n; ++k) {
        if (!(upper[k] < lower[k - 1])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

LowSpectrumSolver::LowSpectrumSolver(std::size_t levels, std::uint64_t seed) : levels_(levels), seed_(seed) {
    if (levels == 0) fail(ErrorCode::invalid_argument, "at least one level must be requested");
}

std::vector<double> LowSpectrumSolver::solve(const InstantaneousHamiltonian& h) {
    const std::size_t dim = h.dimension();
    ++calls_;

    if (h.omega() == 0.0) {
        std::vector<double> diag(dim);
        for (std::size_t s = 0; s < dim; ++s) diag[s] = h.diagonal(s);
        const std::size_t keep = std::min(levels_, dim);
        std::partial_sort(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(keep), diag.end());
        diag.resize(keep);
        return diag;
    }

    if (dim <= dense_threshold) {
        Eigen::MatrixXd dense(dim, dim);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
        Eigen::VectorXd y(static_cast<Eigen::Index>(dim));
        for (std::size_t j = 0; j < dim; ++j) {
            x[static_cast<Eigen::Index>(j)] = 1.0;
            h.apply(x.data(), y.data());
            dense.col(static_cast<Eigen::Index>(j)) = y;
            x[static_cast<Eigen::Index>(j)] = 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense, Eigen::EigenvaluesOnly);
        const auto& values = eig.eigenvalues();
        std::vector<double> out;
        for (std::size_t i = 0; i < std::min(levels_, dim); ++i) out.push_back(values[static_cast<Eigen::Index>(i)]);
        return out;
    }

    // Block Davidson with the diagonal as preconditioner. Blockade-violating
    // states sit far up the diagonal, so corrections converge in a handful of
    // sweeps. The start block is the previous call's Ritz vectors.
    const auto d = static_cast<Eigen::Index>(dim);
    const auto want = static_cast<Eigen::Index>(std::min(levels_, dim));
    const auto block = std::min<Eigen::Index>(want + 2, d);
    const auto cap = std::min<Eigen::Index>(std::max<Eigen::Index>(static_cast<Eigen::Index>(max_basis), 3 * block), d);

    Eigen::VectorXd diag(d);
    for (Eigen::Index s = 0; s < d; ++s) diag[s] = h.diagonal(static_cast<std::size_t>(s));

    Eigen::MatrixXd basis(d, cap);
    Eigen::MatrixXd image(d, cap);
    Eigen::Index m = 0;
    std::mt19937_64 rng(splitmix64(seed_ + calls_));

    const auto append = [&](Eigen::VectorXd v) -> bool {
        if (m >= cap) return false;
        const double original = v.norm();
        if (!(original > 0.0)) return false;
        for (int pass = 0; pass < 2 && m > 0; ++pass) v -= basis.leftCols(m) * (basis.leftCols(m).transpose() * v);
        const double len = v.norm();
        if (len <= 1e-8 * original) return false;
        basis.col(m) = v / len;
        h.apply(basis.col(m).data(), image.col(m).data());
        ++m;
        return true;
    };
    const auto random_vector = [&] {
        Eigen::VectorXd v(d);
        for (Eigen::Index i = 0; i < d; ++i) v[i] = uniform01(rng) - 0.5;
        return v;
    };

    if (static_cast<Eigen::Index>(warm_.size()) == block) {
        for (const auto& w : warm_) append(Eigen::Map<const Eigen::VectorXd>(w.data(), d));
    } else {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
        for (Eigen::Index i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
        std::partial_sort(order.begin(), order.begin() + block, order.end(),
                          [&](Eigen::Index x, Eigen::Index y) { return diag[x] < diag[y]; });
        for (Eigen::Index i = 0; i < block; ++i) {
            Eigen::VectorXd v = 1e-3 * random_vector();
            v[order[static_cast<std::size_t>(i)]] += 1.0;
            append(std::move(v));
        }
    }
    while (m < block && append(random_vector())) {
    }

    Eigen::VectorXd theta;
    Eigen::MatrixXd ritz;
    Eigen::MatrixXd hritz;
    for (int sweep = 0; sweep < 1000; ++sweep) {
        const Eigen::MatrixXd projected = basis.leftCols(m).transpose() * image.leftCols(m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (projected + projected.transpose()));
        const Eigen::Index k = std::min(block, m);
        theta = eig.eigenvalues().head(k);
        ritz = basis.leftCols(m) * eig.eigenvectors().leftCols(k);
        hritz = image.leftCols(m) * eig.eigenvectors().leftCols(k);

        std::vector<Eigen::VectorXd> corrections;
        bool converged = k >= want;
        for (Eigen::Index i = 0; i < k; ++i) {
            Eigen::VectorXd r = hritz.col(i) - theta[i] * ritz.col(i);
            const bool ok = r.norm() <= residual_tolerance * std::max(1.0, std::abs(theta[i]));
            if (i < want && !ok) converged = false;
            if (ok) continue;
            for (Eigen::Index s = 0; s < d; ++s) {
                double den = theta[i] - diag[s];
                if (std::abs(den) < 1e-8) den = den < 0.0 ? -1e-8 : 1e-8;
                r[s] /= den;
            }
            corrections.push_back(std::move(r));
        }
        if (converged) break;

        if (m + static_cast<Eigen::Index>(corrections.size()) > cap) {
            basis.leftCols(k) = ritz;
            image.leftCols(k) = hritz;
            m = k;
        }
        const Eigen::Index before = m;
        for (auto& c : corrections) append(std::move(c));
        if (m == before && !append(random_vector())) break;
    }
    if (theta.size() < want) fail(ErrorCode::internal_consistency, "eigensolver lost rank");

    warm_.clear();
    for (Eigen::Index i = 0; i < ritz.cols(); ++i) warm_.emplace_back(ritz.col(i).data(), ritz.col(i).data() + d);
    return {theta.data(), theta.data() + want};
}

double instantaneous_gap(const RydbergModel& model, const PulseSchedule& schedule, double t,
                         std::size_t ground_levels) {
    InstantaneousHamiltonian h(model, schedule);
    h.set_time(t);
    LowSpectrumSolver solver(ground_levels + 1);
    const auto levels = solver.solve(h);
    return levels.back() - levels.front();
}

GapResult minimal_gap(const RydbergModel& model, const PulseSchedule& schedule, const GapOptions& options) {
    if (model.size() > options.cap) {
        fail(ErrorCode::cap_exceeded, "minimal gap is limited to " + std::to_string(options.cap) + " atoms");
    }
    if (options.grid_points < 3) fail(ErrorCode::invalid_argument, "gap grid needs at least 3 points");
    if (options.ground_levels < 1) fail(ErrorCode::invalid_argument, "ground_levels must be at least 1");

    InstantaneousHamiltonian h(model, schedule, options.cap);
    LowSpectrumSolver solver(options.ground_levels + 1);
    GapResult result;
    const auto gap_at = [&](double t) {
        h.set_time(t);
        const auto levels = solver.solve(h);
        ++result.evaluations;
        if (levels.size() <= options.ground_levels) return std::numeric_limits<double>::infinity();
        return levels[options.ground_levels] - levels.front();
    };

    const std::size_t points = options.grid_points;
    const double step = schedule.t_f / static_cast<double>(points - 1);
    std::vector<double> gaps(points);
    std::size_t best = 0;
    for (std::size_t i = 0; i < points; ++i) {
        gaps[i] = gap_at(step * static_cast<double>(i));
        if (gaps[i] < gaps[best]) best = i;
    }

    double lo = step * static_cast<double>(best == 0 ? 0 : best - 1);
    double hi = step * static_cast<double>(std::min(best + 1, points - 1));
    result.t_min = step * static_cast<double>(best);
    result.delta_min = gaps[best];

    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double g1 = gap_at(x1);
    double g2 = gap_at(x2);
    const double stop = options.refine_tolerance * schedule.t_f;
    for (int it = 0; it < 100 && hi - lo > stop; ++it) {
        if (g1 < g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - golden * (hi - lo);
            g1 = gap_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + golden * (hi - lo);
            g2 = gap_at(x2);
        }
    }
    for (auto [t, g] : {std::pair{x1, g1}, std::pair{x2, g2}}) {
        if (g < result.delta_min) {
            result.delta_min = g;
            result.t_min = t;
        }
    }

    if (result.delta_min < 1e-12) {
        result.delta_min = 0.0;
        result.degenerate = true;
    }
    return result;
}

}  // namespace ldaqc
