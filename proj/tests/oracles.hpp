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

// Brute-force reference implementations. Nothing here calls into the
// library's algorithms; inputs are plain edge lists and degree vectors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mask = std::uint64_t;
using EdgeList = std::vector<std::pair<int, int>>;

inline int bits(Mask s) { return __builtin_popcountll(s); }

inline bool independent(const EdgeList& edges, Mask s) {
    for (auto [u, v] : edges) {
        if ((s >> u & 1) && (s >> v & 1)) return false;
    }
    return true;
}

inline std::vector<int> degrees(int n, const EdgeList& edges) {
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
        ++d[static_cast<std::size_t>(u)];
        ++d[static_cast<std::size_t>(v)];
    }
    return d;
}

struct Catalog {
    std::vector<std::vector<Mask>> by_size;
    int mis_size = 0;
    std::vector<Mask> mis;
    std::vector<Mask> near;       // size |MIS| - 1
    std::vector<int> extension;   // c_j aligned with near
};

/// Full 2^N scan; c_j by testing every MIS for containment.
inline Catalog catalog(int n, const EdgeList& edges) {
    Catalog c;
    c.by_size.assign(static_cast<std::size_t>(n) + 1, {});
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if (independent(edges, s)) c.by_size[static_cast<std::size_t>(bits(s))].push_back(s);
    }
    while (c.by_size.back().empty()) c.by_size.pop_back();
    c.mis_size = static_cast<int>(c.by_size.size()) - 1;
    c.mis = c.by_size.back();
    if (c.mis_size >= 1) {
        c.near = c.by_size[static_cast<std::size_t>(c.mis_size - 1)];
        for (Mask s : c.near) {
            int count = 0;
            for (Mask m : c.mis) count += (m & s) == s;
            c.extension.push_back(count);
        }
    }
    return c;
}

inline double hp_trad(const Catalog& c) {
    return static_cast<double>(c.near.size()) /
           (static_cast<double>(c.mis_size) * static_cast<double>(c.mis.size()));
}

/// Energy-weighted hardness from per-vertex factors, w_j = 1/|E_j - mean E_MIS|.
inline double hp_ld(const Catalog& c, const std::vector<double>& f, double delta0, bool binary) {
    const auto energy = [&](Mask s) {
        double e = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (s >> i & 1) e += f[i];
        }
        return -0.5 * delta0 * e;
    };
    double mean = 0.0;
    for (Mask m : c.mis) mean += energy(m);
    mean /= static_cast<double>(c.mis.size());
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < c.near.size(); ++j) {
        const double w = 1.0 / std::abs(energy(c.near[j]) - mean);
        const double cj = binary ? std::min(c.extension[j], 1) : c.extension[j];
        num += w;
        den += w * cj;
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// Algorithm 1 by direct transcription on sorted sequences.

inline std::vector<double> sorted_factors(std::vector<int> deg, const std::function<double(int, double)>& f, double a) {
    std::sort(deg.begin(), deg.end());
    std::vector<double> out;
    for (int d : deg) out.push_back(f(d, a));
    return out;
}

inline double d_k(const std::vector<double>& f, int k) {
    const int n = static_cast<int>(f.size());
    double s = 0.0;
    for (int i = n - k; i <= n - 1; ++i) s += f[static_cast<std::size_t>(i)];
    for (int i = 0; i <= k - 2; ++i) s -= f[static_cast<std::size_t>(i)];
    return s;
}

inline int k_star(std::vector<int> deg) {
    std::sort(deg.begin(), deg.end());
    const int n = static_cast<int>(deg.size());
    for (int k = 1; k <= n; ++k) {
        const int hi = n - k - 1;
        if (hi < 0 || deg[static_cast<std::size_t>(k - 1)] >= deg[static_cast<std::size_t>(hi)]) return k;
    }
    return n;
}

/// min_k D_k(a) by exhaustive k.
inline double min_d(const std::vector<double>& f) {
    double best = 1e300;
    for (int k = 1; k <= static_cast<int>(f.size()); ++k) best = std::min(best, d_k(f, k));
    return best;
}

/// First zero of a ↦ min_k D_k(a) on [0, a_max] by fine scan then bisection.
inline double first_root(const std::function<double(double)>& g, double a_max) {
    const int scan = 4000;
    double lo = 0.0;
    for (int i = 1; i <= scan; ++i) {
        const double a = a_max * i / scan;
        if (g(a) <= 0.0) {
            double hi = a;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (g(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        lo = a;
    }
    return a_max;
}

// ---------------------------------------------------------------------------
// Dense quantum reference.

/// H = sum_i [omega X_i - det_i n_i] + sum_E U n_i n_j via Kronecker products;
/// bit i of the basis index is qubit i.
inline Eigen::MatrixXd dense_hamiltonian(int n, const EdgeList& edges, const std::vector<double>& u, double omega,
                                         const std::vector<double>& det) {
    Eigen::Matrix2d x, nn, id;
    x << 0, 1, 1, 0;
    nn << 0, 0, 0, 1;
    id.setIdentity();
    const auto embed = [&](const std::vector<Eigen::Matrix2d>& ops) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Ones(1, 1);
        for (int q = 0; q < n; ++q) {
            const auto& op = ops[static_cast<std::size_t>(q)];
            Eigen::MatrixXd next(2 * m.rows(), 2 * m.cols());
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = op(r, c) * m;
            m = std::move(next);
        }
        return m;
    };
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        std::vector<Eigen::Matrix2d> ops(static_cast<std::size_t>(n), id);
        ops[static_cast<std::size_t>(i)] = omega * x - det[static_cast<std::size_t>(i)] * nn;
        h += embed(ops);
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        std::vector<Eigen::Matrix2d> ops(static_cast<std::size_t>(n), id);
        ops[static_cast<std::size_t>(edges[e].first)] = nn;
        ops[static_cast<std::size_t>(edges[e].second)] = nn;
        h += u[e] * embed(ops);
    }
    return h;
}

/// Classical RK4 for i d/dt psi = H(t) psi from basis state 0.
inline Eigen::VectorXcd rk4(const std::function<Eigen::MatrixXd(double)>& h, Eigen::Index dim, double t_f, int steps) {
    using V = Eigen::VectorXcd;
    V psi = V::Zero(dim);
    psi[0] = 1.0;
    const std::complex<double> mi(0.0, -1.0);
    const double dt = t_f / steps;
    const auto f = [&](double t, const V& v) -> V { return mi * (h(t).cast<std::complex<double>>() * v); };
    for (int s = 0; s < steps; ++s) {
        const double t = s * dt;
        const V k1 = f(t, psi);
        const V k2 = f(t + dt / 2, psi + dt / 2 * k1);
        const V k3 = f(t + dt / 2, psi + dt / 2 * k2);
        const V k4 = f(t + dt, psi + dt * k3);
        psi += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Statistics by their textbook definitions.

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

/// Rank = 1 + #smaller + (#equal - 1)/2.
inline std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double less = 0, equal = 0;
        for (double v : x) {
            less += v < x[i];
            equal += v == x[i];
        }
        r[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(ranks(x), ranks(y));
}

/// Szekely's sample distance correlation.
inline double dcor(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    const auto centred = [&](const std::vector<double>& v) {
        Eigen::MatrixXd a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = std::abs(v[i] - v[j]);
        const Eigen::VectorXd row = a.rowwise().mean();
        const Eigen::VectorXd col = a.colwise().mean();
        const double all = a.mean();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) += all - row[i] - col[j];
        return a;
    };
    const Eigen::MatrixXd a = centred(x), b = centred(y);
    const double vxy = (a.array() * b.array()).mean();
    const double vxx = (a.array() * a.array()).mean();
    const double vyy = (b.array() * b.array()).mean();
    return std::sqrt(vxy / std::sqrt(vxx * vyy));
}

/// ln a - b ln x least squares with the normal equations written out.
inline std::pair<double, double> power_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    return {std::exp(icept), -slope};
}

}  // namespace oracle
