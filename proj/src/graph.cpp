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

#include "ldaqc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ldaqc/error.hpp"
#include "ldaqc/random.hpp"

namespace ldaqc {

std::vector<int> members(VertexSet s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(s)));
    while (s != 0) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> edges,
                            std::optional<std::vector<Point>> positions) {
    if (n > kMaxVertices) {
        fail(ErrorCode::invalid_argument,
             "graph has " + std::to_string(n) + " vertices; at most 64 are supported");
    }
    if (positions && positions->size() != n) {
        fail(ErrorCode::invalid_argument, "position count does not match vertex count");
    }

    Graph g;
    g.n_ = n;
    g.adjacency_.assign(n, 0);
    g.degrees_.assign(n, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
            fail(ErrorCode::invalid_argument, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                  ") has an endpoint out of range");
        }
        if (u == v) {
            fail(ErrorCode::invalid_argument, "self-loop on vertex " + std::to_string(u));
        }
        g.edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    for (auto [u, v] : g.edges_) {
        g.adjacency_[static_cast<std::size_t>(u)] |= bit(static_cast<std::size_t>(v));
        g.adjacency_[static_cast<std::size_t>(v)] |= bit(static_cast<std::size_t>(u));
        ++g.degrees_[static_cast<std::size_t>(u)];
        ++g.degrees_[static_cast<std::size_t>(v)];
    }
    g.positions_ = std::move(positions);
    return g;
}

int Graph::max_degree() const {
    return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

bool Graph::is_independent(VertexSet s) const {
    for (VertexSet rest = s; rest != 0; rest &= rest - 1) {
        if (adjacency_[static_cast<std::size_t>(std::countr_zero(rest))] & s) return false;
    }
    return true;
}

std::span<const Point> Graph::positions() const {
    if (!positions_) fail(ErrorCode::invalid_argument, "graph has no vertex positions");
    return *positions_;
}

double Graph::distance(int u, int v) const {
    auto pos = positions();
    const Point& a = pos[static_cast<std::size_t>(u)];
    const Point& b = pos[static_cast<std::size_t>(v)];
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool Graph::check_invariants() const {
    std::vector<int> recount(n_, 0);
    for (auto [u, v] : edges_) {
        if (u == v || u < 0 || v < 0) return false;
        if (static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_) return false;
        ++recount[static_cast<std::size_t>(u)];
        ++recount[static_cast<std::size_t>(v)];
    }
    if (recount != degrees_) return false;
    for (std::size_t v = 0; v < n_; ++v) {
        if (popcount(adjacency_[v]) != degrees_[v]) return false;
        if (adjacency_[v] & bit(v)) return false;
    }
    return true;
}

Graph build_kings_graph(int rows, int cols, double hole_probability, std::uint64_t seed) {
    if (rows < 1 || cols < 1) {
        fail(ErrorCode::invalid_argument, "grid dimensions must be positive");
    }
    if (!(hole_probability >= 0.0 && hole_probability <= 1.0)) {
        fail(ErrorCode::invalid_argument, "hole probability must lie in [0, 1]");
    }

    std::mt19937_64 rng(seed);
    std::vector<Point> sites;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const bool hole = uniform01(rng) < hole_probability;
            if (!hole) sites.push_back({static_cast<double>(c), static_cast<double>(r)});
        }
    }
    if (sites.empty()) {
        fail(ErrorCode::empty_instance, "every lattice site was removed; resample the instance");
    }
    if (sites.size() > kMaxVertices) {
        fail(ErrorCode::invalid_argument, "lattice leaves more than 64 sites");
    }

    constexpr double kReach = 1.4142135623730951 + 1e-9;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            const double d = std::hypot(sites[i].x - sites[j].x, sites[i].y - sites[j].y);
            if (d <= kReach) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    const std::size_t n = sites.size();
    return Graph::from_edge_list(n, edges, std::move(sites));
}

Graph random_graph(std::size_t n, double edge_probability, std::uint64_t seed) {
    if (n > kMaxVertices) fail(ErrorCode::cap_exceeded, "graphs are limited to 64 vertices");
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
        fail(ErrorCode::invalid_argument, "edge probability must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (uniform01(rng) < edge_probability) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
    }
    return Graph::from_edge_list(n, edges);
}

std::size_t kings_edge_count(int rows, int cols) {
    const auto r = static_cast<std::size_t>(rows);
    const auto c = static_cast<std::size_t>(cols);
    return r * (c - 1) + c * (r - 1) + 2 * (r - 1) * (c - 1);
}

DegreeOrder degree_order(const Graph& g) {
    DegreeOrder order;
    order.permutation.resize(g.size());
    std::iota(order.permutation.begin(), order.permutation.end(), 0);
    std::stable_sort(order.permutation.begin(), order.permutation.end(),
                     [&](int a, int b) { return g.degree(a) < g.degree(b); });
    order.sorted_degrees.reserve(g.size());
    for (int v : order.permutation) order.sorted_degrees.push_back(g.degree(v));
    return order;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.size() << ' ' << g.edges().size() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (g.has_positions()) {
        std::ostringstream line;
        line.precision(17);
        for (const Point& p : g.positions()) {
            line.str({});
            line << p.x << ' ' << p.y << '\n';
            out << line.str();
        }
    }
}

Graph read_graph(std::istream& in) {
    long long n = -1;
    long long m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) {
        fail(ErrorCode::io, "graph file: expected header \"N M\"");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        long long u = 0;
        long long v = 0;
        if (!(in >> u >> v)) fail(ErrorCode::io, "graph file: truncated edge list");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }

    std::vector<double> rest{std::istream_iterator<double>(in), std::istream_iterator<double>()};
    if (!in.eof()) fail(ErrorCode::io, "graph file: unparseable trailing content");
    std::optional<std::vector<Point>> positions;
    if (!rest.empty()) {
        if (rest.size() != 2 * static_cast<std::size_t>(n)) {
            fail(ErrorCode::io, "graph file: expected " + std::to_string(n) + " position lines");
        }
        positions.emplace();
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            positions->push_back({rest[2 * i], rest[2 * i + 1]});
        }
    }
    return Graph::from_edge_list(static_cast<std::size_t>(n), edges, std::move(positions));
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
    write_graph(out, g);
    if (!out) fail(ErrorCode::io, "failed writing " + path);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open " + path);
    return read_graph(in);
}

}  // namespace ldaqc
