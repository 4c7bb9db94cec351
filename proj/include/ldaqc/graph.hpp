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

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ldaqc {

/// Bitmask over vertex ids; bit i set means vertex i is a member.
using VertexSet = std::uint64_t;

inline constexpr std::size_t kMaxVertices = 64;

inline constexpr VertexSet bit(std::size_t v) { return VertexSet{1} << v; }

inline constexpr VertexSet full_set(std::size_t n) {
    return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

inline int popcount(VertexSet s) { return std::popcount(s); }

std::vector<int> members(VertexSet s);

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

using Edge = std::pair<int, int>;

/// Undirected simple graph with optional 2-D embedding, limited to 64
/// vertices so every vertex subset fits in a single VertexSet.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Duplicate edges are merged; self
    /// loops and out-of-range endpoints throw.
    static Graph from_edge_list(std::size_t n, std::span<const Edge> edges,
                                std::optional<std::vector<Point>> positions = std::nullopt);

    std::size_t size() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& degrees() const { return degrees_; }
    int degree(int v) const { return degrees_[static_cast<std::size_t>(v)]; }
    int max_degree() const;

    VertexSet neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
    bool adjacent(int u, int v) const { return (adjacency_[static_cast<std::size_t>(u)] & bit(static_cast<std::size_t>(v))) != 0; }
    bool is_independent(VertexSet s) const;
    VertexSet all() const { return full_set(n_); }

    bool has_positions() const { return positions_.has_value(); }
    std::span<const Point> positions() const;
    double distance(int u, int v) const;

    /// Recomputes degrees from the edge list and checks the stored values,
    /// endpoint ranges and absence of self loops.
    bool check_invariants() const;

    bool operator==(const Graph&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> degrees_;
    std::vector<VertexSet> adjacency_;
    std::optional<std::vector<Point>> positions_;
};

/// King's-graph lattice with random holes. Each site of a rows x cols grid is
/// removed independently with probability hole_probability; survivors keep
/// their integer coordinates and are numbered in row-major order. Sites at
/// distance 1 or sqrt(2) are joined.
Graph build_kings_graph(int rows, int cols, double hole_probability, std::uint64_t seed);

/// Erdos-Renyi G(n, p) without positions.
Graph random_graph(std::size_t n, double edge_probability, std::uint64_t seed);

/// Closed-form edge count of a hole-free rows x cols king lattice.
std::size_t kings_edge_count(int rows, int cols);

struct DegreeOrder {
    std::vector<int> permutation;     // sorted rank -> vertex id
    std::vector<int> sorted_degrees;  // nondecreasing
};

/// Vertices by ascending degree, ties broken by ascending id.
DegreeOrder degree_order(const Graph& g);

// Text format: "N M", then M lines "u v", then optionally N lines "x y".
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

}  // namespace ldaqc
