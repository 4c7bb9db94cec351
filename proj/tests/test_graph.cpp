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
#include <sstream>

#include "ldaqc/error.hpp"
#include "ldaqc/graph.hpp"
#include "oracles.hpp"

using namespace ldaqc;

namespace {

Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edge_list(static_cast<std::size_t>(n), e);
}

}  // namespace

TEST_CASE("king lattice without holes") {
    const Graph pair = build_kings_graph(1, 2, 0.0, 5);
    CHECK(pair.size() == 2);
    CHECK(pair.edges().size() == 1);
    CHECK(pair.degrees() == std::vector<int>{1, 1});

    const Graph square = build_kings_graph(2, 2, 0.0, 9);
    CHECK(square.size() == 4);
    CHECK(square.edges().size() == 6);

    for (int r = 1; r <= 5; ++r) {
        for (int c = 1; c <= 5; ++c) {
            const Graph g = build_kings_graph(r, c, 0.0, 1);
            CHECK(g.edges().size() == kings_edge_count(r, c));
            CHECK(kings_edge_count(r, c) ==
                  static_cast<std::size_t>(r * (c - 1) + c * (r - 1) + 2 * (r - 1) * (c - 1)));
        }
    }
}

TEST_CASE("king lattice with holes") {
    const Graph g = build_kings_graph(3, 3, 0.3, 42);
    const Graph again = build_kings_graph(3, 3, 0.3, 42);
    CHECK(g == again);
    // Golden instance from the seeded generator.
    CHECK(g.size() == 6);
    CHECK(g.edges().size() == 8);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Graph h;
        try {
            h = build_kings_graph(4, 4, 0.35, seed);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::empty_instance);
            continue;
        }
        CHECK(h.check_invariants());
        int sum = 0;
        for (int d : h.degrees()) sum += d;
        CHECK(sum == 2 * static_cast<int>(h.edges().size()));
        // edge iff distance <= sqrt(2)
        for (int u = 0; u < static_cast<int>(h.size()); ++u) {
            for (int v = u + 1; v < static_cast<int>(h.size()); ++v) {
                const auto p = h.positions()[static_cast<std::size_t>(u)];
                const auto q = h.positions()[static_cast<std::size_t>(v)];
                const double dist = std::hypot(p.x - q.x, p.y - q.y);
                CHECK(h.adjacent(u, v) == (dist <= std::sqrt(2.0) + 1e-9));
            }
        }
    }
}

TEST_CASE("king lattice argument errors") {
    CHECK_THROWS_AS(build_kings_graph(3, 3, 1.5, 1), Error);
    CHECK_THROWS_AS(build_kings_graph(3, 3, -0.1, 1), Error);
    try {
        build_kings_graph(2, 2, 1.0, 1);
        FAIL("expected empty instance");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::empty_instance);
    }
}

TEST_CASE("edge lists") {
    const Edge p3[] = {{0, 1}, {1, 2}};
    CHECK(Graph::from_edge_list(3, p3).degrees() == std::vector<int>{1, 2, 1});
    CHECK(path(4).degrees() == std::vector<int>{1, 2, 2, 1});
    const Edge s3[] = {{0, 1}, {0, 2}, {0, 3}};
    CHECK(Graph::from_edge_list(4, s3).degrees() == std::vector<int>{3, 1, 1, 1});

    const Edge dup[] = {{0, 1}, {1, 0}, {0, 1}};
    CHECK(Graph::from_edge_list(2, dup).edges().size() == 1);

    const Edge loop[] = {{1, 1}};
    CHECK_THROWS_AS(Graph::from_edge_list(2, loop), Error);
    const Edge out[] = {{0, 3}};
    CHECK_THROWS_AS(Graph::from_edge_list(3, out), Error);
}

TEST_CASE("degree order") {
    const auto p4 = degree_order(path(4));
    CHECK(p4.sorted_degrees == std::vector<int>{1, 1, 2, 2});
    CHECK(p4.permutation == std::vector<int>{0, 3, 1, 2});

    const Edge s3[] = {{0, 1}, {0, 2}, {0, 3}};
    CHECK(degree_order(Graph::from_edge_list(4, s3)).sorted_degrees == std::vector<int>{1, 1, 1, 3});

    const Edge one[] = {{1, 2}};
    CHECK(degree_order(Graph::from_edge_list(3, one)).sorted_degrees == std::vector<int>{0, 1, 1});

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Graph g = random_graph(10, 0.3, seed);
        const auto o = degree_order(g);
        std::vector<int> seen(g.size(), 0);
        for (std::size_t r = 0; r < g.size(); ++r) {
            ++seen[static_cast<std::size_t>(o.permutation[r])];
            CHECK(o.sorted_degrees[r] == g.degree(o.permutation[r]));
            if (r > 0) {
                CHECK(o.sorted_degrees[r - 1] <= o.sorted_degrees[r]);
                if (o.sorted_degrees[r - 1] == o.sorted_degrees[r]) CHECK(o.permutation[r - 1] < o.permutation[r]);
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
}

TEST_CASE("graph text format round trip") {
    const Graph g = build_kings_graph(3, 4, 0.2, 77);
    std::stringstream ss;
    write_graph(ss, g);
    CHECK(read_graph(ss) == g);

    const Graph bare = path(5);
    std::stringstream ss2;
    write_graph(ss2, bare);
    const Graph back = read_graph(ss2);
    CHECK(back == bare);
    CHECK_FALSE(back.has_positions());

    std::stringstream bad("3 2\n0 1\n");
    CHECK_THROWS_AS(read_graph(bad), Error);
}
