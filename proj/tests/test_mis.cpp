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

#include <array>

#include <map>

#include "ldaqc/error.hpp"
#include "ldaqc/graph.hpp"
#include "ldaqc/mis.hpp"
#include "oracles.hpp"

using namespace ldaqc;

namespace {

oracle::EdgeList edge_list(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

int extension_of(const IsCatalog& cat, VertexSet s) {
    const auto& near = cat.near_maximum_sets();
    const auto it = std::find(near.begin(), near.end(), s);
    REQUIRE(it != near.end());
    return cat.extension_counts[static_cast<std::size_t>(it - near.begin())];
}

}  // namespace

TEST_CASE("small catalogs") {
    const Edge p3e[] = {{0, 1}, {1, 2}};
    const auto p3 = enumerate_independent_sets(Graph::from_edge_list(3, p3e));
    CHECK(p3.mis_size == 2);
    CHECK(p3.maximum_sets() == std::vector<VertexSet>{0b101});
    CHECK(extension_of(p3, 0b001) == 1);
    CHECK(extension_of(p3, 0b010) == 0);
    CHECK(extension_of(p3, 0b100) == 1);

    const Edge p4e[] = {{0, 1}, {1, 2}, {2, 3}};
    const auto p4 = enumerate_independent_sets(Graph::from_edge_list(4, p4e));
    CHECK(p4.mis_size == 2);
    CHECK(p4.mis_count == 3);
    CHECK(extension_of(p4, 0b0001) == 2);
    CHECK(extension_of(p4, 0b0010) == 1);
    CHECK(extension_of(p4, 0b0100) == 1);
    CHECK(extension_of(p4, 0b1000) == 2);
    CHECK(p4.extension_total() == 6);

    const Edge k3e[] = {{0, 1}, {1, 2}, {0, 2}};
    const auto k3 = enumerate_independent_sets(Graph::from_edge_list(3, k3e));
    CHECK(k3.mis_size == 1);
    CHECK(k3.mis_count == 3);
    CHECK(k3.near_maximum_sets() == std::vector<VertexSet>{0});
    CHECK(k3.extension_counts == std::vector<int>{3});
}

TEST_CASE("catalog agrees with the exhaustive scan") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const std::size_t n = 1 + seed % 13;
        const Graph g = random_graph(n, 0.15 + 0.6 * static_cast<double>(seed % 7) / 7.0, seed);
        const auto cat = enumerate_independent_sets(g);
        const auto ref = oracle::catalog(static_cast<int>(n), edge_list(g));
        REQUIRE(cat.mis_size == ref.mis_size);
        for (int k = 0; k <= ref.mis_size; ++k) {
            auto mine = cat.stratum(k);
            auto theirs = ref.by_size[static_cast<std::size_t>(k)];
            CHECK(mine == theirs);  // both ascending
        }
        CHECK(cat.near_maximum_sets() == ref.near);
        CHECK(cat.extension_counts == ref.extension);
        CHECK(extension_counts_top_down(cat) == cat.extension_counts);
        CHECK(cat.extension_total() == static_cast<long long>(cat.mis_size) * static_cast<long long>(cat.mis_count));
    }
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate_independent_sets(random_graph(21, 0.5, 3)), Error);
    CHECK_THROWS_AS(enumerate_independent_sets(random_graph(8, 0.5, 3), 7), Error);
}

TEST_CASE("branch and bound") {
    const Edge k3e[] = {{0, 1}, {1, 2}, {0, 2}};
    CHECK(solve_mis(Graph::from_edge_list(3, k3e)).size == 1);
    const Edge s3e[] = {{0, 1}, {0, 2}, {0, 3}};
    const auto s3 = solve_mis(Graph::from_edge_list(4, s3e));
    CHECK(s3.size == 3);
    CHECK(s3.witness == 0b1110);

    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Graph g = random_graph(6 + seed % 11, 0.1 + 0.05 * static_cast<double>(seed % 9), seed * 31 + 1);
        const auto sol = solve_mis(g);
        CHECK(oracle::independent(edge_list(g), sol.witness));
        CHECK(oracle::bits(sol.witness) == sol.size);
        CHECK(sol.size == oracle::catalog(static_cast<int>(g.size()), edge_list(g)).mis_size);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g;
        try {
            g = build_kings_graph(3, 4, 0.1, seed);
        } catch (const Error&) {
            continue;
        }
        CHECK(solve_mis(g).size == enumerate_independent_sets(g).mis_size);
    }
    // beyond the enumeration cap
    const Graph big = build_kings_graph(6, 8, 0.0, 1);
    CHECK(solve_mis(big).size == 12);
}

TEST_CASE("membership by degree") {
    const Edge s3e[] = {{0, 1}, {0, 2}, {0, 3}};
    const auto s3 = membership_probability_by_degree({Graph::from_edge_list(4, s3e)});
    CHECK(s3.at(1).empirical == 1.0);
    CHECK(s3.at(3).empirical == 0.0);
    CHECK(s3.at(1).samples == 3);

    const Edge k3e[] = {{0, 1}, {1, 2}, {0, 2}};
    const auto k3 = membership_probability_by_degree({Graph::from_edge_list(3, k3e)});
    CHECK(k3.at(2).empirical == doctest::Approx(1.0 / 3.0));
    const auto k3_any = membership_probability_by_degree({Graph::from_edge_list(3, k3e)}, MembershipRule::any_mis);
    CHECK(k3_any.at(2).empirical == 1.0);
    CHECK(k3.at(2).analytic == doctest::Approx(std::pow(1.0 - 1.0 / 3.0, 2)));

    // canonical rule: only the lowest-bitmask MIS {0}
    const auto canon = membership_probability_by_degree({Graph::from_edge_list(3, k3e)}, MembershipRule::canonical_mis);
    CHECK(canon.at(2).empirical == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(membership_probability_by_degree({}), Error);

    // independent tally on a small ensemble
    std::vector<Graph> ens;
    for (std::uint64_t s = 0; s < 30; ++s) ens.push_back(random_graph(8, 0.35, s));
    std::map<int, std::array<double, 3>> tally;
    for (const auto& g : ens) {
        const auto ref = oracle::catalog(8, edge_list(g));
        oracle::Mask uni = 0;
        for (auto m : ref.mis) uni |= m;
        for (int v = 0; v < 8; ++v) {
            auto& t = tally[g.degree(v)];
            double in = 0;
            for (auto m : ref.mis) in += (m >> v) & 1;
            t[0] += in / static_cast<double>(ref.mis.size());
            t[1] += (uni >> v) & 1;
            t[2] += 1;
        }
    }
    const auto uniform = membership_probability_by_degree(ens);
    const auto any = membership_probability_by_degree(ens, MembershipRule::any_mis);
    for (const auto& [d, t] : tally) {
        CHECK(uniform.at(d).empirical == doctest::Approx(t[0] / t[2]).epsilon(1e-12));
        CHECK(any.at(d).empirical == doctest::Approx(t[1] / t[2]).epsilon(1e-12));
    }
}
