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
#include <random>

#include "ldaqc/detuning.hpp"
#include "ldaqc/error.hpp"
#include "ldaqc/graph.hpp"
#include "ldaqc/random.hpp"
#include "oracles.hpp"

using namespace ldaqc;

namespace {

Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edge_list(static_cast<std::size_t>(n), e);
}

Graph star3() {
    const Edge e[] = {{0, 1}, {0, 2}, {0, 3}};
    return Graph::from_edge_list(4, e);
}

double linear(int d, double a) { return 1.0 - a * d; }

}  // namespace

TEST_CASE("profile families") {
    const auto lin = ProfileFamily::linear();
    const auto ex = ProfileFamily::exponential();
    const auto pw = ProfileFamily::power_law();
    for (double a : {0.0, 0.1, 0.5, 1.0}) {
        CHECK(lin(0, a) == 1.0);
        CHECK(ex(0, a) == 1.0);
        CHECK(pw(0, a) == 1.0);
    }
    CHECK(lin(3, 0.2) == doctest::Approx(0.4));
    CHECK(ex(2, 0.5) == doctest::Approx(std::exp(-1.0)));
    CHECK(pw(3, 0.5) == doctest::Approx(0.5));
    CHECK(lin.a_max(4) == doctest::Approx(0.25));
    CHECK(lin.a_max(0) == 1.0);
    CHECK(ex.a_max(8) == 1.0);
    for (const auto* fam : {&lin, &ex, &pw}) {
        for (int d = 0; d < 8; ++d) {
            for (double a = 0.0; a <= fam->a_max(8); a += 0.01) {
                CHECK((*fam)(d + 1, a) <= (*fam)(d, a));
                CHECK((*fam)(d, a) >= 0.0);
                CHECK((*fam)(d, a) <= 1.0);
            }
        }
    }
    CHECK(profile_kind_from_string("power_law") == ProfileKind::power_law);
    CHECK_THROWS_AS(profile_kind_from_string("cubic"), Error);
}

TEST_CASE("difference function on P4") {
    const auto o = degree_order(path(4));
    const auto lin = ProfileFamily::linear();
    for (double a : {0.0, 0.1, 0.25}) {
        CHECK(difference_function(o, lin, a, 1) == doctest::Approx(1 - 2 * a));
        CHECK(difference_function(o, lin, a, 2) == doctest::Approx(1 - 3 * a));
        CHECK(epsilon(o, lin, a, 1) == doctest::Approx(-a));
        CHECK(epsilon(o, lin, a, 2) == doctest::Approx(0.0));
        CHECK(epsilon(o, lin, a, 3) == doctest::Approx(a));
    }
    for (int k = 1; k <= 4; ++k) CHECK(difference_function(o, lin, 0.0, k) == doctest::Approx(1.0));
    CHECK_THROWS_AS(difference_function(o, lin, 0.1, 0), Error);
    CHECK_THROWS_AS(difference_function(o, lin, 0.1, 5), Error);
    CHECK_THROWS_AS(epsilon(o, lin, 0.1, 4), Error);

    const auto b = root_existence_bound(o, lin, 0.2, 2);
    CHECK(b.bound == doctest::Approx(0.6));
    CHECK(b.satisfied);
    CHECK(root_existence_bound(o, lin, 0.0, 3).satisfied);
    const auto b1 = root_existence_bound(o, lin, 0.2, 1);
    CHECK(b1.bound == doctest::Approx(difference_function(o, lin, 0.2, 1)));
}

TEST_CASE("k star and a star anchors") {
    const auto lin = ProfileFamily::linear();
    const auto p4 = degree_order(path(4));
    CHECK(find_k_star(p4) == 2);
    CHECK(solve_a_star(p4, lin).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const auto s3 = degree_order(star3());
    CHECK(find_k_star(s3) == 1);
    CHECK(solve_a_star(s3, lin).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const Edge ring[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    CHECK(find_k_star(degree_order(Graph::from_edge_list(5, ring))) == 1);

    const Graph empty = Graph::from_edge_list(5, std::span<const Edge>{});
    const auto a = solve_a_star(degree_order(empty), lin);
    CHECK(a.unconstrained);
    const auto prof = engineer_detunings(empty, lin, 1.0);
    for (double f : prof.factors) CHECK(f == 1.0);
}

TEST_CASE("engineered profiles on paths") {
    const auto lin = ProfileFamily::linear();
    const auto p4 = engineer_detunings(path(4), lin, 1.0, 0.99);
    CHECK(p4.a_used == doctest::Approx(0.33).epsilon(1e-9));
    const auto o = degree_order(path(4));
    CHECK(difference_function(o, lin, p4.a_used, 1) == doctest::Approx(0.34));
    CHECK(difference_function(o, lin, p4.a_used, 2) == doctest::Approx(0.01));
    CHECK(difference_function(o, lin, p4.a_used, 3) == doctest::Approx(0.01));
    CHECK(difference_function(o, lin, p4.a_used, 4) == doctest::Approx(0.34));

    const auto p3 = engineer_detunings(path(3), lin, 1.0);
    CHECK(p3.k_star == 1);
    CHECK(p3.a_star == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(p3.a_used == doctest::Approx(0.495));
    CHECK(p3.factors[0] == doctest::Approx(0.505));
    CHECK(p3.factors[1] == doctest::Approx(0.01));
    CHECK(p3.factors[2] == doctest::Approx(0.505));
}

TEST_CASE("algorithm 1 against direct transcription") {
    std::mt19937_64 rng(11);
    const std::function<double(int, double)> fams[] = {
        linear, [](int d, double a) { return std::exp(-a * d); }, [](int d, double a) { return std::pow(1.0 + d, -a); }};
    const ProfileFamily lib[] = {ProfileFamily::linear(), ProfileFamily::exponential(), ProfileFamily::power_law()};
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const std::size_t n = 2 + seed % 14;
        const Graph g = random_graph(n, 0.1 + 0.6 * uniform01(rng), seed + 500);
        const auto deg = oracle::degrees(static_cast<int>(n), {g.edges().begin(), g.edges().end()});
        const auto o = degree_order(g);
        CHECK(find_k_star(o) == oracle::k_star(deg));
        CHECK(find_k_star(o) <= static_cast<int>(n) / 2 + 1);
        for (int fi = 0; fi < 3; ++fi) {
            const double amax = lib[fi].a_max(g.max_degree());
            const auto f_of = [&](double a) { return oracle::sorted_factors(deg, fams[fi], a); };
            // a* is the first zero of min_k D_k
            const auto root = solve_a_star(o, lib[fi]);
            const double ref = oracle::first_root([&](double a) { return oracle::min_d(f_of(a)); }, amax);
            if (root.unconstrained) {
                CHECK(ref == doctest::Approx(amax));
            } else {
                CHECK(root.value == doctest::Approx(ref).epsilon(1e-7));
                CHECK(std::abs(difference_function(o, lib[fi], root.value, find_k_star(o))) <= 1e-10);
            }
            // D_k, epsilon and the global minimum at k*
            for (int rep = 0; rep < 3; ++rep) {
                const double a = amax * uniform01(rng);
                const auto f = f_of(a);
                for (int k = 1; k <= static_cast<int>(n); ++k) {
                    CHECK(difference_function(o, lib[fi], a, k) == doctest::Approx(oracle::d_k(f, k)).epsilon(1e-12));
                }
                CHECK(difference_function(o, lib[fi], a, oracle::k_star(deg)) <= oracle::min_d(f) + 1e-12);
                for (int k = 1; k < static_cast<int>(n); ++k) {
                    const double e = epsilon(o, lib[fi], a, k);
                    CHECK(std::abs(e - (oracle::d_k(f, k + 1) - oracle::d_k(f, k))) <= 1e-12);
                    if (k > 1) CHECK(e >= epsilon(o, lib[fi], a, k - 1) - 1e-12);
                }
            }
            const auto prof = engineer_detunings(g, lib[fi], 2.0);
            const auto fu = f_of(prof.a_used);
            for (int k = 1; k <= static_cast<int>(n); ++k) CHECK(oracle::d_k(fu, k) > 0.0);
            for (std::size_t v = 0; v < n; ++v) {
                CHECK(prof.factors[v] > 0.0);
                CHECK(prof.factors[v] == fams[fi](g.degree(static_cast<int>(v)), prof.a_used));
                if (g.degree(static_cast<int>(v)) == 0) CHECK(prof.factors[v] == 1.0);
            }
        }
    }
}

TEST_CASE("custom family hook") {
    auto fam = ProfileFamily::custom("halving", [](int d, double a) { return std::pow(1.0 - 0.5 * a, d); },
                                     [](int) { return 1.0; });
    CHECK(fam.kind() == ProfileKind::custom);
    CHECK(fam.name() == "halving");
    const auto prof = engineer_detunings(path(4), fam, 1.0);
    CHECK(prof.a_used > 0.0);

    // a family that increases with degree breaks the ordering and is rejected
    auto bad = ProfileFamily::custom("rising", [](int d, double a) { return 1.0 + a * d; }, [](int) { return 1.0; });
    CHECK_THROWS_AS(engineer_detunings(path(4), bad, 1.0), Error);
}

TEST_CASE("blockade bound") {
    DetuningProfile p;
    p.delta0 = 2.0;
    p.factors = {1.0, 0.5};
    CHECK(check_blockade(p, 1.5));
    CHECK_FALSE(check_blockade(p, 0.9));
    // defaults: delta0 = 16, C6 = 128, diagonal U = 128 / 8 = 16 > 8
    const Graph g = build_kings_graph(3, 4, 0.0, 1);
    const auto prof = engineer_detunings(g, ProfileFamily::linear(), 16.0);
    CHECK(check_blockade(prof, 128.0 / 8.0));
}
