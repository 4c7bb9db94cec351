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

#include "ldaqc/mis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "ldaqc/error.hpp"

namespace ldaqc {

VertexSet IsCatalog::mis_union() const {
    VertexSet u = 0;
    for (VertexSet s : maximum_sets()) u |= s;
    return u;
}

bool IsCatalog::is_mis(VertexSet s) const {
    const auto& top = maximum_sets();
    return std::binary_search(top.begin(), top.end(), s);
}

long long IsCatalog::extension_total() const {
    long long total = 0;
    for (int c : extension_counts) total += c;
    return total;
}

namespace {

void collect(const Graph& g, VertexSet current, VertexSet candidates, int size,
             std::vector<std::vector<VertexSet>>& by_size) {
    by_size[static_cast<std::size_t>(size)].push_back(current);
    while (candidates != 0) {
        const int v = std::countr_zero(candidates);
        candidates &= candidates - 1;
        // Later candidates only: each set is generated once, from its lowest member upward.
        collect(g, current | bit(static_cast<std::size_t>(v)), candidates & ~g.neighbors(v), size + 1,
                by_size);
    }
}

}  // namespace

IsCatalog enumerate_independent_sets(const Graph& g, std::size_t max_n) {
    if (g.size() > max_n) {
        fail(ErrorCode::cap_exceeded, "graph has " + std::to_string(g.size()) +
                                          " vertices, above the enumeration cap of " +
                                          std::to_string(max_n) + "; use solve_mis instead");
    }
    IsCatalog cat;
    cat.n = g.size();
    cat.by_size.resize(g.size() + 1);
    collect(g, 0, g.all(), 0, cat.by_size);
    while (cat.by_size.size() > 1 && cat.by_size.back().empty()) cat.by_size.pop_back();
    for (auto& stratum : cat.by_size) std::sort(stratum.begin(), stratum.end());

    cat.mis_size = static_cast<int>(cat.by_size.size()) - 1;
    cat.mis_count = cat.by_size.back().size();

    if (cat.mis_size == 0) return cat;  // no vertices: the empty set is the only MIS

    // Any vertex that extends a (|MIS|-1)-set independently yields an MIS.
    const auto& near = cat.near_maximum_sets();
    cat.extension_counts.reserve(near.size());
    for (VertexSet s : near) {
        VertexSet blocked = s;
        for (int v : members(s)) blocked |= g.neighbors(v);
        cat.extension_counts.push_back(popcount(g.all() & ~blocked));
    }
    return cat;
}

std::vector<int> extension_counts_top_down(const IsCatalog& catalog) {
    if (catalog.mis_size == 0) return {};
    std::unordered_map<VertexSet, int> hits;
    for (VertexSet mis : catalog.maximum_sets()) {
        for (int v : members(mis)) ++hits[mis & ~bit(static_cast<std::size_t>(v))];
    }
    std::vector<int> out;
    out.reserve(catalog.near_maximum_sets().size());
    for (VertexSet s : catalog.near_maximum_sets()) {
        auto it = hits.find(s);
        out.push_back(it == hits.end() ? 0 : it->second);
    }
    return out;
}

namespace {

struct BranchAndBound {
    const Graph& g;
    MisSolution best;

    void run(VertexSet candidates, int size, VertexSet chosen) {
        if (candidates == 0) {
            if (size > best.size) best = {size, chosen};
            return;
        }
        if (size + popcount(candidates) <= best.size) return;

        int pivot = -1;
        int pivot_degree = 65;
        for (VertexSet rest = candidates; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const int d = popcount(g.neighbors(v) & candidates);
            if (d < pivot_degree) {
                pivot = v;
                pivot_degree = d;
            }
        }

        const auto take = [&](int v) { return g.neighbors(v) | bit(static_cast<std::size_t>(v)); };
        if (pivot_degree <= 1) {
            // A vertex of degree <= 1 can always be swapped into a maximum set.
            run(candidates & ~take(pivot), size + 1, chosen | bit(static_cast<std::size_t>(pivot)));
            return;
        }

        // Every maximum set meets N[pivot]; branch on its first member there.
        VertexSet excluded = 0;
        const VertexSet closed = (g.neighbors(pivot) & candidates) | bit(static_cast<std::size_t>(pivot));
        std::vector<int> order{pivot};
        for (int w : members(closed & ~bit(static_cast<std::size_t>(pivot)))) order.push_back(w);
        for (int w : order) {
            run(candidates & ~excluded & ~take(w), size + 1, chosen | bit(static_cast<std::size_t>(w)));
            excluded |= bit(static_cast<std::size_t>(w));
        }
    }
};

}  // namespace

MisSolution solve_mis(const Graph& g) {
    BranchAndBound bb{g, {}};
    bb.run(g.all(), 0, 0);
    if (!g.is_independent(bb.best.witness) || popcount(bb.best.witness) != bb.best.size) {
        fail(ErrorCode::internal_consistency, "branch and bound produced a dependent witness");
    }
    return bb.best;
}

std::map<int, MembershipStat> membership_probability_by_degree(const std::vector<Graph>& ensemble,
                                                               MembershipRule rule, std::size_t max_n) {
    if (ensemble.empty()) fail(ErrorCode::invalid_argument, "membership statistics need a nonempty ensemble");

    struct Acc {
        double hits = 0;
        double analytic = 0;
        std::size_t samples = 0;
    };
    std::map<int, Acc> acc;
    for (const Graph& g : ensemble) {
        const IsCatalog cat = enumerate_independent_sets(g, max_n);
        const auto& maxima = cat.maximum_sets();
        const double base = 1.0 - static_cast<double>(cat.mis_size) / static_cast<double>(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) {
            const int d = g.degree(static_cast<int>(v));
            Acc& a = acc[d];
            switch (rule) {
            case MembershipRule::uniform_mis: {
                std::size_t in = 0;
                for (VertexSet m : maxima) in += (m & bit(v)) != 0;
                a.hits += static_cast<double>(in) / static_cast<double>(maxima.size());
                break;
            }
            case MembershipRule::any_mis:
                a.hits += (cat.mis_union() & bit(v)) ? 1.0 : 0.0;
                break;
            case MembershipRule::canonical_mis:
                a.hits += (maxima.front() & bit(v)) ? 1.0 : 0.0;
                break;
            }
            a.analytic += std::pow(base, d);
            ++a.samples;
        }
    }
    std::map<int, MembershipStat> out;
    for (const auto& [d, a] : acc) {
        const double count = static_cast<double>(a.samples);
        out[d] = {a.hits / count, a.analytic / count, a.samples};
    }
    return out;
}

std::string catalog_to_json(const IsCatalog& catalog) {
    nlohmann::json j;
    j["n"] = catalog.n;
    j["mis_size"] = catalog.mis_size;
    j["mis_count"] = catalog.mis_count;
    auto& strata = j["strata"] = nlohmann::json::array();
    for (const auto& s : catalog.by_size) strata.push_back(s.size());
    auto& mis = j["mis"] = nlohmann::json::array();
    for (VertexSet s : catalog.maximum_sets()) mis.push_back(members(s));
    auto& ext = j["extension_counts"] = nlohmann::json::array();
    if (catalog.mis_size > 0) {
        const auto& near = catalog.near_maximum_sets();
        for (std::size_t i = 0; i < near.size(); ++i) {
            ext.push_back({{"set", members(near[i])}, {"c", catalog.extension_counts[i]}});
        }
    }
    return j.dump(2);
}

}  // namespace ldaqc
