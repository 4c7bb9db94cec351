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

#include <map>
#include <string>
#include <vector>

#include "ldaqc/graph.hpp"

namespace ldaqc {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Every independent set of a graph, grouped by size. Sets inside a stratum
/// are sorted by ascending bitmask.
struct IsCatalog {
    std::size_t n = 0;
    std::vector<std::vector<VertexSet>> by_size;  // index k -> all ISs of size k
    int mis_size = 0;
    std::size_t mis_count = 0;
    /// c_j for each set of by_size[mis_size - 1], in the same order: the
    /// number of maximum independent sets containing it.
    std::vector<int> extension_counts;

    const std::vector<VertexSet>& stratum(int k) const { return by_size.at(static_cast<std::size_t>(k)); }
    const std::vector<VertexSet>& maximum_sets() const { return stratum(mis_size); }
    const std::vector<VertexSet>& near_maximum_sets() const { return stratum(mis_size - 1); }

    /// Union of all maximum independent sets.
    VertexSet mis_union() const;
    bool is_mis(VertexSet s) const;
    long long extension_total() const;
};

/// Exhaustive enumeration by recursive candidate pruning. Throws
/// ErrorCode::cap_exceeded when g has more than max_n vertices.
IsCatalog enumerate_independent_sets(const Graph& g, std::size_t max_n = kDefaultEnumerationCap);

/// Extension counts computed top-down: delete each vertex of each MIS and
/// count how often every resulting subset appears. Same order as
/// IsCatalog::extension_counts.
std::vector<int> extension_counts_top_down(const IsCatalog& catalog);

struct MisSolution {
    int size = 0;
    VertexSet witness = 0;
};

/// Exact maximum independent set by branch and bound. Branches over the
/// closed neighbourhood of a minimum-degree candidate.
MisSolution solve_mis(const Graph& g);

enum class MembershipRule {
    uniform_mis,    // fraction of maximum independent sets containing the vertex
    any_mis,        // vertex lies in at least one maximum independent set
    canonical_mis,  // vertex lies in the lowest-bitmask maximum independent set
};

struct MembershipStat {
    double empirical = 0.0;
    double analytic = 0.0;  // mean of (1 - |MIS|/N)^d over the contributing pairs
    std::size_t samples = 0;
};

/// Probability that a vertex of a given degree belongs to the MIS, averaged
/// over (graph, vertex) pairs of the ensemble. With uniform_mis a degenerate
/// MIS counts as one drawn uniformly from the maximum sets.
std::map<int, MembershipStat> membership_probability_by_degree(
    const std::vector<Graph>& ensemble, MembershipRule rule = MembershipRule::uniform_mis,
    std::size_t max_n = kDefaultEnumerationCap);

std::string catalog_to_json(const IsCatalog& catalog);

}  // namespace ldaqc
