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

#include "ldaqc/detuning.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ldaqc/error.hpp"

namespace ldaqc {

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::linear: return "linear";
        case ProfileKind::exponential: return "exponential";
        case ProfileKind::power_law: return "power_law";
        case ProfileKind::custom: return "custom";
    }
    return "custom";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    if (name == "linear") return ProfileKind::linear;
    if (name == "exponential" || name == "exp") return ProfileKind::exponential;
    if (name == "power_law" || name == "power") return ProfileKind::power_law;
    fail(ErrorCode::invalid_argument, "unknown profile family '" + name + "'");
}

ProfileFamily ProfileFamily::linear() {
    return {ProfileKind::linear, "linear", [](int d, double a) { return 1.0 - a * d; },
            [](int max_degree) { return max_degree > 0 ? 1.0 / max_degree : 1.0; }};
}

ProfileFamily ProfileFamily::exponential() {
    return {ProfileKind::exponential, "exponential", [](int d, double a) { return std::exp(-a * d); },
            [](int) { return 1.0; }};
}

ProfileFamily ProfileFamily::power_law() {
    return {ProfileKind::power_law, "power_law", [](int d, double a) { return std::pow(1.0 + d, -a); },
            [](int) { return 1.0; }};
}

ProfileFamily ProfileFamily::custom(std::string name, Evaluator f, Range a_max) {
    if (!f || !a_max) fail(ErrorCode::invalid_argument, "custom profile needs an evaluator and a range");
    return {ProfileKind::custom, std::move(name), std::move(f), std::move(a_max)};
}

ProfileFamily ProfileFamily::from_kind(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::linear: return linear();
        case ProfileKind::exponential: return exponential();
        case ProfileKind::power_law: return power_law();
        case ProfileKind::custom: break;
    }
    fail(ErrorCode::invalid_argument, "custom families must be constructed with ProfileFamily::custom");
}

std::vector<double> sorted_factors(const DegreeOrder& order, const ProfileFamily& family, double a) {
    std::vector<double> f;
    f.reserve(order.sorted_degrees.size());
    for (int d : order.sorted_degrees) f.push_back(family(d, a));
    return f;
}

namespace {

double difference_from_factors(const std::vector<double>& f, int k) {
    const int n = static_cast<int>(f.size());
    double value = 0.0;
    for (int i = n - k; i < n; ++i) value += f[static_cast<std::size_t>(i)];
    for (int i = 0; i <= k - 2; ++i) value -= f[static_cast<std::size_t>(i)];
    return value;
}

}  // namespace

double difference_function(const DegreeOrder& order, const ProfileFamily& family, double a, int k) {
    const int n = static_cast<int>(order.sorted_degrees.size());
    if (k < 1 || k > n) {
        fail(ErrorCode::invalid_argument, "D_k needs 1 <= k <= N (k = " + std::to_string(k) + ")");
    }
    return difference_from_factors(sorted_factors(order, family, a), k);
}

double epsilon(const DegreeOrder& order, const ProfileFamily& family, double a, int k) {
    const int n = static_cast<int>(order.sorted_degrees.size());
    if (k < 1 || k > n - 1) {
        fail(ErrorCode::invalid_argument, "eps_k needs 1 <= k <= N-1 (k = " + std::to_string(k) + ")");
    }
    const auto& d = order.sorted_degrees;
    return family(d[static_cast<std::size_t>(n - k - 1)], a) - family(d[static_cast<std::size_t>(k - 1)], a);
}

int find_k_star(const DegreeOrder& order) {
    const int n = static_cast<int>(order.sorted_degrees.size());
    if (n < 1) fail(ErrorCode::invalid_argument, "k* is undefined on an empty graph");
    const auto& d = order.sorted_degrees;
    for (int k = 1; k <= n - 1; ++k) {
        if (d[static_cast<std::size_t>(k - 1)] >= d[static_cast<std::size_t>(n - k - 1)]) return k;
    }
    return 1;  // N = 1
}

AStar solve_a_star(const DegreeOrder& order, const ProfileFamily& family, const RootOptions& options) {
    if (order.sorted_degrees.empty()) fail(ErrorCode::invalid_argument, "a* is undefined on an empty graph");
    const int k = find_k_star(order);
    const double a_max = family.a_max(order.sorted_degrees.back());
    const auto D = [&](double a) { return difference_function(order, family, a, k); };

    const double d0 = D(0.0);
    if (!(d0 > 0.0)) {
        fail(ErrorCode::invalid_profile, "D_k*(0) = " + std::to_string(d0) + " is not positive");
    }

    // Isolate the first sign change so the root is the onset of band overlap.
    double lo = 0.0;
    double d_lo = d0;
    double hi = a_max;
    double d_hi = 0.0;
    bool bracketed = false;
    const int scan = std::max(options.scan_points, 1);
    for (int j = 1; j <= scan; ++j) {
        const double a = a_max * j / scan;
        const double value = D(a);
        if (value <= 0.0) {
            hi = a;
            d_hi = value;
            bracketed = true;
            break;
        }
        lo = a;
        d_lo = value;
    }
    if (!bracketed) return {a_max, true, 0};

    AStar result;
    double previous_width = 2.0 * (hi - lo);
    for (int it = 1; it <= options.max_iterations; ++it) {
        result.iterations = it;
        double x = lo - d_lo * (hi - lo) / (d_hi - d_lo);
        // Fall back to bisection when the secant point is unusable or the
        // last step failed to halve the bracket.
        if (!(x > lo && x < hi) || (hi - lo) > 0.5 * previous_width) x = 0.5 * (lo + hi);
        previous_width = hi - lo;
        const double value = D(x);
        if (std::abs(value) <= options.tolerance) {
            result.value = x;
            return result;
        }
        if (value > 0.0) {
            lo = x;
            d_lo = value;
        } else {
            hi = x;
            d_hi = value;
        }
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    result.value = std::abs(d_lo) < std::abs(d_hi) ? lo : hi;
    if (std::abs(D(result.value)) > options.tolerance) {
        fail(ErrorCode::invalid_profile, "root search for a* did not converge");
    }
    return result;
}

double DetuningProfile::max_factor() const {
    return factors.empty() ? 0.0 : *std::max_element(factors.begin(), factors.end());
}

double DetuningProfile::min_factor() const {
    return factors.empty() ? 0.0 : *std::min_element(factors.begin(), factors.end());
}

DetuningProfile DetuningProfile::homogeneous(const Graph& g, double delta0) {
    DetuningProfile p;
    p.family_name = "homogeneous";
    p.k_star = g.size() >= 1 ? find_k_star(degree_order(g)) : 1;
    p.safety = 1.0;
    p.delta0 = delta0;
    p.degrees = g.degrees();
    p.factors.assign(g.size(), 1.0);
    return p;
}

DetuningProfile engineer_detunings(const Graph& g, const ProfileFamily& family, double delta0, double safety,
                                   const RootOptions& options) {
    if (g.size() == 0) fail(ErrorCode::invalid_argument, "cannot engineer detunings for an empty graph");
    if (!(safety > 0.0 && safety <= 1.0)) fail(ErrorCode::invalid_argument, "safety must lie in (0, 1]");
    if (!(delta0 > 0.0)) fail(ErrorCode::invalid_argument, "delta0 must be positive");

    const DegreeOrder order = degree_order(g);
    const AStar root = solve_a_star(order, family, options);

    DetuningProfile p;
    p.kind = family.kind();
    p.family_name = family.name();
    p.k_star = find_k_star(order);
    p.a_star = root.value;
    p.a_star_unconstrained = root.unconstrained;
    p.safety = safety;
    p.a_used = safety * root.value;
    p.delta0 = delta0;
    p.degrees = g.degrees();
    for (int d : p.degrees) p.factors.push_back(family(d, p.a_used));

    const std::vector<double> f = sorted_factors(order, family, p.a_used);
    const int n = static_cast<int>(f.size());
    for (int k = 1; k <= n; ++k) {
        const double value = difference_from_factors(f, k);
        if (!(value > 0.0)) {
            fail(ErrorCode::internal_consistency, "energy condition violated: D_" + std::to_string(k) +
                                                      "(a_used) = " + std::to_string(value));
        }
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] > 0.0)) fail(ErrorCode::internal_consistency, "non-positive detuning factor");
        if (i > 0 && f[i] > f[i - 1]) {
            fail(ErrorCode::internal_consistency, "factors are not nonincreasing along the degree order");
        }
    }
    for (std::size_t v = 0; v < p.degrees.size(); ++v) {
        if (p.degrees[v] == 0 && p.factors[v] != 1.0) {
            fail(ErrorCode::internal_consistency, "isolated vertex with factor != 1");
        }
    }
    return p;
}

bool check_blockade(const DetuningProfile& profile, double u_min) {
    return u_min > 0.5 * profile.delta0 * profile.max_factor();
}

RootBound root_existence_bound(const DegreeOrder& order, const ProfileFamily& family, double a, int k) {
    const int n = static_cast<int>(order.sorted_degrees.size());
    const double d = difference_function(order, family, a, k);
    const double bound = family(order.sorted_degrees[static_cast<std::size_t>(n - k)], a);
    return {bound, d <= bound + 1e-12};
}

std::string profile_to_json(const DetuningProfile& profile) {
    nlohmann::json j;
    j["family"] = profile.family_name;
    j["a_star"] = profile.a_star;
    j["a_star_unconstrained"] = profile.a_star_unconstrained;
    j["k_star"] = profile.k_star;
    j["safety"] = profile.safety;
    j["a_used"] = profile.a_used;
    j["delta0"] = profile.delta0;
    j["degrees"] = profile.degrees;
    j["factors"] = profile.factors;
    return j.dump(2);
}

}  // namespace ldaqc
