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

#include <functional>
#include <string>
#include <vector>

#include "ldaqc/graph.hpp"

namespace ldaqc {

enum class ProfileKind { linear, exponential, power_law, custom };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Degree-dependent detuning factor f(d, a). Built-in families satisfy
/// f(0, a) = 1 and are nonincreasing in d on their admissible range of a.
class ProfileFamily {
public:
    using Evaluator = std::function<double(int degree, double a)>;
    using Range = std::function<double(int max_degree)>;

    static ProfileFamily linear();       // 1 - a d
    static ProfileFamily exponential();  // exp(-a d)
    static ProfileFamily power_law();    // (1 + d)^(-a)
    static ProfileFamily custom(std::string name, Evaluator f, Range a_max);
    static ProfileFamily from_kind(ProfileKind kind);

    double operator()(int degree, double a) const { return f_(degree, a); }

    /// Largest admissible a for a graph of the given maximum degree.
    double a_max(int max_degree) const { return a_max_(max_degree); }

    ProfileKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    ProfileFamily(ProfileKind kind, std::string name, Evaluator f, Range a_max)
        : kind_(kind), name_(std::move(name)), f_(std::move(f)), a_max_(std::move(a_max)) {}

    ProfileKind kind_;
    std::string name_;
    Evaluator f_;
    Range a_max_;
};

/// Factors along the degree order: element i is f(sorted_degrees[i], a), so
/// the sequence is nonincreasing.
std::vector<double> sorted_factors(const DegreeOrder& order, const ProfileFamily& family, double a);

/// D_k(a): sum of the k smallest factors minus the sum of the k-1 largest.
/// Requires 1 <= k <= N.
double difference_function(const DegreeOrder& order, const ProfileFamily& family, double a, int k);

/// eps_k(a) = f_{N-k-1} - f_{k-1}, the forward difference D_{k+1} - D_k.
/// Requires 1 <= k <= N - 1.
double epsilon(const DegreeOrder& order, const ProfileFamily& family, double a, int k);

/// Smallest k with d_{k-1} >= d_{N-k-1} on the sorted degrees. For N = 1
/// returns 1.
int find_k_star(const DegreeOrder& order);

struct AStar {
    double value = 0.0;
    bool unconstrained = false;  // D_{k*} stays positive up to a_max
    int iterations = 0;
};

struct RootOptions {
    double tolerance = 1e-10;  // on |D_{k*}(a)|
    int max_iterations = 200;
    int scan_points = 256;  // coarse scan that isolates the first sign change
};

/// Smallest root of D_{k*}(a) on (0, a_max], refined by safeguarded secant
/// steps inside a bisection bracket.
AStar solve_a_star(const DegreeOrder& order, const ProfileFamily& family, const RootOptions& options = {});

struct DetuningProfile {
    ProfileKind kind = ProfileKind::linear;
    std::string family_name;
    double a_star = 0.0;
    bool a_star_unconstrained = false;
    int k_star = 1;
    double safety = 0.99;
    double a_used = 0.0;
    double delta0 = 1.0;
    std::vector<int> degrees;     // per vertex id
    std::vector<double> factors;  // per vertex id, f(d_i, a_used)

    double max_factor() const;
    double min_factor() const;

    /// Homogeneous profile, f_i = 1 for every vertex.
    static DetuningProfile homogeneous(const Graph& g, double delta0);
};

/// Degree sort, k*, a*, and a_used = safety * a*, followed by an exhaustive
/// check that D_k(a_used) > 0 for all k and every factor is positive.
DetuningProfile engineer_detunings(const Graph& g, const ProfileFamily& family, double delta0,
                                   double safety = 0.99, const RootOptions& options = {});

/// True iff u_min exceeds (delta0 / 2) * max_i f_i, so no single-site detuning
/// reward can overcome the weakest blockade.
bool check_blockade(const DetuningProfile& profile, double u_min);

struct RootBound {
    double bound = 0.0;  // f_{N-k}(a)
    bool satisfied = false;
};

/// D_k(a) <= f_{N-k}(a) for every nonincreasing positive family.
RootBound root_existence_bound(const DegreeOrder& order, const ProfileFamily& family, double a, int k);

std::string profile_to_json(const DetuningProfile& profile);

}  // namespace ldaqc
