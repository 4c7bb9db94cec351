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

#include "ldaqc/selftest.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "ldaqc/detuning.hpp"
#include "ldaqc/dynamics.hpp"
#include "ldaqc/graph.hpp"
#include "ldaqc/metrics.hpp"
#include "ldaqc/mis.hpp"
#include "ldaqc/random.hpp"

namespace ldaqc {

namespace {

bool independent_by_scan(const Graph& g, VertexSet s) {
    for (const auto& [u, v] : g.edges()) {
        if ((s >> u & 1) && (s >> v & 1)) return false;
    }
    return true;
}

struct BruteCatalog {
    std::vector<std::size_t> counts;  // by size
    int mis_size = 0;
    long long extension_sum = 0;
};

BruteCatalog brute_catalog(const Graph& g) {
    BruteCatalog b;
    b.counts.assign(g.size() + 1, 0);
    std::vector<VertexSet> sets;
    for (VertexSet s = 0; s < (VertexSet{1} << g.size()); ++s) {
        if (!independent_by_scan(g, s)) continue;
        ++b.counts[static_cast<std::size_t>(popcount(s))];
        sets.push_back(s);
        b.mis_size = std::max(b.mis_size, popcount(s));
    }
    // c_j by direct containment tests
    for (VertexSet s : sets) {
        if (popcount(s) != b.mis_size - 1) continue;
        for (VertexSet m : sets) {
            if (popcount(m) == b.mis_size && (m & s) == s) ++b.extension_sum;
        }
    }
    return b;
}

}  // namespace

std::vector<SelfTestCheck> run_selftest(std::uint64_t seed) {
    std::vector<SelfTestCheck> checks;
    const auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        SelfTestCheck c{name, false, ""};
        try {
            c.detail = body();
            c.passed = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = std::string("exception: ") + e.what();
        }
        checks.push_back(std::move(c));
    };

    std::vector<Graph> corpus;
    for (std::uint64_t i = 0; i < 40; ++i) {
        const std::uint64_t s = splitmix64(seed + i);
        corpus.push_back(random_graph(4 + s % 9, 0.2 + 0.5 * static_cast<double>(s % 97) / 97.0, s));
    }
    for (std::uint64_t i = 0; i < 10; ++i) {
        try {
            corpus.push_back(build_kings_graph(3, 4, 0.2, splitmix64(seed + 100 + i)));
        } catch (const std::exception&) {
        }
    }

    check("catalog matches exhaustive subset scan", [&]() -> std::string {
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            const auto cat = enumerate_independent_sets(corpus[k]);
            const auto ref = brute_catalog(corpus[k]);
            if (cat.mis_size != ref.mis_size) return "MIS size differs on graph " + std::to_string(k);
            for (int j = 0; j <= ref.mis_size; ++j) {
                if (cat.stratum(j).size() != ref.counts[static_cast<std::size_t>(j)]) {
                    return "stratum " + std::to_string(j) + " differs on graph " + std::to_string(k);
                }
            }
            if (cat.extension_total() != ref.extension_sum) return "c_j sum differs on graph " + std::to_string(k);
            if (cat.extension_total() != static_cast<long long>(cat.mis_size) * static_cast<long long>(cat.mis_count)) {
                return "sum c_j != |MIS| D_|MIS| on graph " + std::to_string(k);
            }
        }
        return "";
    });

    check("branch and bound matches exhaustive MIS", [&]() -> std::string {
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            const auto sol = solve_mis(corpus[k]);
            if (sol.size != brute_catalog(corpus[k]).mis_size) return "size differs on graph " + std::to_string(k);
            if (!independent_by_scan(corpus[k], sol.witness) || popcount(sol.witness) != sol.size) {
                return "bad witness on graph " + std::to_string(k);
            }
        }
        return "";
    });

    check("engineered profiles keep every band ordered", [&]() -> std::string {
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            for (auto kind : {ProfileKind::linear, ProfileKind::exponential, ProfileKind::power_law}) {
                const auto prof = engineer_detunings(corpus[k], ProfileFamily::from_kind(kind), 1.0);
                if (!all_subset_bands_separated(prof.factors, 1.0)) {
                    return to_string(kind) + " bands overlap on graph " + std::to_string(k);
                }
            }
        }
        return "";
    });

    check("HP_LD reduces to HP_trad for a homogeneous profile", [&]() -> std::string {
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            const auto cat = enumerate_independent_sets(corpus[k]);
            if (cat.mis_size < 1) continue;
            const auto spec = final_band_spectrum(cat, DetuningProfile::homogeneous(corpus[k], 1.0));
            const double diff = std::abs(hardness_local_degree(cat, spec, 1.0).value - hardness_traditional(cat));
            if (diff > 1e-9) return "difference " + std::to_string(diff) + " on graph " + std::to_string(k);
        }
        return "";
    });

    check("path P4 anchors", []() -> std::string {
        const Edge e[] = {{0, 1}, {1, 2}, {2, 3}};
        const Graph g = Graph::from_edge_list(4, e);
        const auto prof = engineer_detunings(g, ProfileFamily::linear(), 1.0);
        if (prof.k_star != 2) return "k* = " + std::to_string(prof.k_star);
        if (std::abs(prof.a_star - 1.0 / 3.0) > 1e-9) return "a* off";
        const auto cat = enumerate_independent_sets(g);
        if (std::abs(hardness_traditional(cat) - 2.0 / 3.0) > 1e-12) return "HP_trad off";
        return "";
    });

    check("Hamiltonian matches dense Kronecker construction", [&]() -> std::string {
        const Edge e[] = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
        const Graph g = Graph::from_edge_list(4, e);
        const std::vector<double> u = {3.0, 5.0, 7.0, 11.0};
        const RydbergModel model(g, u);
        const auto prof = engineer_detunings(g, ProfileFamily::linear(), 2.0);
        const auto sched = PulseSchedule::local_degree(prof, 10.0, 1.3);
        const double t = 3.7;
        const Eigen::MatrixXd h = Eigen::MatrixXd(assemble_hamiltonian(model, sched, t));

        Eigen::Matrix2d x, nn, id;
        x << 0, 1, 1, 0;
        nn << 0, 0, 0, 1;
        id.setIdentity();
        const auto embed = [](const std::vector<Eigen::Matrix2d>& ops) {
            Eigen::MatrixXd m = Eigen::MatrixXd::Ones(1, 1);
            for (const auto& op : ops) {  // op[0] acts on bit 0, the fastest index
                Eigen::MatrixXd next(m.rows() * 2, m.cols() * 2);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = op(r, c) * m;
                m = next;
            }
            return m;
        };
        Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(16, 16);
        for (int i = 0; i < 4; ++i) {
            std::vector<Eigen::Matrix2d> ops(4, id);
            ops[static_cast<std::size_t>(i)] = sched.omega(t) * x - sched.detuning(static_cast<std::size_t>(i), t) * nn;
            ref += embed(ops);
        }
        for (std::size_t k = 0; k < 4; ++k) {
            std::vector<Eigen::Matrix2d> ops(4, id);
            ops[static_cast<std::size_t>(g.edges()[k].first)] = nn;
            ops[static_cast<std::size_t>(g.edges()[k].second)] = nn;
            ref += model.interactions()[k] * embed(ops);
        }
        const double err = (h - ref).cwiseAbs().maxCoeff();
        if (err > 1e-12) return "max deviation " + std::to_string(err);
        return "";
    });

    check("propagator matches dense reference integration", []() -> std::string {
        const Edge e[] = {{0, 1}, {1, 2}};
        const Graph g = Graph::from_edge_list(3, e);
        const RydbergModel model(g, std::vector<double>{6.0, 6.0});
        const auto prof = engineer_detunings(g, ProfileFamily::linear(), 4.0);
        const auto sched = PulseSchedule::local_degree(prof, 6.0, 1.0);
        IntegratorConfig cfg;
        cfg.dt = 0.01;
        const auto res = evolve(model, sched, cfg);

        // Classical RK4 on the dense matrix with a much finer step.
        using CVec = Eigen::VectorXcd;
        CVec psi = CVec::Zero(8);
        psi[0] = 1.0;
        const int steps = 20000;
        const double h = sched.t_f / steps;
        const std::complex<double> minus_i(0.0, -1.0);
        const auto rhs = [&](double t, const CVec& v) -> CVec {
            return minus_i * (Eigen::MatrixXd(assemble_hamiltonian(model, sched, t)).cast<std::complex<double>>() * v);
        };
        for (int s = 0; s < steps; ++s) {
            const double t = s * h;
            const CVec k1 = rhs(t, psi);
            const CVec k2 = rhs(t + h / 2, psi + h / 2 * k1);
            const CVec k3 = rhs(t + h / 2, psi + h / 2 * k2);
            const CVec k4 = rhs(t + h, psi + h * k3);
            psi += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        double err = 0.0;
        for (int s = 0; s < 8; ++s) err = std::max(err, std::abs(std::norm(psi[s]) - res.state.probability(static_cast<std::size_t>(s))));
        if (err > 1e-7) return "population deviation " + std::to_string(err);
        return "";
    });

    check("single-atom rapid adiabatic passage", []() -> std::string {
        const Graph g = Graph::from_edge_list(1, std::span<const Edge>{});
        const RydbergModel model(g, std::vector<double>{});
        const auto sched = PulseSchedule::traditional(1, 20.0 * kPi, 1.0, 4.0);
        const auto res = evolve(model, sched);
        if (!(res.state.probability(1) > 0.99)) return "P(excited) = " + std::to_string(res.state.probability(1));
        return "";
    });

    return checks;
}

std::string selftest_to_json(const std::vector<SelfTestCheck>& checks) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        all = all && c.passed;
    }
    nlohmann::ordered_json j{{"passed", all}, {"checks", arr}};
    return j.dump(2) + "\n";
}

}  // namespace ldaqc
