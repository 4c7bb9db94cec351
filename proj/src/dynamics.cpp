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

#include "ldaqc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include "ldaqc/error.hpp"

namespace ldaqc {

std::string to_string(Protocol protocol) {
    return protocol == Protocol::traditional ? "traditional" : "local_degree";
}

std::string to_string(Envelope envelope) {
    return envelope == Envelope::sin_squared ? "sin2" : "trapezoid";
}

Envelope envelope_from_string(const std::string& name) {
    if (name == "sin2" || name == "sin_squared") return Envelope::sin_squared;
    if (name == "trapezoid") return Envelope::trapezoid;
    fail(ErrorCode::invalid_argument, "unknown envelope '" + name + "'");
}

PulseSchedule PulseSchedule::traditional(std::size_t n, double t_f, double omega_max, double delta0,
                                         Envelope envelope) {
    PulseSchedule s;
    s.t_f = t_f;
    s.omega_max = omega_max;
    s.delta0 = delta0;
    s.envelope = envelope;
    s.protocol = Protocol::traditional;
    s.factors.assign(n, 1.0);
    return s;
}

PulseSchedule PulseSchedule::local_degree(const DetuningProfile& profile, double t_f, double omega_max,
                                          Envelope envelope) {
    PulseSchedule s;
    s.t_f = t_f;
    s.omega_max = omega_max;
    s.delta0 = profile.delta0;
    s.envelope = envelope;
    s.protocol = Protocol::local_degree;
    s.factors = profile.factors;
    return s;
}

double PulseSchedule::omega(double t) const {
    switch (envelope) {
        case Envelope::sin_squared: {
            const double s = std::sin(kPi * t / t_f);
            return omega_max * s * s;
        }
        case Envelope::trapezoid: {
            if (t <= 0.0 || t >= t_f) return 0.0;
            const double ramp = ramp_fraction * t_f;
            if (ramp <= 0.0) return omega_max;
            return omega_max * std::min({1.0, t / ramp, (t_f - t) / ramp});
        }
    }
    return 0.0;
}

RydbergModel::RydbergModel(Graph graph, double c6) : graph_(std::move(graph)) {
    if (!graph_.has_positions()) {
        fail(ErrorCode::invalid_argument, "distance-based interactions need vertex positions");
    }
    if (!(c6 > 0.0)) fail(ErrorCode::invalid_argument, "C6 must be positive");
    for (auto [u, v] : graph_.edges()) {
        const double r = graph_.distance(u, v);
        if (!(r > 0.0)) fail(ErrorCode::invalid_argument, "coincident atoms on an edge");
        interactions_.push_back(c6 / std::pow(r, 6));
    }
}

RydbergModel make_rydberg_model(const Graph& graph, double c6) {
    if (graph.has_positions()) return RydbergModel(graph, c6);
    if (!(c6 > 0.0)) fail(ErrorCode::invalid_argument, "C6 must be positive");
    return RydbergModel(graph, std::vector<double>(graph.edges().size(), c6));
}

RydbergModel::RydbergModel(Graph graph, std::vector<double> edge_interactions)
    : graph_(std::move(graph)), interactions_(std::move(edge_interactions)) {
    if (interactions_.size() != graph_.edges().size()) {
        fail(ErrorCode::invalid_argument, "one interaction energy per edge is required");
    }
    for (double u : interactions_) {
        if (!(u > 0.0)) fail(ErrorCode::invalid_argument, "interaction energies must be positive");
    }
}

double RydbergModel::u_min() const {
    return interactions_.empty() ? std::numeric_limits<double>::infinity()
                                 : *std::min_element(interactions_.begin(), interactions_.end());
}

std::vector<double> RydbergModel::interaction_diagonal() const {
    std::vector<double> diag(dimension(), 0.0);
    const auto& edges = graph_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const VertexSet pair = bit(static_cast<std::size_t>(edges[e].first)) |
                               bit(static_cast<std::size_t>(edges[e].second));
        for (std::size_t s = 0; s < diag.size(); ++s) {
            if ((s & pair) == pair) diag[s] += interactions_[e];
        }
    }
    return diag;
}

std::vector<double> excitation_diagonal(std::size_t n) {
    std::vector<double> out(std::size_t{1} << n);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = popcount(s);
    return out;
}

std::vector<double> weight_diagonal(const std::vector<double>& factors) {
    std::vector<double> out(std::size_t{1} << factors.size(), 0.0);
    // Built bitwise: w(s) = w(s without its top bit) + f_top.
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::size_t half = std::size_t{1} << i;
        for (std::size_t s = 0; s < half; ++s) out[s | half] = out[s] + factors[i];
    }
    return out;
}

namespace {

void check_cap(const RydbergModel& model, const PulseSchedule& schedule, std::size_t cap) {
    if (model.size() > cap) {
        fail(ErrorCode::cap_exceeded, "graph has " + std::to_string(model.size()) +
                                          " vertices, above the simulation cap of " + std::to_string(cap));
    }
    if (schedule.factors.size() != model.size()) {
        fail(ErrorCode::invalid_argument, "schedule has " + std::to_string(schedule.factors.size()) +
                                              " detuning factors for " + std::to_string(model.size()) + " atoms");
    }
}

}  // namespace

Eigen::SparseMatrix<double> assemble_hamiltonian(const RydbergModel& model, const PulseSchedule& schedule,
                                                 double t, std::size_t cap) {
    check_cap(model, schedule, cap);
    const std::size_t n = model.size();
    const std::size_t dim = model.dimension();
    const std::vector<double> interaction = model.interaction_diagonal();
    const double omega = schedule.omega(t);

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(dim * (n + 1));
    for (std::size_t s = 0; s < dim; ++s) {
        double diag = interaction[s];
        for (std::size_t i = 0; i < n; ++i) {
            if (s & bit(i)) diag -= schedule.detuning(i, t);
        }
        entries.emplace_back(static_cast<int>(s), static_cast<int>(s), diag);
        if (omega != 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                entries.emplace_back(static_cast<int>(s), static_cast<int>(s ^ bit(i)), omega);
            }
        }
    }
    Eigen::SparseMatrix<double> h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    h.setFromTriplets(entries.begin(), entries.end());
    return h;
}

InstantaneousHamiltonian::InstantaneousHamiltonian(const RydbergModel& model, const PulseSchedule& schedule,
                                                   std::size_t cap)
    : n_(model.size()), schedule_(&schedule) {
    check_cap(model, schedule, cap);
    interaction_ = model.interaction_diagonal();
    weight_ = weight_diagonal(schedule.factors);
}

void InstantaneousHamiltonian::set_time(double t) {
    omega_ = schedule_->omega(t);
    sweep_ = schedule_->sweep(t);
}

void InstantaneousHamiltonian::apply(const double* x, double* y) const {
    const std::size_t dim = interaction_.size();
    for (std::size_t s = 0; s < dim; ++s) y[s] = (interaction_[s] - sweep_ * weight_[s]) * x[s];
    if (omega_ == 0.0) return;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t b = std::size_t{1} << i;
        for (std::size_t s = 0; s < dim; ++s) y[s] += omega_ * x[s ^ b];
    }
}

QuantumState QuantumState::ground(std::size_t n) {
    QuantumState psi;
    psi.amplitudes.assign(std::size_t{1} << n, {0.0, 0.0});
    psi.amplitudes[0] = 1.0;
    return psi;
}

double QuantumState::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

namespace {

using cplx = std::complex<double>;

// Symmetric splitting exp(a_0 A) exp(b_0 B) exp(a_1 A) ... exp(b_{s-1} B) exp(a_s A),
// A the interaction diagonal and B the single-site drive.
struct Composition {
    std::vector<double> a;
    std::vector<double> b;
};

// Blanes-Moan six-stage fourth-order method.
const Composition& blanes_moan() {
    static const Composition c = [] {
        const double a1 = 0.0792036964311957, a2 = 0.353172906049774, a3 = -0.0420650803577195;
        const double a4 = 1.0 - 2.0 * (a1 + a2 + a3);
        const double b1 = 0.209515106613362, b2 = -0.143851773179818;
        const double b3 = 0.5 - (b1 + b2);
        return Composition{{a1, a2, a3, a4, a3, a2, a1}, {b1, b2, b3, b3, b2, b1}};
    }();
    return c;
}

class SplitStepPropagator {
public:
    SplitStepPropagator(const RydbergModel& model, const PulseSchedule& schedule)
        : n_(model.size()), schedule_(schedule), interaction_(model.interaction_diagonal()) {}

    // exp(-i tau U) for the static interaction diagonal.
    std::vector<cplx> interaction_phases(double tau) const {
        std::vector<cplx> out(interaction_.size());
        for (std::size_t s = 0; s < out.size(); ++s) out[s] = std::polar(1.0, -tau * interaction_[s]);
        return out;
    }

    static void multiply(std::vector<cplx>& psi, const std::vector<cplx>& phases) {
        auto* a = reinterpret_cast<double*>(psi.data());
        const auto* p = reinterpret_cast<const double*>(phases.data());
        for (std::size_t s = 0; s < 2 * psi.size(); s += 2) {
            const double re = a[s] * p[s] - a[s + 1] * p[s + 1];
            const double im = a[s] * p[s + 1] + a[s + 1] * p[s];
            a[s] = re;
            a[s + 1] = im;
        }
    }

    // exp(-i h sum_i [Omega X_i - Delta_i n_i]) with all factors taken at t_mid.
    void drive(std::vector<cplx>& psi, double t_mid, double h) const {
        const double omega = schedule_.omega(t_mid);
        const double sweep = schedule_.sweep(t_mid);
        const std::size_t dim = psi.size();
        auto* a = reinterpret_cast<double*>(psi.data());
        for (std::size_t i = 0; i < n_; ++i) {
            // B = -Delta/2 I + Omega X + Delta/2 Z
            const double half = 0.5 * schedule_.factors[i] * sweep;
            const double r = std::hypot(omega, half);
            const cplx global = std::polar(1.0, h * half);
            cplx m00 = global;
            cplx m01 = 0.0;
            cplx m11 = global;
            if (r > 0.0) {
                const double c = std::cos(h * r);
                const double sn = std::sin(h * r) / r;
                m00 = global * cplx(c, -sn * half);
                m11 = global * cplx(c, sn * half);
                m01 = global * cplx(0.0, -sn * omega);
            }
            const double ar = m00.real(), ai = m00.imag();
            const double br = m01.real(), bi = m01.imag();
            const double dr = m11.real(), di = m11.imag();
            const std::size_t b = std::size_t{1} << i;
            for (std::size_t base = 0; base < dim; base += 2 * b) {
                double* lo = a + 2 * base;
                double* up = a + 2 * (base + b);
                for (std::size_t k = 0; k < 2 * b; k += 2) {
                    const double xr = lo[k], xi = lo[k + 1];
                    const double yr = up[k], yi = up[k + 1];
                    lo[k] = ar * xr - ai * xi + br * yr - bi * yi;
                    lo[k + 1] = ar * xi + ai * xr + br * yi + bi * yr;
                    up[k] = br * xr - bi * xi + dr * yr - di * yi;
                    up[k + 1] = br * xi + bi * xr + dr * yi + di * yr;
                }
            }
        }
    }

private:
    std::size_t n_;
    const PulseSchedule& schedule_;
    std::vector<double> interaction_;
};

TrajectorySample sample_state(const QuantumState& psi, double t, const std::vector<double>& excitations,
                              const IsCatalog* catalog) {
    TrajectorySample out;
    out.t = t;
    for (std::size_t s = 0; s < psi.dimension(); ++s) out.mean_excitation += excitations[s] * psi.probability(s);
    if (catalog != nullptr) {
        for (VertexSet s : catalog->maximum_sets()) out.p_mis += psi.probability(static_cast<std::size_t>(s));
    }
    return out;
}

}  // namespace

EvolutionResult evolve(const RydbergModel& model, const PulseSchedule& schedule, const IntegratorConfig& config,
                       const IsCatalog* catalog) {
    check_cap(model, schedule, config.cap);
    if (!(schedule.t_f > 0.0)) fail(ErrorCode::invalid_argument, "t_f must be positive");
    if (!(config.dt > 0.0)) fail(ErrorCode::invalid_argument, "integrator step must be positive");

    const auto steps = static_cast<std::size_t>(std::ceil(schedule.t_f / config.dt - 1e-9));
    const double h = schedule.t_f / static_cast<double>(steps);
    const Composition& scheme = blanes_moan();

    SplitStepPropagator prop(model, schedule);
    std::vector<std::vector<cplx>> phases;
    for (std::size_t i = 1; i + 1 < scheme.a.size(); ++i) phases.push_back(prop.interaction_phases(scheme.a[i] * h));
    const auto edge = prop.interaction_phases(scheme.a.front() * h);
    const auto joint = prop.interaction_phases(2.0 * scheme.a.front() * h);

    EvolutionResult result;
    result.state = QuantumState::ground(model.size());
    auto& psi = result.state.amplitudes;

    std::vector<double> excitations;
    std::unique_ptr<LowSpectrumSolver> gap_solver;
    std::unique_ptr<InstantaneousHamiltonian> gap_h;
    const auto record = [&](double t) {
        TrajectorySample sample = sample_state(result.state, t, excitations, catalog);
        if (gap_solver) {
            gap_h->set_time(t);
            const auto levels = gap_solver->solve(*gap_h);
            sample.gap = levels.back() - levels.front();
        }
        result.trajectory.push_back(sample);
    };
    if (config.sample_every > 0) {
        excitations = excitation_diagonal(model.size());
        if (config.sample_gap) {
            gap_solver = std::make_unique<LowSpectrumSolver>(config.gap_levels + 1);
            gap_h = std::make_unique<InstantaneousHamiltonian>(model, schedule, config.cap);
        }
        record(0.0);
    }

    // Interaction stages carry the clock; drive stages see the time reached
    // so far. The symmetric end stages of neighbouring steps are fused.
    SplitStepPropagator::multiply(psi, edge);
    for (std::size_t k = 0; k < steps; ++k) {
        double t = h * static_cast<double>(k) + scheme.a.front() * h;
        for (std::size_t i = 0; i < scheme.b.size(); ++i) {
            prop.drive(psi, t, scheme.b[i] * h);
            if (i + 1 < scheme.b.size()) {
                SplitStepPropagator::multiply(psi, phases[i]);
                t += scheme.a[i + 1] * h;
            }
        }
        const bool last = k + 1 == steps;
        const bool sample = config.sample_every > 0 && ((k + 1) % config.sample_every == 0 || last);
        if (last || sample) {
            SplitStepPropagator::multiply(psi, edge);
            if (sample) record(h * static_cast<double>(k + 1));
            if (!last) SplitStepPropagator::multiply(psi, edge);
        } else {
            SplitStepPropagator::multiply(psi, joint);
        }
    }

    result.steps = steps;
    result.norm_error = std::abs(result.state.norm() - 1.0);
    if (!(result.norm_error <= config.norm_tolerance)) {
        fail(ErrorCode::integrator_failure, "norm drifted by " + std::to_string(result.norm_error) +
                                                "; retry with a step smaller than " + std::to_string(config.dt));
    }
    return result;
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& samples) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
    out.precision(12);
    out << "t,p_mis,mean_excitation,gap\n";
    for (const auto& s : samples) {
        out << s.t << ',' << s.p_mis << ',' << s.mean_excitation << ',';
        if (!std::isnan(s.gap)) out << s.gap;
        out << '\n';
    }
}

}  // namespace ldaqc
