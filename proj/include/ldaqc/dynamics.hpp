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

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "ldaqc/detuning.hpp"
#include "ldaqc/graph.hpp"
#include "ldaqc/mis.hpp"

namespace ldaqc {

inline constexpr std::size_t kDefaultSimulationCap = 14;
inline constexpr double kPi = 3.14159265358979323846;

enum class Envelope { sin_squared, trapezoid };
enum class Protocol { traditional, local_degree };

std::string to_string(Protocol protocol);
std::string to_string(Envelope envelope);
Envelope envelope_from_string(const std::string& name);

/// Rabi envelope and per-site linear detuning ramps
///   Delta_i(t) = f_i * delta0 * (t - t_f/2) / t_f.
struct PulseSchedule {
    double t_f = 20.0 * kPi;
    double omega_max = 1.0;
    double delta0 = 16.0;
    Envelope envelope = Envelope::sin_squared;
    double ramp_fraction = 0.1;  // trapezoid rise/fall as a fraction of t_f
    Protocol protocol = Protocol::traditional;
    std::vector<double> factors;  // f_i per vertex; all ones for the traditional protocol

    static PulseSchedule traditional(std::size_t n, double t_f, double omega_max, double delta0,
                                     Envelope envelope = Envelope::sin_squared);
    static PulseSchedule local_degree(const DetuningProfile& profile, double t_f, double omega_max,
                                      Envelope envelope = Envelope::sin_squared);

    double omega(double t) const;
    double sweep(double t) const { return delta0 * (t - 0.5 * t_f) / t_f; }
    double detuning(std::size_t i, double t) const { return factors[i] * sweep(t); }
};

/// Graph plus pairwise blockade energies. Interactions live on graph edges
/// only; with positions they follow U_ij = C6 / r_ij^6.
class RydbergModel {
public:
    RydbergModel(Graph graph, double c6);
    RydbergModel(Graph graph, std::vector<double> edge_interactions);

    const Graph& graph() const { return graph_; }
    std::size_t size() const { return graph_.size(); }
    std::size_t dimension() const { return std::size_t{1} << graph_.size(); }
    const std::vector<double>& interactions() const { return interactions_; }
    double u_min() const;

    /// sum_{(i,j) in E} U_ij n_i n_j on every basis state.
    std::vector<double> interaction_diagonal() const;

private:
    Graph graph_;
    std::vector<double> interactions_;  // aligned with graph().edges()
};

/// C6 / r^6 on edges when the graph carries positions, otherwise C6 on every
/// edge (all blockaded pairs at unit spacing).
RydbergModel make_rydberg_model(const Graph& graph, double c6);

/// Excitation-count operator sum_i n_i and detuning weights sum_i f_i n_i on
/// every basis state.
std::vector<double> excitation_diagonal(std::size_t n);
std::vector<double> weight_diagonal(const std::vector<double>& factors);

/// H(t) = sum_i [Omega(t) X_i - Delta_i(t) n_i] + sum_E U_ij n_i n_j in the
/// computational basis (bit i of the index is n_i). Real symmetric.
Eigen::SparseMatrix<double> assemble_hamiltonian(const RydbergModel& model, const PulseSchedule& schedule,
                                                 double t, std::size_t cap = kDefaultSimulationCap);

/// Matrix-free H(t) for Krylov methods.
class InstantaneousHamiltonian {
public:
    InstantaneousHamiltonian(const RydbergModel& model, const PulseSchedule& schedule,
                             std::size_t cap = kDefaultSimulationCap);

    std::size_t dimension() const { return interaction_.size(); }
    void set_time(double t);
    double omega() const { return omega_; }
    double diagonal(std::size_t s) const { return interaction_[s] - sweep_ * weight_[s]; }
    void apply(const double* x, double* y) const;

private:
    std::size_t n_;
    const PulseSchedule* schedule_;
    std::vector<double> interaction_;
    std::vector<double> weight_;
    double omega_ = 0.0;
    double sweep_ = 0.0;
};

struct QuantumState {
    std::vector<std::complex<double>> amplitudes;

    static QuantumState ground(std::size_t n);
    std::size_t dimension() const { return amplitudes.size(); }
    double norm() const;
    double probability(std::size_t s) const { return std::norm(amplitudes[s]); }
};

struct IntegratorConfig {
    double dt = 0.005;  // upper bound on the step, in time units
    double norm_tolerance = 1e-6;
    std::size_t sample_every = 0;  // trajectory stride in steps; 0 disables
    bool sample_gap = false;       // also record the instantaneous gap at samples
    std::size_t gap_levels = 1;    // gap taken to this level index
    std::size_t cap = kDefaultSimulationCap;
};

struct TrajectorySample {
    double t = 0.0;
    double p_mis = 0.0;
    double mean_excitation = 0.0;
    double gap = std::numeric_limits<double>::quiet_NaN();
};

struct EvolutionResult {
    QuantumState state;
    double norm_error = 0.0;
    std::size_t steps = 0;
    std::vector<TrajectorySample> trajectory;
};

/// Integrates the Schroedinger equation from the all-ground state over
/// [0, t_f] with a six-stage fourth-order splitting (Blanes-Moan). The
/// splitting separates the static interaction diagonal from the product of
/// single-site drive/detuning rotations, so every substep is exactly unitary.
/// The catalog, when given, feeds P_MIS into the trajectory.
EvolutionResult evolve(const RydbergModel& model, const PulseSchedule& schedule, const IntegratorConfig& config = {},
                       const IsCatalog* catalog = nullptr);

void write_trajectory_csv(const std::string& path, const std::vector<TrajectorySample>& samples);

// ---------------------------------------------------------------------------
// Final-time band structure

struct BandState {
    VertexSet set = 0;
    double energy = 0.0;
};

struct SpectrumRecord {
    std::vector<std::vector<BandState>> bands;  // index = excitation count
    double e_mis_mean = 0.0;
    std::vector<bool> connected;  // aligned with catalog.near_maximum_sets()
    bool bands_separated = false;
    double delta_min = std::numeric_limits<double>::quiet_NaN();
};

/// Energy of an independent set at t_f: -(delta0/2) * sum_{i in S} f_i. The
/// interaction term vanishes on independent sets.
double final_energy(VertexSet s, const std::vector<double>& factors, double delta0);

SpectrumRecord final_band_spectrum(const IsCatalog& catalog, const std::vector<double>& factors, double delta0);
SpectrumRecord final_band_spectrum(const IsCatalog& catalog, const DetuningProfile& profile);

/// Band ordering over every vertex subset, independent or not: the maximum
/// k-subset energy lies strictly below the minimum (k-1)-subset energy for all
/// k. Brute force over 2^N subsets.
bool all_subset_bands_separated(const std::vector<double>& factors, double delta0);

// ---------------------------------------------------------------------------
// Instantaneous spectrum along the sweep

/// Lowest eigenvalues of H(t), counted with multiplicity. Dense for small
/// spaces, block Davidson with a diagonal preconditioner otherwise. Successive
/// calls reuse the previous Ritz vectors as the start block.
class LowSpectrumSolver {
public:
    LowSpectrumSolver(std::size_t levels, std::uint64_t seed = 0x5eed);

    std::vector<double> solve(const InstantaneousHamiltonian& h);

    std::size_t levels() const { return levels_; }
    std::size_t dense_threshold = 128;
    std::size_t max_basis = 96;
    double residual_tolerance = 1e-6;

private:
    std::size_t levels_;
    std::uint64_t seed_;
    std::vector<std::vector<double>> warm_;
    std::size_t calls_ = 0;
};

struct GapOptions {
    std::size_t grid_points = 200;
    /// Number of levels that merge into the final ground manifold; the gap is
    /// E_{ground_levels} - E_0. 1 gives the plain ground-to-first-excited gap.
    std::size_t ground_levels = 1;
    double refine_tolerance = 1e-6;  // golden-section stop, relative to t_f
    std::size_t cap = 12;
};

struct GapResult {
    double delta_min = 0.0;
    double t_min = 0.0;
    bool degenerate = false;
    std::size_t evaluations = 0;
};

double instantaneous_gap(const RydbergModel& model, const PulseSchedule& schedule, double t,
                         std::size_t ground_levels = 1);

/// Minimum of E_{ground_levels}(t) - E_0(t) over a uniform grid on [0, t_f],
/// refined by golden-section search around the grid minimum.
GapResult minimal_gap(const RydbergModel& model, const PulseSchedule& schedule, const GapOptions& options = {});

}  // namespace ldaqc
