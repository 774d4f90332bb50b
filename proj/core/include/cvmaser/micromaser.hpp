// Copyright 2026 The cvmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVMASER_MICROMASER_HPP
#define CVMASER_MICROMASER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cvmaser/fock.hpp"

namespace cvmaser {

/// Warnings raised by validity checks; operations append to it when given.
using Warnings = std::vector<std::string>;

/// Atom levels: |e⟩ is index 0, |g⟩ is index 1.
inline constexpr int kExcited = 0;
inline constexpr int kGround = 1;

struct JCParams {
    double omega_a = 0.0;
    double omega = 0.0;
    double g = 0.0;
};

/// Atom(2) ⊗ Mode(cutoff).
SpaceSignature atom_field_space(int field_cutoff);

/// H = (ω_a/2)σ₃ + ωâ†â − ig(σ₊â − σ₋â†), σ₃ = |e⟩⟨e| − |g⟩⟨g|, σ₊ = |e⟩⟨g|.
OperatorMatrix jc_hamiltonian(const JCParams &p, int field_cutoff);

StateVector jc_evolve(const StateVector &state, const JCParams &p, double t);
DensityOperator jc_evolve(const DensityOperator &state, const JCParams &p, double t);

/// Field-only diagonal unitary with phases e^{-ig²(n+1)t/Δ}. Warns when
/// |Δ| < 10·g·√cutoff.
OperatorMatrix dispersive_phase(double delta, double g, double t, int field_cutoff, Warnings *warnings = nullptr);

struct DispersiveFourier {
    double t;
    OperatorMatrix unitary;
};

/// Smallest t > 0 with g²t/Δ = 3π/2, where the dispersive phases equal i^{n+1}.
DispersiveFourier fourier_via_dispersive(double g, double delta, int field_cutoff);

/// e^{-κt(â² − â†²)}, the evolution under the Hermitian generator iκ(â†² − â²);
/// equal to a one-mode squeezer with r = 2κt, θ = 0.
OperatorMatrix two_photon_unitary(double kappa, double t, int field_cutoff);

struct PumpConfig {
    double kappa = 1.0;
    double t_int = 0.1;
    Complex c_e{0.0, 0.0};
    Complex c_g{1.0, 0.0};
    double epsilon = 0.0;
    /// Flip the sign of c_e on every odd atom.
    bool alternate_coherence = true;

    /// c_g = 1/√(1+(1−ε)²), c_e = −i(1−ε)c_g.
    static PumpConfig from_epsilon(double epsilon, double kappa = 1.0, double t_int = 0.1);
    void validate() const;
};

/// One atom transit: attach the atom, evolve under the resonant coupling
/// −iκ(σ₊â − σ₋â†) for t_int, pulse the atom, trace it out.
DensityOperator pump_step(const DensityOperator &rho_field, const PumpConfig &cfg, std::size_t atom_index = 0);

struct PumpRecord {
    std::size_t step;
    double var_x;
    double var_p;
    double purity;
};

struct PumpResult {
    DensityOperator rho;
    std::vector<PumpRecord> trace;
    bool converged;
};

/// Iterates pump_step until consecutive var(p̂) differ by less than var_tol
/// or max_atoms atoms have passed.
PumpResult pump_to_steady(const DensityOperator &rho0, const PumpConfig &cfg, std::size_t max_atoms,
                          double var_tol);

struct ThreeLevelConfig {
    double g1 = 0.0;
    double g2 = 0.0;
    double gamma = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;

    /// True when min|δ| ≥ 10·max(g₁, g₂, Γ).
    bool dispersive_valid() const;
};

/// Θ + i g₁g₂Γ (A − A†) with A = (P̂Q̂)⁻¹ â₁†â₂†, P̂ = Σ n_i(δ₃/2 − δ_i),
/// Q̂ = P̂ + δ₂ and Θ = θ₁N̂₁ + θ₂N̂₂, on Mode(c1) ⊗ Mode(c2). Throws
/// ErrorKind::Singular naming the Fock sector if P̂Q̂ vanishes where needed.
OperatorMatrix two_mode_effective_hamiltonian(const ThreeLevelConfig &cfg, int cutoff1, int cutoff2,
                                              Warnings *warnings = nullptr);

/// Diagonal unitary exp(i Σ n_i(ω_i + δ_i − δ₃/2) t) on Mode(c1) ⊗ Mode(c2).
OperatorMatrix frame_rotation(const ThreeLevelConfig &cfg, double t, int cutoff1, int cutoff2);

/// Atom rotation e^{-iθσ_y/2}; angle π/2 is the Hadamard-like pulse.
Matrix atom_rotation(double angle);

struct AtomMeasurement {
    int outcome;  // kExcited or kGround
    StateVector field;
    double probability;
};

/// Born probabilities of the two outcomes after rotating the atom (factor 0).
std::pair<double, double> atom_outcome_probabilities(const StateVector &joint, double basis_angle);

AtomMeasurement measure_atom(const StateVector &joint, double basis_angle, std::uint64_t seed);
AtomMeasurement measure_atom_branch(const StateVector &joint, double basis_angle, int outcome);

struct MixedAtomMeasurement {
    int outcome;
    DensityOperator field;
    double probability;
};

std::pair<double, double> atom_outcome_probabilities(const DensityOperator &joint, double basis_angle);
MixedAtomMeasurement measure_atom(const DensityOperator &joint, double basis_angle, std::uint64_t seed);
MixedAtomMeasurement measure_atom_branch(const DensityOperator &joint, double basis_angle, int outcome);

struct BeamConfig {
    double rate = 0.0;
    double cavity_length = 0.0;
    double velocity = 0.0;

    void validate() const;
    double transit_time() const {
        return cavity_length / velocity;
    }
};

/// P₁ = e^{-2rL/v}.
double one_atom_probability(const BeamConfig &b);

/// Homogeneous Poisson arrival times in [0, duration).
std::vector<double> sample_arrivals(const BeamConfig &b, double duration, std::uint64_t seed);

struct BeamStatistics {
    double p1;
    std::size_t arrivals;
    double expected_arrivals;
    /// Fraction of inter-arrival gaps shorter than L/v, with its
    /// prediction 1 − e^{-rL/v} and binomial standard error.
    double short_gap_fraction;
    double short_gap_expected;
    double short_gap_sigma;
    /// Fraction of atoms with no neighbor within L/v on either side,
    /// predicted by P₁.
    double isolated_fraction;
    double isolated_sigma;
};

/// Statistics over a sample of about n_atoms arrivals.
BeamStatistics beam_statistics(const BeamConfig &b, std::size_t n_atoms, std::uint64_t seed);

}  // namespace cvmaser

#endif
