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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvmaser/gates.hpp"
#include "cvmaser/micromaser.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cvmaser;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix sigma_plus() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

// −iκ(σ₊â − σ₋â†) plus the bare energies, built from scratch.
Matrix oracle_jc(const JCParams &p, int d) {
    Matrix a = oracle::annihilation(d);
    Matrix sz = Matrix::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    Matrix n = a.adjoint() * a;
    Matrix h = p.omega_a / 2 * oracle::kron(sz, Matrix::Identity(d, d)) + p.omega * oracle::kron(Matrix::Identity(2, 2), n);
    Matrix sp = sigma_plus();
    h += Complex(0, -p.g) * (oracle::kron(sp, a) - oracle::kron(Matrix(sp.adjoint()), Matrix(a.adjoint())));
    return h;
}

Matrix trace_out_atom(const Matrix &joint, int d) {
    return joint.block(0, 0, d, d) + joint.block(d, d, d, d);
}

}  // namespace

TEST(JaynesCummings, MatchesOracleAndConservesExcitations) {
    const int d = 9;
    JCParams p{1.3, 0.7, 0.4};
    OperatorMatrix h = jc_hamiltonian(p, d);
    EXPECT_EQ(h.space(), atom_field_space(d));
    EXPECT_LT(hermiticity_defect(h.matrix()), 1e-14);
    EXPECT_LT(max_abs(h.matrix() - oracle_jc(p, d)), 1e-14);
    Matrix excitations = Matrix::Zero(2 * d, 2 * d);
    for (int n = 0; n < d; ++n) {
        excitations(n, n) = n + 1;
        excitations(d + n, d + n) = n;
    }
    EXPECT_LT(max_abs(h.matrix() * excitations - excitations * h.matrix()), 1e-13);
}

TEST(JaynesCummings, VacuumRabiOscillation) {
    const int d = 6;
    JCParams p{1.0, 1.0, 0.8};
    SpaceSignature s = atom_field_space(d);
    StateVector e0 = make_fock(s, 1, 0);
    for (double t : {0.0, 0.3, 1.1, 2.5}) {
        StateVector out = jc_evolve(e0, p, t);
        double pe = 0.0;
        for (int n = 0; n < d; ++n) {
            pe += std::norm(out.amplitudes()(n));
        }
        EXPECT_NEAR(pe, std::pow(std::cos(p.g * t), 2), 1e-10) << t;
    }
}

TEST(JaynesCummings, DensityAgreesWithPure) {
    const int d = 7;
    JCParams p{0.2, 0.0, 1.0};
    SpaceSignature s = atom_field_space(d);
    Vector v = Vector::Zero(2 * d);
    v(1) = std::sqrt(0.3);
    v(d + 2) = Complex(0, std::sqrt(0.7));
    StateVector psi(s, v);
    StateVector out = jc_evolve(psi, p, 0.9);
    DensityOperator rho = jc_evolve(DensityOperator::from_pure(psi), p, 0.9);
    EXPECT_LT(max_abs(rho.matrix() - out.amplitudes() * out.amplitudes().adjoint()), 1e-12);
}

TEST(Dispersive, PhasesAndWarning) {
    const int d = 10;
    Warnings w;
    OperatorMatrix u = dispersive_phase(100.0, 1.0, 0.5, d, &w);
    EXPECT_TRUE(w.empty());
    for (int n = 0; n < d; ++n) {
        EXPECT_LT(std::abs(u.matrix()(n, n) - std::exp(Complex(0, -(n + 1) * 0.5 / 100.0))), 1e-14);
    }
    EXPECT_LT(max_abs(u.matrix() - Matrix(u.matrix().diagonal().asDiagonal())), 1e-15);
    dispersive_phase(2.0, 1.0, 0.5, d, &w);
    EXPECT_EQ(w.size(), 1u);
}

TEST(Dispersive, FourierTime) {
    const int d = 32;
    DispersiveFourier f = fourier_via_dispersive(1.0, 10.0, d);
    EXPECT_NEAR(f.t, 15 * kPi, 1e-12);
    EXPECT_LT(max_abs(f.unitary.matrix() - fourier(SpaceSignature::modes({d}), 0).matrix()), 1e-12);
    DispersiveFourier f2 = fourier_via_dispersive(1.0, 20.0, d);
    EXPECT_NEAR(f2.t, 2 * f.t, 1e-12);
    DispersiveFourier f3 = fourier_via_dispersive(2.0, 20.0, d);
    EXPECT_NEAR(f3.t, f.t / 2, 1e-12);
}

TEST(Dispersive, ApproximatesJaynesCummingsFarDetuned) {
    const int d = 8;
    const double delta = 80.0, g = 1.0, t = 0.7;
    JCParams p{delta, 0.0, g};
    SpaceSignature s = atom_field_space(d);
    OperatorMatrix u = dispersive_phase(delta, g, t, d);
    for (int n = 0; n < 3; ++n) {
        StateVector out = jc_evolve(make_fock(s, 1, n), p, t);
        // Strip the bare atomic phase e^{-iΔt/2} of |e⟩.
        Complex amp = out.amplitudes()(n) * std::exp(Complex(0, delta * t / 2));
        EXPECT_LT(std::abs(amp - u.matrix()(n, n)), 0.05) << n;
    }
}

TEST(TwoPhoton, EqualsSqueezerAndMatchesOracle) {
    const int d = 40;
    OperatorMatrix u = two_photon_unitary(0.5, 0.4, d);
    Matrix a = oracle::annihilation(d);
    Matrix gen = a * a - a.adjoint() * a.adjoint();
    EXPECT_LT(max_abs(u.matrix() - oracle::expm(-0.5 * 0.4 * gen)), 1e-10);
    const int big = 120;
    OperatorMatrix wide = two_photon_unitary(0.5, 0.4, big);
    OperatorMatrix sq = squeeze_one(SpaceSignature::modes({big}), 0, SqueezeParam{0.4, 0.0});
    std::vector<Index> block(d);
    for (int k = 0; k < d; ++k) {
        block[k] = k;
    }
    EXPECT_LT(restricted_max_abs(wide.matrix() - sq.matrix(), block), 1e-8);
}

TEST(TwoPhoton, MomentumVarianceFalls) {
    const int d = 120;
    SpaceSignature s = SpaceSignature::modes({d});
    QuadraturePair q = quadrature_ops(s, 0);
    double prev = 0.25 + 1e-12;
    for (double t : {0.1, 0.2, 0.3, 0.4}) {
        double vp = variance(q.p, apply(two_photon_unitary(1.0, t, d), make_vacuum(s)));
        EXPECT_LT(vp, prev);
        EXPECT_NEAR(vp, std::exp(-4 * t) / 4, 1e-8);
        prev = vp;
    }
}

TEST(Pump, ConfigFromEpsilon) {
    PumpConfig cfg = PumpConfig::from_epsilon(0.05);
    EXPECT_NEAR(std::norm(cfg.c_e) + std::norm(cfg.c_g), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(cfg.c_e / cfg.c_g), 0.95, 1e-15);
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_NO_THROW(PumpConfig::from_epsilon(0.0).validate());
    EXPECT_CVMASER_ERROR(PumpConfig::from_epsilon(1.0).validate(), ErrorKind::InvalidArgument);
    EXPECT_CVMASER_ERROR(PumpConfig::from_epsilon(-0.1).validate(), ErrorKind::InvalidArgument);
}

TEST(Pump, StepMatchesOracle) {
    const int d = 12;
    PumpConfig cfg = PumpConfig::from_epsilon(0.2, 1.0, 0.3);
    SpaceSignature s = SpaceSignature::modes({d});
    StateVector coh = make_coherent(s, 0, Complex(0.4, -0.2)).normalized();
    DensityOperator rho = DensityOperator::from_pure(coh);
    Matrix h = oracle_jc(JCParams{0.0, 0.0, cfg.kappa}, d);
    Matrix u = oracle::expm(Complex(0, -cfg.t_int) * h);
    for (std::size_t idx : {0u, 1u}) {
        Vector atom(2);
        atom << (idx % 2 == 0 ? cfg.c_e : -cfg.c_e), cfg.c_g;
        Matrix atom_rho = atom * atom.adjoint();
        Matrix joint = u * oracle::kron(atom_rho, rho.matrix()) * u.adjoint();
        Matrix expected = trace_out_atom(joint, d);
        DensityOperator out = pump_step(rho, cfg, idx);
        EXPECT_LT(max_abs(out.matrix() - expected), 1e-12) << idx;
    }
}

TEST(Pump, TraceAndPositivityPreserved) {
    const int d = 16;
    SpaceSignature s = SpaceSignature::modes({d});
    std::mt19937_64 rng(5);
    for (double eps : {0.0, 0.05, 0.5}) {
        for (double kt : {0.05, 0.4}) {
            PumpConfig cfg = PumpConfig::from_epsilon(eps, 1.0, kt);
            StateVector psi(s, oracle::random_state(d, rng));
            DensityOperator rho = DensityOperator::from_pure(psi);
            for (std::size_t k = 0; k < 20; ++k) {
                rho = pump_step(rho, cfg, k);
            }
            EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
            Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
            EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9);
        }
    }
}

TEST(Pump, ZeroCouplingIsIdentity) {
    SpaceSignature s = SpaceSignature::modes({10});
    DensityOperator rho = DensityOperator::from_pure(make_coherent(s, 0, Complex(0.5, 0.5)).normalized());
    PumpConfig cfg = PumpConfig::from_epsilon(0.05, 0.0, 0.1);
    EXPECT_LT(max_abs(pump_step(rho, cfg, 0).matrix() - rho.matrix()), 1e-15);
}

TEST(Pump, SqueezesMomentumOnlyWhenImbalanced) {
    SpaceSignature s = SpaceSignature::modes({30});
    DensityOperator vac = DensityOperator::from_pure(make_vacuum(s));
    PumpResult sq = pump_to_steady(vac, PumpConfig::from_epsilon(0.05), 300, 0.0);
    ASSERT_EQ(sq.trace.size(), 300u);
    EXPECT_LT(sq.trace.back().var_p, 0.23);
    EXPECT_LT(sq.trace.back().var_p, sq.trace[49].var_p);
    EXPECT_GT(sq.trace.back().var_x, 0.25);
    PumpResult ctl = pump_to_steady(vac, PumpConfig::from_epsilon(0.0), 300, 0.0);
    double lowest = 1.0;
    for (const auto &r : ctl.trace) {
        lowest = std::min(lowest, r.var_p);
    }
    EXPECT_GE(lowest, 0.25 - 1e-6);
    EXPECT_CVMASER_ERROR(pump_to_steady(vac, PumpConfig::from_epsilon(0.05), 0, 0.0), ErrorKind::InvalidArgument);
}

TEST(Pump, ConvergenceStopsEarly) {
    SpaceSignature s = SpaceSignature::modes({20});
    DensityOperator vac = DensityOperator::from_pure(make_vacuum(s));
    PumpResult r = pump_to_steady(vac, PumpConfig::from_epsilon(0.3), 5000, 1e-6);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.trace.size(), 5000u);
}

namespace {

ThreeLevelConfig nondegenerate() {
    ThreeLevelConfig c;
    c.g1 = 1.0;
    c.g2 = 1.0;
    c.gamma = 1.0;
    c.delta1 = 10.0;
    c.delta2 = 12.0;
    c.delta3 = 50.0;
    c.theta1 = 0.01;
    c.theta2 = -0.02;
    return c;
}

}  // namespace

TEST(EffectiveHamiltonian, HermitianAndConservesDifference) {
    const int c1 = 8, c2 = 7;
    ThreeLevelConfig cfg = nondegenerate();
    Warnings w;
    OperatorMatrix h = two_mode_effective_hamiltonian(cfg, c1, c2, &w);
    EXPECT_TRUE(w.empty());
    EXPECT_LT(hermiticity_defect(h.matrix()), 1e-12);
    SpaceSignature s = SpaceSignature::modes({c1, c2});
    Matrix diff = number_op(s, 0).matrix() - number_op(s, 1).matrix();
    EXPECT_LT(max_abs(h.matrix() * diff - diff * h.matrix()), 1e-12);
}

TEST(EffectiveHamiltonian, PairCreationElement) {
    ThreeLevelConfig cfg = nondegenerate();
    OperatorMatrix h = two_mode_effective_hamiltonian(cfg, 5, 5);
    // ⟨1,1|H|0,0⟩ with P = 2·25 − 10 − 12 = 28 and Q = P + 12 on |1,1⟩.
    double pq = 28.0 * 40.0;
    EXPECT_LT(std::abs(h.matrix()(6, 0) - Complex(0, 1.0 / pq)), 1e-14);
    EXPECT_LT(std::abs(h.matrix()(0, 6) - Complex(0, -1.0 / pq)), 1e-14);
}

TEST(EffectiveHamiltonian, NoCouplingLeavesTheta) {
    ThreeLevelConfig cfg = nondegenerate();
    cfg.g1 = 0.0;
    const int c = 6;
    OperatorMatrix h = two_mode_effective_hamiltonian(cfg, c, c);
    SpaceSignature s = SpaceSignature::modes({c, c});
    Matrix theta = cfg.theta1 * number_op(s, 0).matrix() + cfg.theta2 * number_op(s, 1).matrix();
    EXPECT_LT(max_abs(h.matrix() - theta), 1e-15);
}

TEST(EffectiveHamiltonian, SingularSectorAndWarning) {
    ThreeLevelConfig cfg = nondegenerate();
    cfg.delta1 = 5.0;
    cfg.delta2 = 5.0;
    cfg.delta3 = 10.0;
    EXPECT_CVMASER_ERROR(two_mode_effective_hamiltonian(cfg, 4, 4), ErrorKind::Singular);
    ThreeLevelConfig weak = nondegenerate();
    weak.delta1 = 3.0;
    EXPECT_FALSE(weak.dispersive_valid());
    Warnings w;
    two_mode_effective_hamiltonian(weak, 4, 4, &w);
    EXPECT_FALSE(w.empty());
    EXPECT_TRUE(nondegenerate().dispersive_valid());
}

TEST(FrameRotation, DiagonalPhases) {
    ThreeLevelConfig cfg = nondegenerate();
    cfg.omega1 = 2.0;
    cfg.omega2 = 3.0;
    const double t = 0.37;
    const int c1 = 4, c2 = 5;
    OperatorMatrix u = frame_rotation(cfg, t, c1, c2);
    EXPECT_LT(unitarity_defect(u.matrix()), 1e-14);
    for (int n1 = 0; n1 < c1; ++n1) {
        for (int n2 = 0; n2 < c2; ++n2) {
            double phase = (n1 * (2.0 + 10.0 - 25.0) + n2 * (3.0 + 12.0 - 25.0)) * t;
            EXPECT_LT(std::abs(u.matrix()(n1 * c2 + n2, n1 * c2 + n2) - std::exp(Complex(0, phase))), 1e-13);
        }
    }
}

TEST(Measurement, ProductStateAndRotation) {
    const int d = 6;
    SpaceSignature s = atom_field_space(d);
    SpaceSignature f = SpaceSignature::modes({d});
    StateVector field = make_coherent(f, 0, Complex(0.3, 0.1)).normalized();
    Vector e = Vector::Zero(2);
    e(0) = 1.0;
    StateVector joint(s, oracle::kron(Matrix(e), Matrix(field.amplitudes())).col(0));
    auto [pe, pg] = atom_outcome_probabilities(joint, 0.0);
    EXPECT_NEAR(pe, 1.0, 1e-14);
    EXPECT_NEAR(pg, 0.0, 1e-14);
    AtomMeasurement m = measure_atom(joint, 0.0, 9);
    EXPECT_EQ(m.outcome, kExcited);
    EXPECT_NEAR(fidelity(m.field, field), 1.0, 1e-14);
    EXPECT_CVMASER_ERROR(measure_atom_branch(joint, 0.0, kGround), ErrorKind::InvalidArgument);
    auto [qe, qg] = atom_outcome_probabilities(joint, kPi / 2);
    EXPECT_NEAR(qe, 0.5, 1e-14);
    EXPECT_NEAR(qg, 0.5, 1e-14);
    Matrix r = atom_rotation(kPi / 2);
    EXPECT_LT(unitarity_defect(r), 1e-15);
}

TEST(Measurement, EntangledBranchesAndDensityAgreement) {
    const int d = 8;
    SpaceSignature s = atom_field_space(d);
    StateVector joint = jc_evolve(make_fock(s, 1, 2), JCParams{0, 0, 1}, 0.4);
    for (double angle : {0.0, 0.9}) {
        auto [pe, pg] = atom_outcome_probabilities(joint, angle);
        EXPECT_NEAR(pe + pg, 1.0, 1e-12);
        DensityOperator rho = DensityOperator::from_pure(joint);
        auto [de, dg] = atom_outcome_probabilities(rho, angle);
        EXPECT_NEAR(de, pe, 1e-12);
        EXPECT_NEAR(dg, pg, 1e-12);
        for (int outcome : {kExcited, kGround}) {
            AtomMeasurement b = measure_atom_branch(joint, angle, outcome);
            MixedAtomMeasurement mb = measure_atom_branch(rho, angle, outcome);
            EXPECT_NEAR(b.field.norm_squared(), 1.0, 1e-12);
            EXPECT_NEAR(b.probability, mb.probability, 1e-12);
            const Vector &v = b.field.amplitudes();
            EXPECT_LT(max_abs(mb.field.matrix() - v * v.adjoint()), 1e-12);
        }
    }
    AtomMeasurement a1 = measure_atom(joint, 0.9, 1234);
    AtomMeasurement a2 = measure_atom(joint, 0.9, 1234);
    EXPECT_EQ(a1.outcome, a2.outcome);
    EXPECT_EQ(a1.field.amplitudes(), a2.field.amplitudes());
}

TEST(Measurement, OutcomeFrequencies) {
    const int d = 6;
    SpaceSignature s = atom_field_space(d);
    StateVector joint = jc_evolve(make_fock(s, 1, 1), JCParams{0, 0, 1}, 0.5);
    double pe = atom_outcome_probabilities(joint, 0.0).first;
    int excited = 0;
    const int trials = 4000;
    for (int k = 0; k < trials; ++k) {
        excited += measure_atom(joint, 0.0, 1000 + k).outcome == kExcited ? 1 : 0;
    }
    double sigma = std::sqrt(pe * (1 - pe) / trials);
    EXPECT_NEAR(static_cast<double>(excited) / trials, pe, 4 * sigma);
}

TEST(Beam, OneAtomProbability) {
    EXPECT_NEAR(one_atom_probability(BeamConfig{10, 0.03, 300}), std::exp(-0.002), 1e-15);
    EXPECT_NEAR(one_atom_probability(BeamConfig{100, 0.03, 300}), std::exp(-0.02), 1e-15);
    double prev = 1.0;
    for (double rate : {1.0, 10.0, 100.0, 1000.0}) {
        double p = one_atom_probability(BeamConfig{rate, 0.03, 300});
        EXPECT_LT(p, prev);
        prev = p;
    }
    EXPECT_CVMASER_ERROR(one_atom_probability(BeamConfig{10, 0.03, 0}), ErrorKind::InvalidArgument);
}

TEST(Beam, ArrivalsArePoisson) {
    BeamConfig b{50.0, 0.03, 300};
    std::vector<double> t = sample_arrivals(b, 200.0, 77);
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    EXPECT_GE(t.front(), 0.0);
    EXPECT_LT(t.back(), 200.0);
    double mean = 50.0 * 200.0;
    EXPECT_NEAR(static_cast<double>(t.size()), mean, 5 * std::sqrt(mean));
    double gap_sum = 0.0, gap_sq = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        double g = t[k] - t[k - 1];
        gap_sum += g;
        gap_sq += g * g;
    }
    double n = static_cast<double>(t.size() - 1);
    double gap_mean = gap_sum / n;
    EXPECT_NEAR(gap_mean, 1.0 / 50.0, 5 * (1.0 / 50.0) / std::sqrt(n));
    // Exponential gaps have standard deviation equal to the mean.
    EXPECT_NEAR(std::sqrt(gap_sq / n - gap_mean * gap_mean) / gap_mean, 1.0, 0.05);
    EXPECT_EQ(sample_arrivals(b, 200.0, 77), t);
    EXPECT_NE(sample_arrivals(b, 200.0, 78), t);
    EXPECT_CVMASER_ERROR(sample_arrivals(b, 0.0, 1), ErrorKind::InvalidArgument);
}

TEST(Beam, StatisticsAgreeWithPredictions) {
    BeamConfig b{1000.0, 0.03, 300};
    BeamStatistics st = beam_statistics(b, 50000, 3);
    EXPECT_NEAR(st.p1, std::exp(-0.2), 1e-15);
    EXPECT_NEAR(st.short_gap_expected, 1 - std::exp(-0.1), 1e-15);
    EXPECT_NEAR(st.short_gap_fraction, st.short_gap_expected, 4 * st.short_gap_sigma);
    EXPECT_NEAR(st.isolated_fraction, st.p1, 4 * st.isolated_sigma);
}
