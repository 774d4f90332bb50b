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

#include <cmath>
#include <numbers>
#include <random>

#include "cvmaser/gates.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cvmaser;
using std::numbers::pi;

namespace {

double overlap_modulus(const StateVector &a, const StateVector &b) {
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

Matrix identity(const SpaceSignature &s) {
    return Matrix::Identity(s.dim(), s.dim());
}

}  // namespace

TEST(Displacement, ShiftsMeans) {
    SpaceSignature s = SpaceSignature::modes({30});
    QuadraturePair q = quadrature_ops(s, 0);
    StateVector dx = apply(displace_x(s, 0, 0.7), make_vacuum(s));
    EXPECT_NEAR(expectation(q.x, dx).real(), 0.7, 1e-8);
    EXPECT_NEAR(variance(q.x, dx), 0.25, 1e-8);
    StateVector dz = apply(displace_z(s, 0, 0.5), make_vacuum(s));
    EXPECT_NEAR(expectation(q.p, dz).real(), 0.5, 1e-8);
    EXPECT_NEAR(expectation(q.x, dz).real(), 0.0, 1e-12);
    EXPECT_LT(max_abs(displace_x(s, 0, 0.0).matrix() - identity(s)), 1e-14);
    EXPECT_LT(max_abs(displace_z(s, 0, 0.0).matrix() - identity(s)), 1e-14);
}

TEST(Displacement, MatchesGeneratorOracle) {
    SpaceSignature s = SpaceSignature::modes({12});
    Matrix a = oracle::annihilation(12);
    Matrix p = (a - a.adjoint()) / Complex(0, 2);
    Matrix x = (a + a.adjoint()) / 2.0;
    EXPECT_LT(max_abs(displace_x(s, 0, 0.4).matrix() - oracle::expm(Complex(0, -2 * 0.4) * p)), 1e-11);
    EXPECT_LT(max_abs(displace_z(s, 0, -0.3).matrix() - oracle::expm(Complex(0, 2 * -0.3) * x)), 1e-11);
}

TEST(Displacement, Homomorphism) {
    SpaceSignature s = SpaceSignature::modes({25});
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 8; ++trial) {
        double a = u(rng), b = u(rng);
        Matrix lhs = displace_x(s, 0, a).matrix() * displace_x(s, 0, b).matrix();
        EXPECT_LT(max_abs(lhs - displace_x(s, 0, a + b).matrix()), 1e-8);
    }
}

TEST(Displacement, GeneralReducesToAxes) {
    SpaceSignature s = SpaceSignature::modes({20});
    EXPECT_LT(max_abs(displace_general(s, 0, 0.8).matrix() - displace_x(s, 0, 0.8).matrix()), 1e-12);
    EXPECT_LT(max_abs(displace_general(s, 0, Complex(0, 0.6)).matrix() - displace_z(s, 0, 0.6).matrix()), 1e-12);
    EXPECT_LT(max_abs(displace_general(s, 0, 0.0).matrix() - identity(s)), 1e-14);
}

TEST(Displacement, CoherentStateOracle) {
    SpaceSignature s = SpaceSignature::modes({40});
    for (Complex alpha : {Complex(1.0, 0.0), Complex(-0.5, 1.2), Complex(1.4, -1.4)}) {
        StateVector d = apply(displace_general(s, 0, alpha), make_vacuum(s));
        Vector series(40);
        for (int n = 0; n < 40; ++n) {
            series(n) = oracle::coherent_amplitude(alpha, n);
        }
        double f = std::norm(series.dot(d.amplitudes()));
        EXPECT_GE(f, 1 - 1e-9) << alpha;
    }
}

TEST(Displacement, CompositionUpToPhase) {
    SpaceSignature s = SpaceSignature::modes({40});
    Complex a(0.3, -0.4), b(-0.6, 0.2);
    StateVector two = apply(displace_general(s, 0, a), apply(displace_general(s, 0, b), make_vacuum(s)));
    StateVector one = apply(displace_general(s, 0, a + b), make_vacuum(s));
    EXPECT_NEAR(overlap_modulus(one, two), 1.0, 1e-8);
}

TEST(Fourier, EigenphasesAndPeriod) {
    SpaceSignature s = SpaceSignature::modes({16});
    Matrix f = fourier(s, 0).matrix();
    const Complex expected[] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};
    for (int n = 0; n < 4; ++n) {
        EXPECT_EQ(f(n, n), expected[n]);
    }
    Matrix f4 = f * f * f * f;
    EXPECT_LT(max_abs(f4 - identity(s)), 1e-15);
    Matrix general = fourier(s, 0, 0.3).matrix();
    for (int n = 0; n < 16; ++n) {
        EXPECT_LT(std::abs(general(n, n) - std::polar(1.0, 0.3 * (n + 1))), 1e-13);
    }
}

TEST(Fourier, RotatesPositionIntoMomentum) {
    SpaceSignature s = SpaceSignature::modes({24});
    QuadraturePair q = quadrature_ops(s, 0);
    Matrix f = fourier(s, 0).matrix();
    Matrix conj = f * q.x.matrix() * f.adjoint();
    std::vector<Index> block = low_fock_indices(s, 1);
    EXPECT_LT(restricted_max_abs(conj - q.p.matrix(), block), 1e-6);

    StateVector shifted = apply(displace_x(s, 0, 1.1), make_vacuum(s));
    StateVector rotated = apply(fourier(s, 0), shifted);
    EXPECT_NEAR(expectation(q.p, rotated).real(), expectation(q.x, shifted).real(), 1e-8);
}

TEST(Fourier, ConjugatesXDisplacementIntoZ) {
    SpaceSignature s = SpaceSignature::modes({30});
    Matrix f = fourier(s, 0).matrix();
    Matrix conj = f * displace_x(s, 0, 0.9).matrix() * f.adjoint();
    StateVector a = apply(OperatorMatrix(s, conj), make_vacuum(s));
    StateVector b = apply(displace_z(s, 0, 0.9), make_vacuum(s));
    EXPECT_GE(std::norm(a.amplitudes().dot(b.amplitudes())), 1 - 1e-8);
}

TEST(Squeeze, VacuumVariances) {
    SpaceSignature s = SpaceSignature::modes({40});
    QuadraturePair q = quadrature_ops(s, 0);
    StateVector sq = apply(squeeze_one(s, 0, {0.5, 0.0}), make_vacuum(s));
    EXPECT_NEAR(variance(q.p, sq), std::exp(-1.0) / 4, 1e-8);
    EXPECT_NEAR(variance(q.x, sq), std::exp(1.0) / 4, 1e-8);
    EXPECT_NEAR(variance(q.x, sq) * variance(q.p, sq), 1.0 / 16, 1e-8);
    EXPECT_LT(max_abs(squeeze_one(s, 0, {0.0, 0.3}).matrix() - identity(s)), 1e-14);
}

TEST(Squeeze, MatchesExponentOracle) {
    const int d = 14;
    SpaceSignature s = SpaceSignature::modes({d});
    Matrix a = oracle::annihilation(d);
    for (auto [r, theta] : {std::pair{0.3, 0.0}, std::pair{0.2, 0.9}}) {
        Complex xi = -std::polar(r, 2 * theta);
        Matrix gen = (std::conj(xi) / 2.0) * a * a - (xi / 2.0) * a.adjoint() * a.adjoint();
        EXPECT_LT(max_abs(squeeze_one(s, 0, {r, theta}).matrix() - oracle::expm(gen)), 1e-11);
    }
}

TEST(Squeeze, ActionOnRotatedAnnihilator) {
    // Built in a padded space; compared on the low block of a cutoff-40 space.
    SpaceSignature small = SpaceSignature::modes({40});
    SpaceSignature padded = SpaceSignature::modes({120});
    std::vector<Index> block = low_fock_indices(small, 1);
    Matrix a = ladder_ops(padded, 0).a.matrix();
    for (double theta : {0.0, pi / 4}) {
        Matrix u = squeeze_one(padded, 0, {0.3, theta}).matrix();
        QuadraturePair qt = quadrature_ops(padded, 0, theta);
        Matrix lhs = u.adjoint() * (std::polar(1.0, -theta) * a) * u;
        Matrix rhs = std::exp(0.3) * qt.x.matrix() + Complex(0, std::exp(-0.3)) * qt.p.matrix();
        EXPECT_LT(restricted_max_abs(lhs - rhs, block), 1e-6) << theta;
    }
}

TEST(Squeeze, UncertaintyPreservedAlongAxes) {
    SpaceSignature s = SpaceSignature::modes({50});
    for (auto [r, theta] : {std::pair{0.4, 0.0}, std::pair{0.6, 0.5}, std::pair{0.3, -1.2}}) {
        StateVector sq = apply(squeeze_one(s, 0, {r, theta}), make_vacuum(s));
        QuadraturePair qt = quadrature_ops(s, 0, theta);
        double vx = variance(qt.x, sq);
        double vp = variance(qt.p, sq);
        EXPECT_NEAR(vx * vp, 1.0 / 16, 1e-7);
        EXPECT_NEAR(vp, std::exp(-2 * r) / 4, 1e-7);
    }
}

TEST(Squeeze, LimitAndParam) {
    SpaceSignature s = SpaceSignature::modes({10});
    EXPECT_CVMASER_ERROR(squeeze_one(s, 0, {3.5, 0.0}), ErrorKind::InvalidArgument);
    EXPECT_NO_THROW(squeeze_one(s, 0, {3.5, 0.0}, 4.0));
    SqueezeParam p = SqueezeParam::from_zeta(std::polar(0.7, 1.1));
    EXPECT_NEAR(p.r, 0.7, 1e-15);
    EXPECT_NEAR(p.theta, 1.1, 1e-15);
}

TEST(TwoModeSqueeze, PhotonNumbersAndCorrelations) {
    SpaceSignature s = SpaceSignature::modes({12, 12});
    StateVector psi = apply(squeeze_two(s, 0, 1, {0.3, 0.0}), make_vacuum(s));
    double sh2 = std::sinh(0.3) * std::sinh(0.3);
    EXPECT_NEAR(expectation(number_op(s, 0), psi).real(), sh2, 1e-6);
    EXPECT_NEAR(expectation(number_op(s, 1), psi).real(), sh2, 1e-6);
    QuadraturePair q0 = quadrature_ops(s, 0);
    QuadraturePair q1 = quadrature_ops(s, 1);
    double x_sum = variance(q0.x + q1.x, psi);
    double x_diff = variance(q0.x - q1.x, psi);
    double p_sum = variance(q0.p + q1.p, psi);
    double p_diff = variance(q0.p - q1.p, psi);
    double lo = 0.5 * std::exp(-0.6);
    double hi = 0.5 * std::exp(0.6);
    EXPECT_NEAR(x_sum, lo, 1e-6);
    EXPECT_NEAR(p_diff, lo, 1e-6);
    EXPECT_NEAR(x_diff, hi, 1e-5);
    EXPECT_NEAR(x_sum * x_diff, 0.25, 1e-5);
    EXPECT_NEAR(p_sum * p_diff, 0.25, 1e-5);
}

TEST(TwoModeSqueeze, ReducedStateIsThermal) {
    SpaceSignature s = SpaceSignature::modes({14, 14});
    const double r = 0.4;
    StateVector psi = apply(squeeze_two(s, 0, 1, {r, 0.7}), make_vacuum(s));
    Matrix reduced = partial_trace(DensityOperator::from_pure(psi), {0}).matrix();
    double t2 = std::pow(std::tanh(r), 2);
    for (int n = 0; n < 8; ++n) {
        EXPECT_NEAR(reduced(n, n).real(), (1 - t2) * std::pow(t2, n), 1e-6) << n;
    }
}

TEST(TwoModeSqueeze, RequiresDistinctModes) {
    SpaceSignature s = SpaceSignature::modes({4, 4});
    EXPECT_CVMASER_ERROR(squeeze_two(s, 0, 0, {0.1, 0.0}), ErrorKind::InvalidArgument);
    EXPECT_LT(max_abs(squeeze_two(s, 0, 1, {0.0, 0.0}).matrix() - identity(s)), 1e-14);
}

TEST(Kerr, DiagonalPhases) {
    SpaceSignature s = SpaceSignature::modes({10});
    Matrix k = kerr(s, 0, 0.37).matrix();
    for (int n = 0; n < 10; ++n) {
        EXPECT_LT(std::abs(k(n, n) - std::polar(1.0, -0.37 * (n + 0.5) * (n + 0.5))), 1e-13);
    }
    Matrix full = kerr(s, 0, 2 * pi).matrix();
    EXPECT_LT(max_abs(full - Complex(0, -1) * identity(s)), 1e-12);
    EXPECT_LT(max_abs(kerr(s, 0, 0.0).matrix() - identity(s)), 0.0 + 1e-15);
}

TEST(Kerr, BreaksCoherentStates) {
    SpaceSignature s = SpaceSignature::modes({30});
    StateVector c = make_coherent(s, 0, 1.0, true);
    StateVector k = apply(kerr(s, 0, 0.5), c);
    EXPECT_LT(overlap_modulus(c, k), 0.99);
}

TEST(Gates, AllUnitaryAtConstructionCutoff) {
    SpaceSignature s = SpaceSignature::modes({8, 6});
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<OperatorMatrix> gates{
            displace_x(s, 0, u(rng)),           displace_z(s, 1, u(rng)),
            displace_general(s, 0, {u(rng), u(rng)}), fourier(s, 1, u(rng)),
            squeeze_one(s, 0, {std::abs(u(rng)), u(rng)}), squeeze_two(s, 0, 1, {std::abs(u(rng)), u(rng)}),
            kerr(s, 1, u(rng)),                 phase_rotation(s, 0, u(rng))};
        for (const auto &g : gates) {
            EXPECT_TRUE(g.is_tagged_unitary());
            EXPECT_LT(unitarity_defect(g.matrix()), 1e-8);
        }
    }
}

TEST(BuildGate, DispatchAndValidation) {
    SpaceSignature s = SpaceSignature::modes({6, 5});
    EXPECT_LT(max_abs(build_gate({GateKind::DisplaceX, {0}, {0.0}}, s).matrix() - identity(s)), 1e-14);
    EXPECT_LT(max_abs(build_gate({GateKind::Squeeze1, {1}, {0.2, 0.4}}, s).matrix() -
                      squeeze_one(s, 1, {0.2, 0.4}).matrix()),
              0.0 + 1e-15);
    EXPECT_LT(max_abs(build_gate({GateKind::Fourier, {1}, {}}, s).matrix() - fourier(s, 1).matrix()), 1e-15);
    EXPECT_CVMASER_ERROR(build_gate({GateKind::Squeeze2, {0, 0}, {0.1}}, s), ErrorKind::InvalidArgument);
    EXPECT_CVMASER_ERROR(build_gate({GateKind::Kerr, {2}, {0.1}}, s), ErrorKind::InvalidArgument);
    EXPECT_CVMASER_ERROR(build_gate({GateKind::DisplaceGeneral, {0}, {0.1}}, s), ErrorKind::InvalidArgument);
    EXPECT_CVMASER_ERROR(build_gate({GateKind::DisplaceX, {0, 1}, {0.1}}, s), ErrorKind::InvalidArgument);
}

TEST(BuildGate, DisjointModesCommute) {
    SpaceSignature s = SpaceSignature::modes({6, 6});
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 6; ++trial) {
        Matrix a = build_gate({GateKind::DisplaceGeneral, {0}, {u(rng), u(rng)}}, s).matrix();
        Matrix b = build_gate({GateKind::Squeeze1, {1}, {std::abs(u(rng)), u(rng)}}, s).matrix();
        EXPECT_LT(max_abs(a * b - b * a), 1e-10);
    }
}

TEST(GateKind, NamesRoundTrip) {
    for (GateKind k : {GateKind::DisplaceX, GateKind::DisplaceZ, GateKind::DisplaceGeneral, GateKind::Fourier,
                       GateKind::Squeeze1, GateKind::Squeeze2, GateKind::Kerr, GateKind::PhaseRotation}) {
        EXPECT_EQ(parse_gate_kind(gate_kind_name(k)), k);
    }
    EXPECT_FALSE(parse_gate_kind("Displace").has_value());
}
