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


#include "cvmaser/gates.hpp"

#include <array>
#include <cmath>

#include "cvmaser/error.hpp"

namespace cvmaser {

namespace {

void check_squeeze(const SqueezeParam &s, double r_max) {
    if (!(s.r >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "squeezing magnitude must be nonnegative");
    }
    if (s.r > r_max) {
        fail(ErrorKind::InvalidArgument,
             "squeezing magnitude " + std::to_string(s.r) + " exceeds limit " + std::to_string(r_max));
    }
}

}  // namespace

SqueezeParam SqueezeParam::from_zeta(Complex zeta) {
    return SqueezeParam{std::abs(zeta), std::arg(zeta)};
}

OperatorMatrix displacement_generator(const SpaceSignature &space, std::size_t mode, Complex alpha) {
    QuadraturePair q = quadrature_ops(space, mode);
    Matrix g = 2.0 * alpha.real() * q.p.matrix() - 2.0 * alpha.imag() * q.x.matrix();
    return OperatorMatrix::hermitian(space, std::move(g));
}

OperatorMatrix displace_general(const SpaceSignature &space, std::size_t mode, Complex alpha) {
    if (alpha == Complex(0)) {
        space.require_mode(mode);
        return identity_op(space);
    }
    return exp_hermitian(displacement_generator(space, mode, alpha), 1.0);
}

OperatorMatrix displace_x(const SpaceSignature &space, std::size_t mode, double x) {
    return displace_general(space, mode, Complex(x, 0));
}

OperatorMatrix displace_z(const SpaceSignature &space, std::size_t mode, double p) {
    return displace_general(space, mode, Complex(0, p));
}

OperatorMatrix diagonal_phase_gate(const SpaceSignature &space, std::size_t mode,
                                   const std::vector<double> &phases) {
    int d = space.cutoff(mode);
    if (static_cast<int>(phases.size()) != d) {
        fail(ErrorKind::Dimension, "phase list length does not match cutoff");
    }
    Matrix local = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        local(n, n) = std::polar(1.0, phases[static_cast<std::size_t>(n)]);
    }
    return OperatorMatrix::unitary(space, embed(local, space, mode));
}

OperatorMatrix fourier(const SpaceSignature &space, std::size_t mode, double t) {
    int d = space.cutoff(mode);
    Matrix local = Matrix::Zero(d, d);
    if (t == kQuarterTurn) {
        static const std::array<Complex, 4> powers{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
        for (int n = 0; n < d; ++n) {
            local(n, n) = powers[static_cast<std::size_t>((n + 1) % 4)];
        }
    } else {
        for (int n = 0; n < d; ++n) {
            local(n, n) = std::polar(1.0, t * (n + 1));
        }
    }
    return OperatorMatrix::unitary(space, embed(local, space, mode));
}

OperatorMatrix phase_rotation(const SpaceSignature &space, std::size_t mode, double phi) {
    int d = space.cutoff(mode);
    std::vector<double> phases(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) {
        phases[static_cast<std::size_t>(n)] = phi * n;
    }
    return diagonal_phase_gate(space, mode, phases);
}

OperatorMatrix kerr(const SpaceSignature &space, std::size_t mode, double t) {
    int d = space.cutoff(mode);
    std::vector<double> phases(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) {
        double h = n + 0.5;
        phases[static_cast<std::size_t>(n)] = -t * h * h;
    }
    return diagonal_phase_gate(space, mode, phases);
}

OperatorMatrix squeeze_one(const SpaceSignature &space, std::size_t mode, SqueezeParam s, double r_max) {
    check_squeeze(s, r_max);
    space.require_mode(mode);
    if (s.r == 0.0) {
        return identity_op(space);
    }
    Complex xi = -std::polar(s.r, 2.0 * s.theta);
    LadderPair l = ladder_ops(space, mode);
    Matrix a2 = l.a.matrix() * l.a.matrix();
    Matrix ad2 = l.a_dagger.matrix() * l.a_dagger.matrix();
    // e^{-iG} with -iG = (ξ*/2)â² − (ξ/2)â†².
    Matrix g = Complex(0, 1) * (0.5 * std::conj(xi) * a2 - 0.5 * xi * ad2);
    return exp_hermitian(OperatorMatrix::hermitian(space, std::move(g)), 1.0);
}

OperatorMatrix squeeze_two(const SpaceSignature &space, std::size_t mode_i, std::size_t mode_j, SqueezeParam s,
                           double r_max) {
    if (mode_i == mode_j) {
        fail(ErrorKind::InvalidArgument, "two-mode squeezing needs two distinct modes");
    }
    check_squeeze(s, r_max);
    space.require_mode(mode_i);
    space.require_mode(mode_j);
    if (s.r == 0.0) {
        return identity_op(space);
    }
    Complex zeta = s.zeta();
    LadderPair li = ladder_ops(space, mode_i);
    LadderPair lj = ladder_ops(space, mode_j);
    Matrix ab = li.a.matrix() * lj.a.matrix();
    Matrix abd = li.a_dagger.matrix() * lj.a_dagger.matrix();
    Matrix g = Complex(0, 1) * (std::conj(zeta) * ab - zeta * abd);
    return exp_hermitian(OperatorMatrix::hermitian(space, std::move(g)), 1.0);
}

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    std::size_t arity;
    std::size_t min_params;
    std::size_t max_params;
};

constexpr std::array<KindInfo, 8> kKinds{{
    {GateKind::DisplaceX, "DisplaceX", 1, 1, 1},
    {GateKind::DisplaceZ, "DisplaceZ", 1, 1, 1},
    {GateKind::DisplaceGeneral, "DisplaceGeneral", 1, 2, 2},
    {GateKind::Fourier, "Fourier", 1, 0, 1},
    {GateKind::Squeeze1, "Squeeze1", 1, 1, 2},
    {GateKind::Squeeze2, "Squeeze2", 2, 1, 2},
    {GateKind::Kerr, "Kerr", 1, 1, 1},
    {GateKind::PhaseRotation, "PhaseRotation", 1, 1, 1},
}};

const KindInfo &info(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown gate kind");
}

double param_or(const GateDescriptor &g, std::size_t k, double fallback) {
    return k < g.params.size() ? g.params[k] : fallback;
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    return info(kind).name;
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

void validate_gate(const GateDescriptor &g, const SpaceSignature &space) {
    const KindInfo &k = info(g.kind);
    std::string name(k.name);
    if (g.targets.size() != k.arity) {
        fail(ErrorKind::InvalidArgument, name + ".targets: expected " + std::to_string(k.arity) + " mode(s), got " +
                                             std::to_string(g.targets.size()));
    }
    for (std::size_t t : g.targets) {
        if (t >= space.num_factors() || !space.factor(t).is_mode()) {
            fail(ErrorKind::InvalidArgument, name + ".targets: " + std::to_string(t) + " is not a mode");
        }
    }
    if (k.arity == 2 && g.targets[0] == g.targets[1]) {
        fail(ErrorKind::InvalidArgument, name + ".targets: modes must be distinct");
    }
    if (g.params.size() < k.min_params || g.params.size() > k.max_params) {
        fail(ErrorKind::InvalidArgument, name + ".params: expected " + std::to_string(k.min_params) + ".." +
                                             std::to_string(k.max_params) + " values, got " +
                                             std::to_string(g.params.size()));
    }
    for (double v : g.params) {
        if (!std::isfinite(v)) {
            fail(ErrorKind::InvalidArgument, name + ".params: non-finite value");
        }
    }
}

OperatorMatrix build_gate(const GateDescriptor &g, const SpaceSignature &space, double r_max) {
    validate_gate(g, space);
    std::size_t m = g.targets[0];
    switch (g.kind) {
        case GateKind::DisplaceX:
            return displace_x(space, m, g.params[0]);
        case GateKind::DisplaceZ:
            return displace_z(space, m, g.params[0]);
        case GateKind::DisplaceGeneral:
            return displace_general(space, m, Complex(g.params[0], g.params[1]));
        case GateKind::Fourier:
            return fourier(space, m, param_or(g, 0, kQuarterTurn));
        case GateKind::Squeeze1:
            return squeeze_one(space, m, SqueezeParam{g.params[0], param_or(g, 1, 0.0)}, r_max);
        case GateKind::Squeeze2:
            return squeeze_two(space, m, g.targets[1], SqueezeParam{g.params[0], param_or(g, 1, 0.0)}, r_max);
        case GateKind::Kerr:
            return kerr(space, m, g.params[0]);
        case GateKind::PhaseRotation:
            return phase_rotation(space, m, g.params[0]);
    }
    fail(ErrorKind::InvalidArgument, "unknown gate kind");
}

}  // namespace cvmaser
