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

#ifndef CVMASER_GATES_HPP
#define CVMASER_GATES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvmaser/fock.hpp"

namespace cvmaser {

inline constexpr double kDefaultSqueezeLimit = 3.0;

/// Squeezing magnitude r and orientation θ. A one-mode squeezer with these
/// parameters reduces the variance of p̂^(θ) by e^{-2r}.
struct SqueezeParam {
    double r = 0.0;
    double theta = 0.0;

    /// r = |ζ|, θ = arg ζ.
    static SqueezeParam from_zeta(Complex zeta);
    Complex zeta() const {
        return std::polar(r, theta);
    }
};

/// e^{-2ix p̂}: shifts ⟨x̂⟩ by +x.
OperatorMatrix displace_x(const SpaceSignature &space, std::size_t mode, double x);

/// e^{2ip x̂}: shifts ⟨p̂⟩ by +p.
OperatorMatrix displace_z(const SpaceSignature &space, std::size_t mode, double p);

/// exp(2ip x̂ − 2ix p̂) with α = x + ip; equals e^{αâ† − α*â}.
OperatorMatrix displace_general(const SpaceSignature &space, std::size_t mode, Complex alpha);

/// Hermitian G with displace_general = e^{-iG}.
OperatorMatrix displacement_generator(const SpaceSignature &space, std::size_t mode, Complex alpha);

inline constexpr double kQuarterTurn = 1.5707963267948966;

/// e^{it(N̂+1)}. At the default quarter turn the phases are exactly i^{n+1}.
OperatorMatrix fourier(const SpaceSignature &space, std::size_t mode, double t = kQuarterTurn);

/// e^{iφN̂}.
OperatorMatrix phase_rotation(const SpaceSignature &space, std::size_t mode, double phi);

/// exp((ξ*/2)â² − (ξ/2)â†²) with ξ = −r e^{2iθ}, so that
/// Ŝ†â^(θ)Ŝ = e^{r} x̂^(θ) + i e^{-r} p̂^(θ) where â^(θ) = e^{-iθ}â.
OperatorMatrix squeeze_one(const SpaceSignature &space, std::size_t mode, SqueezeParam s,
                           double r_max = kDefaultSqueezeLimit);

/// exp(ζ* â_i â_j − ζ â_i† â_j†) with ζ = r e^{iθ}. For real ζ > 0 the
/// squeezed combinations are x̂_i + x̂_j and p̂_i − p̂_j.
OperatorMatrix squeeze_two(const SpaceSignature &space, std::size_t mode_i, std::size_t mode_j, SqueezeParam s,
                           double r_max = kDefaultSqueezeLimit);

/// e^{-it(x̂²+p̂²)²}, diagonal with phases e^{-it(n+½)²}.
OperatorMatrix kerr(const SpaceSignature &space, std::size_t mode, double t);

/// Diagonal unitary on one mode with the given per-level phases (radians).
OperatorMatrix diagonal_phase_gate(const SpaceSignature &space, std::size_t mode,
                                   const std::vector<double> &phases);

enum class GateKind { DisplaceX, DisplaceZ, DisplaceGeneral, Fourier, Squeeze1, Squeeze2, Kerr, PhaseRotation };

std::string_view gate_kind_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

/// Parameter layout per kind:
///   DisplaceX [x], DisplaceZ [p], DisplaceGeneral [re α, im α],
///   Fourier [] or [t], Squeeze1 / Squeeze2 [r] or [r, θ], Kerr [t],
///   PhaseRotation [φ].
struct GateDescriptor {
    GateKind kind;
    std::vector<std::size_t> targets;
    std::vector<double> params;

    bool operator==(const GateDescriptor &) const = default;
};

/// Throws InvalidArgument with a message naming the offending field.
void validate_gate(const GateDescriptor &g, const SpaceSignature &space);

OperatorMatrix build_gate(const GateDescriptor &g, const SpaceSignature &space,
                          double r_max = kDefaultSqueezeLimit);

}  // namespace cvmaser

#endif
