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


#include "cvmaser/micromaser.hpp"

#include <cmath>
#include <numbers>

#include "cvmaser/error.hpp"
#include "cvmaser/gates.hpp"
#include "cvmaser/rng.hpp"

namespace cvmaser {

namespace {

Matrix sigma_plus() {
    Matrix s = Matrix::Zero(2, 2);
    s(kExcited, kGround) = 1.0;
    return s;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void require_atom_field(const SpaceSignature &s, const char *what) {
    if (s.num_factors() != 2 || s.factor(0).is_mode() || s.factor(0).dim != 2 || !s.factor(1).is_mode()) {
        fail(ErrorKind::SpaceMismatch, std::string(what) + " needs Atom(2) ⊗ Mode, got " + s.describe());
    }
}

}  // namespace

SpaceSignature atom_field_space(int field_cutoff) {
    return SpaceSignature({Factor::atom(2), Factor::mode(field_cutoff)});
}

OperatorMatrix jc_hamiltonian(const JCParams &p, int field_cutoff) {
    if (p.g < 0) {
        fail(ErrorKind::InvalidArgument, "coupling g must be nonnegative");
    }
    SpaceSignature space = atom_field_space(field_cutoff);
    Matrix a = local_annihilation(field_cutoff);
    Matrix n = a.adjoint() * a;
    Matrix s3 = Matrix::Zero(2, 2);
    s3(kExcited, kExcited) = 1.0;
    s3(kGround, kGround) = -1.0;
    Matrix sp = sigma_plus();
    Matrix id_f = Matrix::Identity(field_cutoff, field_cutoff);
    Matrix h = 0.5 * p.omega_a * kron(s3, id_f) + p.omega * kron(Matrix::Identity(2, 2), n) +
               Complex(0, -p.g) * (kron(sp, a) - kron(sp.adjoint(), a.adjoint()));
    return OperatorMatrix::hermitian(space, std::move(h));
}

StateVector jc_evolve(const StateVector &state, const JCParams &p, double t) {
    require_atom_field(state.space(), "jc_evolve");
    return apply(exp_hermitian(jc_hamiltonian(p, state.space().cutoff(1)), t), state);
}

DensityOperator jc_evolve(const DensityOperator &state, const JCParams &p, double t) {
    require_atom_field(state.space(), "jc_evolve");
    return apply_to_density(exp_hermitian(jc_hamiltonian(p, state.space().cutoff(1)), t), state);
}

OperatorMatrix dispersive_phase(double delta, double g, double t, int field_cutoff, Warnings *warnings) {
    if (delta == 0.0) {
        fail(ErrorKind::InvalidArgument, "dispersive phase needs nonzero detuning");
    }
    if (warnings && std::abs(delta) < 10.0 * g * std::sqrt(static_cast<double>(field_cutoff))) {
        warnings->push_back("dispersive approximation questionable: |Delta| < 10 g sqrt(cutoff)");
    }
    SpaceSignature space = SpaceSignature::modes({field_cutoff});
    double rate = g * g * t / delta;
    std::vector<double> phases(static_cast<std::size_t>(field_cutoff));
    for (int n = 0; n < field_cutoff; ++n) {
        phases[static_cast<std::size_t>(n)] = -std::remainder(rate * (n + 1), 2 * std::numbers::pi);
    }
    return diagonal_phase_gate(space, 0, phases);
}

DispersiveFourier fourier_via_dispersive(double g, double delta, int field_cutoff) {
    if (!(g > 0) || !(delta > 0)) {
        fail(ErrorKind::InvalidArgument, "fourier_via_dispersive needs g > 0 and Delta > 0");
    }
    double t = 1.5 * std::numbers::pi * delta / (g * g);
    return DispersiveFourier{t, dispersive_phase(delta, g, t, field_cutoff)};
}

OperatorMatrix two_photon_unitary(double kappa, double t, int field_cutoff) {
    SpaceSignature space = SpaceSignature::modes({field_cutoff});
    Matrix a = local_annihilation(field_cutoff);
    Matrix a2 = a * a;
    Matrix ad2 = a2.adjoint();
    // Hermitian generator iκ(â†² − â²).
    Matrix h = Complex(0, kappa) * (ad2 - a2);
    return exp_hermitian(OperatorMatrix::hermitian(space, std::move(h)), t);
}

// ---- pump --------------------------------------------------------------------

PumpConfig PumpConfig::from_epsilon(double epsilon, double kappa, double t_int) {
    PumpConfig c;
    c.kappa = kappa;
    c.t_int = t_int;
    c.epsilon = epsilon;
    double ratio = 1.0 - epsilon;
    double cg = 1.0 / std::sqrt(1.0 + ratio * ratio);
    c.c_g = Complex(cg, 0);
    c.c_e = Complex(0, -ratio * cg);
    c.validate();
    return c;
}

void PumpConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        fail(ErrorKind::InvalidArgument, "pump epsilon must lie in [0, 1)");
    }
    if (std::abs(std::norm(c_e) + std::norm(c_g) - 1.0) > 1e-12) {
        fail(ErrorKind::InvalidArgument, "atom superposition is not normalized");
    }
    if (std::abs(c_g) == 0.0 || std::abs(std::abs(c_e / c_g) - (1.0 - epsilon)) > 1e-12) {
        fail(ErrorKind::InvalidArgument, "atom superposition ratio |c_e/c_g| must equal 1 - epsilon");
    }
    if (!std::isfinite(kappa) || !std::isfinite(t_int) || t_int < 0) {
        fail(ErrorKind::InvalidArgument, "pump kappa and t_int must be finite, t_int >= 0");
    }
}

namespace {

struct PumpKernel {
    int cutoff;
    Matrix transit;  // pulse · interaction

    PumpKernel(const PumpConfig &cfg, int d) : cutoff(d) {
        SpaceSignature space = atom_field_space(d);
        Matrix a = local_annihilation(d);
        Matrix sp = sigma_plus();
        Matrix h = Complex(0, -cfg.kappa) * (kron(sp, a) - kron(sp.adjoint(), a.adjoint()));
        Matrix u = exp_hermitian(OperatorMatrix::hermitian(space, std::move(h)), cfg.t_int).matrix();
        transit = kron(atom_rotation(std::numbers::pi / 2), Matrix::Identity(d, d)) * u;
    }

    Matrix step(const Matrix &rho, const PumpConfig &cfg, std::size_t atom_index) const {
        Complex ce = cfg.c_e;
        if (cfg.alternate_coherence && atom_index % 2 == 1) {
            ce = -ce;
        }
        Vector chi(2);
        chi(kExcited) = ce;
        chi(kGround) = cfg.c_g;
        Matrix joint = kron(chi * chi.adjoint(), rho);
        joint = transit * joint * transit.adjoint();
        Matrix out = joint.topLeftCorner(cutoff, cutoff) + joint.bottomRightCorner(cutoff, cutoff);
        return 0.5 * (out + out.adjoint());
    }
};

int field_cutoff_of(const DensityOperator &rho) {
    const SpaceSignature &s = rho.space();
    if (s.num_factors() != 1 || !s.factor(0).is_mode()) {
        fail(ErrorKind::SpaceMismatch, "pump acts on a single field mode, got " + s.describe());
    }
    return s.cutoff(0);
}

}  // namespace

DensityOperator pump_step(const DensityOperator &rho_field, const PumpConfig &cfg, std::size_t atom_index) {
    cfg.validate();
    int d = field_cutoff_of(rho_field);
    PumpKernel k(cfg, d);
    return DensityOperator(rho_field.space(), k.step(rho_field.matrix(), cfg, atom_index));
}

PumpResult pump_to_steady(const DensityOperator &rho0, const PumpConfig &cfg, std::size_t max_atoms,
                          double var_tol) {
    if (max_atoms < 1) {
        fail(ErrorKind::InvalidArgument, "pump_to_steady needs max_atoms >= 1");
    }
    cfg.validate();
    int d = field_cutoff_of(rho0);
    PumpKernel k(cfg, d);
    QuadraturePair q = quadrature_ops(rho0.space(), 0);
    Matrix rho = rho0.matrix();
    PumpResult res{rho0, {}, false};
    double prev_var = variance(q.p, rho0);
    for (std::size_t n = 0; n < max_atoms; ++n) {
        rho = k.step(rho, cfg, n);
        DensityOperator r(rho0.space(), rho);
        double vx = variance(q.x, r);
        double vp = variance(q.p, r);
        res.trace.push_back(PumpRecord{n + 1, vx, vp, r.purity()});
        bool settled = std::abs(vp - prev_var) < var_tol;
        prev_var = vp;
        if (settled) {
            res.converged = true;
            break;
        }
    }
    res.rho = DensityOperator(rho0.space(), rho);
    return res;
}

// ---- three-level effective interaction ------------------------------------

bool ThreeLevelConfig::dispersive_valid() const {
    double dmin = std::min({std::abs(delta1), std::abs(delta2), std::abs(delta3)});
    double cmax = std::max({std::abs(g1), std::abs(g2), std::abs(gamma)});
    return dmin >= 10.0 * cmax;
}

OperatorMatrix two_mode_effective_hamiltonian(const ThreeLevelConfig &cfg, int cutoff1, int cutoff2,
                                              Warnings *warnings) {
    if (warnings && !cfg.dispersive_valid()) {
        warnings->push_back("effective Hamiltonian outside its validity range: min|delta| < 10 max(g1, g2, Gamma)");
    }
    SpaceSignature space = SpaceSignature::modes({cutoff1, cutoff2});
    Index dim = space.dim();
    Matrix h = Matrix::Zero(dim, dim);
    double coupling = cfg.g1 * cfg.g2 * cfg.gamma;
    auto p_of = [&](int n1, int n2) {
        return n1 * (cfg.delta3 / 2 - cfg.delta1) + n2 * (cfg.delta3 / 2 - cfg.delta2);
    };
    for (int n1 = 0; n1 < cutoff1; ++n1) {
        for (int n2 = 0; n2 < cutoff2; ++n2) {
            Index j = n1 * space.stride(0) + n2 * space.stride(1);
            h(j, j) = cfg.theta1 * n1 + cfg.theta2 * n2;
            if (coupling == 0.0 || n1 + 1 >= cutoff1 || n2 + 1 >= cutoff2) {
                continue;
            }
            double p = p_of(n1 + 1, n2 + 1);
            double pq = p * (p + cfg.delta2);
            if (pq == 0.0 || !std::isfinite(1.0 / pq)) {
                fail(ErrorKind::Singular, "P*Q vanishes on Fock sector |" + std::to_string(n1 + 1) + "," +
                                              std::to_string(n2 + 1) + ">");
            }
            Index i = (n1 + 1) * space.stride(0) + (n2 + 1) * space.stride(1);
            double amp = std::sqrt(static_cast<double>((n1 + 1) * (n2 + 1))) / pq;
            // i·c·(A − A†) with A|n1,n2⟩ = amp|n1+1,n2+1⟩
            h(i, j) += Complex(0, coupling * amp);
            h(j, i) += Complex(0, -coupling * amp);
        }
    }
    return OperatorMatrix::hermitian(space, std::move(h));
}

OperatorMatrix frame_rotation(const ThreeLevelConfig &cfg, double t, int cutoff1, int cutoff2) {
    SpaceSignature space = SpaceSignature::modes({cutoff1, cutoff2});
    Matrix u = Matrix::Zero(space.dim(), space.dim());
    double w1 = cfg.omega1 + cfg.delta1 - cfg.delta3 / 2;
    double w2 = cfg.omega2 + cfg.delta2 - cfg.delta3 / 2;
    for (int n1 = 0; n1 < cutoff1; ++n1) {
        for (int n2 = 0; n2 < cutoff2; ++n2) {
            Index j = n1 * space.stride(0) + n2 * space.stride(1);
            u(j, j) = std::polar(1.0, (n1 * w1 + n2 * w2) * t);
        }
    }
    return OperatorMatrix::unitary(space, std::move(u));
}

// ---- measurement -------------------------------------------------------------

Matrix atom_rotation(double angle) {
    Matrix r(2, 2);
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    r << c, -s, s, c;
    return r;
}

namespace {

struct Branches {
    SpaceSignature field_space;
    Vector branch[2];
};

Branches split_atom(const StateVector &joint, double basis_angle) {
    const SpaceSignature &s = joint.space();
    if (s.num_factors() < 2 || s.factor(0).is_mode() || s.factor(0).dim != 2) {
        fail(ErrorKind::SpaceMismatch, "atom measurement needs Atom(2) as factor 0, got " + s.describe());
    }
    if (!joint.is_normalized()) {
        fail(ErrorKind::Contract, "atom measurement needs a normalized joint state");
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < s.num_factors(); ++k) {
        rest.push_back(k);
    }
    Index df = s.dim() / 2;
    Matrix r = atom_rotation(basis_angle);
    const Vector &v = joint.amplitudes();
    Vector e = r(kExcited, kExcited) * v.head(df) + r(kExcited, kGround) * v.tail(df);
    Vector g = r(kGround, kExcited) * v.head(df) + r(kGround, kGround) * v.tail(df);
    return Branches{s.subspace(rest), {std::move(e), std::move(g)}};
}

struct MixedBranches {
    SpaceSignature field_space;
    Matrix block[2];
};

MixedBranches split_atom(const DensityOperator &joint, double basis_angle) {
    const SpaceSignature &s = joint.space();
    if (s.num_factors() < 2 || s.factor(0).is_mode() || s.factor(0).dim != 2) {
        fail(ErrorKind::SpaceMismatch, "atom measurement needs Atom(2) as factor 0, got " + s.describe());
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < s.num_factors(); ++k) {
        rest.push_back(k);
    }
    Index df = s.dim() / 2;
    Matrix r = atom_rotation(basis_angle);
    const Matrix &m = joint.matrix();
    MixedBranches out{s.subspace(rest), {}};
    for (int b : {kExcited, kGround}) {
        // Row b of (R ⊗ I) applied on both sides.
        Matrix left = r(b, kExcited) * m.topRows(df) + r(b, kGround) * m.bottomRows(df);
        out.block[b] = left.leftCols(df) * std::conj(r(b, kExcited)) + left.rightCols(df) * std::conj(r(b, kGround));
    }
    return out;
}

}  // namespace

std::pair<double, double> atom_outcome_probabilities(const DensityOperator &joint, double basis_angle) {
    MixedBranches b = split_atom(joint, basis_angle);
    return {b.block[kExcited].trace().real(), b.block[kGround].trace().real()};
}

MixedAtomMeasurement measure_atom_branch(const DensityOperator &joint, double basis_angle, int outcome) {
    if (outcome != kExcited && outcome != kGround) {
        fail(ErrorKind::InvalidArgument, "atom outcome must be e (0) or g (1)");
    }
    MixedBranches b = split_atom(joint, basis_angle);
    double prob = b.block[outcome].trace().real();
    if (prob < 1e-14) {
        fail(ErrorKind::InvalidArgument, "requested atom outcome has zero probability");
    }
    Matrix f = b.block[outcome] / prob;
    f = (f + f.adjoint()).eval() * 0.5;
    return MixedAtomMeasurement{outcome, DensityOperator(b.field_space, std::move(f)), prob};
}

MixedAtomMeasurement measure_atom(const DensityOperator &joint, double basis_angle, std::uint64_t seed) {
    auto [pe, pg] = atom_outcome_probabilities(joint, basis_angle);
    Rng rng(seed);
    double u = rng.uniform() * (pe + pg);
    return measure_atom_branch(joint, basis_angle, u < pe ? kExcited : kGround);
}

std::pair<double, double> atom_outcome_probabilities(const StateVector &joint, double basis_angle) {
    Branches b = split_atom(joint, basis_angle);
    return {b.branch[kExcited].squaredNorm(), b.branch[kGround].squaredNorm()};
}

AtomMeasurement measure_atom_branch(const StateVector &joint, double basis_angle, int outcome) {
    if (outcome != kExcited && outcome != kGround) {
        fail(ErrorKind::InvalidArgument, "atom outcome must be e (0) or g (1)");
    }
    Branches b = split_atom(joint, basis_angle);
    const Vector &v = b.branch[outcome];
    double prob = v.squaredNorm();
    if (prob < 1e-14) {
        fail(ErrorKind::InvalidArgument, "requested atom outcome has zero probability");
    }
    return AtomMeasurement{outcome, StateVector(b.field_space, v / std::sqrt(prob)), prob};
}

AtomMeasurement measure_atom(const StateVector &joint, double basis_angle, std::uint64_t seed) {
    auto [pe, pg] = atom_outcome_probabilities(joint, basis_angle);
    Rng rng(seed);
    double u = rng.uniform() * (pe + pg);
    int outcome = (u < pe) ? kExcited : kGround;
    return measure_atom_branch(joint, basis_angle, outcome);
}

// ---- beam --------------------------------------------------------------------

void BeamConfig::validate() const {
    if (!(rate > 0) || !(cavity_length > 0) || !(velocity > 0) || !std::isfinite(rate) ||
        !std::isfinite(cavity_length) || !std::isfinite(velocity)) {
        fail(ErrorKind::InvalidArgument, "beam rate, cavity length and velocity must be positive and finite");
    }
}

double one_atom_probability(const BeamConfig &b) {
    b.validate();
    return std::exp(-2.0 * b.rate * b.transit_time());
}

std::vector<double> sample_arrivals(const BeamConfig &b, double duration, std::uint64_t seed) {
    b.validate();
    if (!(duration > 0) || !std::isfinite(duration)) {
        fail(ErrorKind::InvalidArgument, "arrival sampling duration must be positive");
    }
    Rng rng(seed);
    std::vector<double> times;
    double t = rng.exponential(b.rate);
    while (t < duration) {
        times.push_back(t);
        t += rng.exponential(b.rate);
    }
    return times;
}

BeamStatistics beam_statistics(const BeamConfig &b, std::size_t n_atoms, std::uint64_t seed) {
    b.validate();
    if (n_atoms < 3) {
        fail(ErrorKind::InvalidArgument, "beam statistics need at least 3 atoms");
    }
    double duration = static_cast<double>(n_atoms) / b.rate;
    std::vector<double> t = sample_arrivals(b, duration, seed);
    BeamStatistics s{};
    s.p1 = one_atom_probability(b);
    s.arrivals = t.size();
    s.expected_arrivals = b.rate * duration;
    double tau = b.transit_time();
    double q = std::exp(-b.rate * tau);

    std::size_t gaps = t.size() > 1 ? t.size() - 1 : 0;
    std::size_t short_gaps = 0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        short_gaps += (t[k + 1] - t[k]) < tau;
    }
    s.short_gap_expected = 1.0 - q;
    s.short_gap_fraction = gaps ? static_cast<double>(short_gaps) / static_cast<double>(gaps) : 0.0;
    s.short_gap_sigma = gaps ? std::sqrt(q * (1 - q) / static_cast<double>(gaps)) : 0.0;

    // Interior atoms only, so both neighbors are observed.
    std::size_t interior = t.size() > 2 ? t.size() - 2 : 0;
    std::size_t isolated = 0;
    for (std::size_t k = 1; k + 1 < t.size(); ++k) {
        isolated += (t[k] - t[k - 1] >= tau) && (t[k + 1] - t[k] >= tau);
    }
    double p = q * q;
    double n = static_cast<double>(interior);
    s.isolated_fraction = interior ? static_cast<double>(isolated) / n : 0.0;
    double var = n * p * (1 - p) + 2 * (n - 1) * (q * q * q - q * q * q * q);
    s.isolated_sigma = interior ? std::sqrt(std::max(var, 0.0)) / n : 0.0;
    return s;
}

}  // namespace cvmaser
