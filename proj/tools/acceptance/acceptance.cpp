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

#include "acceptance/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "cli/runner.hpp"
#include "cvmaser/circuit.hpp"
#include "cvmaser/error.hpp"
#include "cvmaser/fock.hpp"
#include "cvmaser/gates.hpp"
#include "cvmaser/micromaser.hpp"
#include "cvmaser/phase_space.hpp"
#include "cvmaser/polynomial.hpp"
#include "cvmaser/synthesis.hpp"

namespace cvmaser::acceptance {

namespace {

namespace fs = std::filesystem;
using std::numbers::pi;

struct Check {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double phase_of(Complex z) {
    return std::arg(z);
}

// ---- 1 ----------------------------------------------------------------------

Check fourier_eigenphases(const Options &opt) {
    const int cutoff = 32;
    SpaceSignature s = SpaceSignature::modes({cutoff});
    Matrix f = fourier(s, 0, opt.flip_fourier_convention ? -kQuarterTurn : kQuarterTurn).matrix();
    double worst_phase = 0.0;
    double worst_modulus = 0.0;
    Complex expected{1.0, 0.0};
    for (int n = 0; n < cutoff; ++n) {
        expected *= Complex(0.0, 1.0);
        worst_phase = std::max(worst_phase, std::abs(phase_of(f(n, n) * std::conj(expected))));
        worst_modulus = std::max(worst_modulus, std::abs(std::abs(f(n, n)) - 1.0));
    }
    Matrix off = f;
    off.diagonal().setZero();
    double off_max = max_abs(off);
    bool pass = worst_phase <= 1e-12 && worst_modulus <= 1e-12 && off_max <= 1e-12;
    return {pass, fmt("max phase error %.3g, modulus error %.3g, off-diagonal %.3g", worst_phase, worst_modulus,
                      off_max)};
}

// ---- 2 ----------------------------------------------------------------------

Check beam() {
    BeamConfig b{10.0, 0.03, 300.0};
    double p1 = one_atom_probability(b);
    BeamStatistics st = beam_statistics(b, 100000, 20261018);
    double gap_dev = std::abs(st.short_gap_fraction - st.short_gap_expected) / st.short_gap_sigma;
    double iso_dev = std::abs(st.isolated_fraction - st.p1) / st.isolated_sigma;
    bool pass = std::abs(p1 - 0.998) <= 5e-4 && gap_dev <= 3.0 && iso_dev <= 3.0;
    return {pass, fmt("P1 %.6f; short gaps %.5f vs %.5f (%.2f sigma); isolated %.5f (%.2f sigma); %zu arrivals", p1,
                      st.short_gap_fraction, st.short_gap_expected, gap_dev, st.isolated_fraction, iso_dev,
                      st.arrivals)};
}

// ---- 3 ----------------------------------------------------------------------

double fit_slope(const std::vector<double> &xs, const std::vector<double> &ys) {
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double lx = std::log(xs[k]);
        double ly = std::log(ys[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Check product_formula_orders() {
    const int cutoff = 20;
    SpaceSignature s = SpaceSignature::modes({cutoff});
    PrimitiveSet prims;
    prims.add("A", parse_polynomial("x_0^2"));
    prims.add("B", parse_polynomial("p_0^2"));
    std::vector<Index> block = low_fock_indices(s, 4);
    const std::vector<double> dts{0.2, 0.1, 0.05, 0.025};
    auto error = [&](const GatePlan &plan) {
        Matrix u = plan_unitary(plan, prims, s);
        Matrix ref = exp_hermitian(realize(plan.target, s), plan.total_time).matrix();
        return restricted_max_abs(u - ref, block);
    };
    std::vector<double> e1, e2;
    for (double dt : dts) {
        e1.push_back(error(commutator_compose(prims, "A", "B", dt)));
        e2.push_back(error(sum_compose(prims, "A", "B", dt)));
    }
    double s1 = fit_slope(dts, e1);
    double s2 = fit_slope(dts, e2);
    bool pass = std::abs(s1 - 3.0) <= 0.3 && std::abs(s2 - 3.0) <= 0.3;
    return {pass, fmt("commutator slope %.3f (err %.2e..%.2e), sum slope %.3f (err %.2e..%.2e)", s1, e1.front(),
                      e1.back(), s2, e2.front(), e2.back())};
}

// ---- 4 ----------------------------------------------------------------------

Check squeezing_law() {
    SpaceSignature s40 = SpaceSignature::modes({40});
    StateVector sq = apply(squeeze_one(s40, 0, SqueezeParam{0.5, 0.0}), make_vacuum(s40));
    QuadraturePair q = quadrature_ops(s40, 0);
    double vx = variance(q.x, sq);
    double vp = variance(q.p, sq);
    double vp_err = std::abs(vp - std::exp(-1.0) / 4.0);
    double prod_err = std::abs(vx * vp - 1.0 / 16.0);

    // Operator relation on the leakage-free block of the cutoff-40 space,
    // with the squeezer built in a padded space so the block is free of
    // truncation artifacts.
    std::vector<Index> block = low_fock_indices(s40, 1);
    SpaceSignature padded = SpaceSignature::modes({120});
    Matrix a = ladder_ops(padded, 0).a.matrix();
    double action_err = 0.0;
    for (double theta : {0.0, pi / 4}) {
        const double r = 0.3;
        Matrix u = squeeze_one(padded, 0, SqueezeParam{r, theta}).matrix();
        QuadraturePair qt = quadrature_ops(padded, 0, theta);
        Matrix lhs = u.adjoint() * (std::polar(1.0, -theta) * a) * u;
        Matrix rhs = std::exp(r) * qt.x.matrix() + Complex(0.0, std::exp(-r)) * qt.p.matrix();
        action_err = std::max(action_err, restricted_max_abs(lhs - rhs, block));
    }
    bool pass = vp_err <= 1e-6 && prod_err <= 1e-7 && action_err <= 1e-6;
    return {pass, fmt("var p %.9f (err %.2e), product err %.2e, action err %.2e", vp, vp_err, prod_err, action_err)};
}

// ---- 5 ----------------------------------------------------------------------

Check two_mode_correlations() {
    SpaceSignature s = SpaceSignature::modes({12, 12});
    StateVector psi = apply(squeeze_two(s, 0, 1, SqueezeParam{0.3, 0.0}), make_vacuum(s));
    auto var = [&](const char *op) { return variance(realize(parse_polynomial(op), s), psi); };
    double x_plus = var("x_0 + x_1");
    double x_minus = var("x_0 - x_1");
    double p_plus = var("p_0 + p_1");
    double p_minus = var("p_0 - p_1");
    double target = 0.5 * std::exp(-0.6);
    // The squeezed position combination pairs with the opposite momentum one.
    bool total_x = x_plus < x_minus;
    double sx = total_x ? x_plus : x_minus;
    double sp = total_x ? p_minus : p_plus;
    double n1 = expectation(number_op(s, 0), psi).real();
    double n2 = expectation(number_op(s, 1), psi).real();
    double sh2 = std::sinh(0.3) * std::sinh(0.3);
    double n_err = std::max(std::abs(n1 - sh2), std::abs(n2 - sh2));
    double v_err = std::max(std::abs(sx - target), std::abs(sp - target));
    bool pass = v_err <= 1e-5 && n_err <= 1e-6;
    return {pass, fmt("squeezed var(x0%cx1) %.8f, var(p0%cp1) %.8f, target %.8f; <N> err %.2e", total_x ? '+' : '-', sx,
                      total_x ? '-' : '+', sp, target, n_err)};
}

// ---- 6 ----------------------------------------------------------------------

Check jaynes_cummings() {
    const int cutoff = 8;
    const JCParams p{1.0, 1.0, 1.0};
    SpaceSignature s = atom_field_space(cutoff);
    double worst = 0.0;
    for (int n = 0; n <= 2; ++n) {
        Eigen::Matrix2cd h;
        double c = p.g * std::sqrt(n + 1.0);
        h << p.omega_a / 2 + p.omega * n, Complex(0, -c), Complex(0, c), -p.omega_a / 2 + p.omega * (n + 1);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
        Vector init = Vector::Zero(s.dim());
        init(kExcited * cutoff + n) = 1.0;
        StateVector psi(s, init);
        for (int k = 0; k <= 64; ++k) {
            double t = 2 * pi * k / 64.0 / p.g;
            Eigen::Vector2cd phases = (es.eigenvalues().cast<Complex>() * Complex(0, -t)).array().exp();
            Eigen::Matrix2cd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
            double p_block = std::norm(u(1, 0));
            double p_closed = std::pow(std::sin(c * t), 2);
            double p_lib = std::norm(jc_evolve(psi, p, t).amplitudes()(kGround * cutoff + n + 1));
            worst = std::max({worst, std::abs(p_lib - p_block), std::abs(p_block - p_closed),
                              std::abs(p_lib - p_closed)});
        }
    }
    return {worst <= 1e-8, fmt("max Rabi probability error %.2e over n<=2, gt in [0, 2pi]", worst)};
}

// ---- 7 ----------------------------------------------------------------------

Check dispersive_fourier() {
    const double g = 1.0;
    const double delta = 10.0;
    const int cutoff = 32;
    DispersiveFourier df = fourier_via_dispersive(g, delta, cutoff);
    Matrix f = fourier(SpaceSignature::modes({cutoff}), 0).matrix();
    double u_err = max_abs(df.unitary.matrix() - f);
    double t_err = std::abs(df.t - 1.5 * pi * delta / (g * g));

    const double big = 50.0 * g;
    const int jc_cutoff = 10;
    SpaceSignature s = atom_field_space(jc_cutoff);
    double phase_err = 0.0;
    for (int n = 0; n <= 3; ++n) {
        Vector init = Vector::Zero(s.dim());
        init(kExcited * jc_cutoff + n) = 1.0;
        StateVector psi(s, init);
        for (int k = 1; k <= 20; ++k) {
            double t = 0.05 * k / g;
            Complex amp = jc_evolve(psi, JCParams{big, 0.0, g}, t).amplitudes()(kExcited * jc_cutoff + n);
            // Remove the free atomic phase e^{-iΔt/2}.
            Complex rel = amp * std::polar(1.0, big * t / 2);
            Complex predicted = dispersive_phase(big, g, t, jc_cutoff).matrix()(n, n);
            phase_err = std::max(phase_err, std::abs(phase_of(rel * std::conj(predicted))));
        }
    }
    bool pass = u_err <= 1e-10 && t_err <= 1e-12 && phase_err <= 2e-3;
    return {pass, fmt("|U-F| %.2e at t=%.6f; JC vs dispersive phase err %.2e (Delta=50g, n<=3)", u_err, df.t,
                      phase_err)};
}

// ---- 8 ----------------------------------------------------------------------

Check pump_steady_state() {
    SpaceSignature s = SpaceSignature::modes({30});
    DensityOperator vac = DensityOperator::from_pure(make_vacuum(s));
    PumpResult on = pump_to_steady(vac, PumpConfig::from_epsilon(0.05), 500, 0.0);
    PumpResult off = pump_to_steady(vac, PumpConfig::from_epsilon(0.0), 500, 0.0);
    std::size_t first_below = 0;
    double on_min = 1e9;
    for (const auto &r : on.trace) {
        if (r.var_p < 0.25 && first_below == 0) {
            first_below = r.step;
        }
        on_min = std::min(on_min, r.var_p);
    }
    double off_min = 1e9;
    for (const auto &r : off.trace) {
        off_min = std::min(off_min, r.var_p);
    }
    bool pass = on_min < 0.25 && off_min >= 0.25 - 1e-6;
    return {pass, fmt("eps=0.05: var p %.6f after %zu atoms (below vacuum from atom %zu); eps=0: min var p %.7f",
                      on.trace.back().var_p, on.trace.size(), first_below, off_min)};
}

// ---- 9 ----------------------------------------------------------------------

Check effective_two_mode() {
    ThreeLevelConfig cfg;
    cfg.g1 = cfg.g2 = cfg.gamma = 1.0;
    cfg.delta1 = 10.0;
    cfg.delta2 = 12.0;
    cfg.delta3 = 50.0;
    const int cutoff = 10;
    SpaceSignature s = SpaceSignature::modes({cutoff, cutoff});
    OperatorMatrix h = two_mode_effective_hamiltonian(cfg, cutoff, cutoff);
    double herm = max_abs(h.matrix() - h.matrix().adjoint());
    Matrix diff = number_op(s, 0).matrix() - number_op(s, 1).matrix();
    double comm = max_abs(h.matrix() * diff - diff * h.matrix());

    // Pair-creation rate out of the vacuum sets the time scale.
    double p11 = (cfg.delta3 / 2 - cfg.delta1) + (cfg.delta3 / 2 - cfg.delta2);
    double rate = cfg.g1 * cfg.g2 * cfg.gamma / (p11 * (p11 + cfg.delta2));
    StateVector vac = make_vacuum(s);
    double best = 0.5;
    std::string which;
    bool monotone = true;
    double previous = 0.5;
    for (double rt : {0.025, 0.05, 0.1}) {
        StateVector psi = apply(exp_hermitian(h, rt / rate), vac);
        double step_min = 1e9;
        for (const char *op : {"x_0 + x_1", "x_0 - x_1", "p_0 + p_1", "p_0 - p_1"}) {
            double v = variance(realize(parse_polynomial(op), s), psi);
            if (v < step_min) {
                step_min = v;
                if (v < best) {
                    which = op;
                }
            }
        }
        monotone = monotone && step_min < previous;
        previous = step_min;
        best = std::min(best, step_min);
    }
    bool pass = herm <= 1e-12 && comm <= 1e-10 && best < 0.5 - 1e-6 && monotone;
    return {pass, fmt("hermiticity %.2e, [H, N1-N2] %.2e, min var(%s) %.6f < 0.5", herm, comm, which.c_str(), best)};
}

// ---- 10 ---------------------------------------------------------------------

Check flagship() {
    SpaceSignature s = SpaceSignature::modes({20});
    HermitianPolynomial target = parse_polynomial("x_0^3");
    SynthesisResult r = synthesize(target, PrimitiveSet::standard(), 0.05, 0.01, s);
    OperatorMatrix reference = exp_hermitian(realize(target, s), 0.05);
    FidelityReport baseline = evaluate_unitary(Matrix::Identity(s.dim(), s.dim()), reference, 0);
    bool pass = r.report.min_fidelity >= 0.99 && r.report.step_count <= 100000;
    return {pass, fmt("min probe fidelity %.6f (mean %.6f, identity %.6f), %zu steps, block op error %.3g",
                      r.report.min_fidelity, r.report.mean_fidelity, baseline.min_fidelity, r.report.step_count,
                      r.report.operator_error_block)};
}

// ---- 11 ---------------------------------------------------------------------

struct CsvGrid {
    std::vector<double> x, p, q;
    double dx = 0.0, dp = 0.0;
};

CsvGrid parse_qgrid_csv(const std::string &text) {
    CsvGrid g;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line != "x,p,q") {
                throw std::runtime_error("unexpected Q-grid header '" + line + "'");
            }
            header = true;
            continue;
        }
        double x, p, q;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &p, &q) != 3) {
            throw std::runtime_error("bad Q-grid row '" + line + "'");
        }
        g.x.push_back(x);
        g.p.push_back(p);
        g.q.push_back(q);
    }
    std::vector<double> ux(g.x), up(g.p);
    std::sort(ux.begin(), ux.end());
    ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    if (ux.size() < 2 || up.size() < 2) {
        throw std::runtime_error("degenerate Q grid");
    }
    g.dx = ux[1] - ux[0];
    g.dp = up[1] - up[0];
    return g;
}

std::pair<double, double> argmax(const CsvGrid &g) {
    std::size_t k = static_cast<std::size_t>(std::max_element(g.q.begin(), g.q.end()) - g.q.begin());
    return {g.x[k], g.p[k]};
}

Eigen::Matrix2d moments(const CsvGrid &g) {
    double w = 0, mx = 0, mp = 0;
    for (std::size_t k = 0; k < g.q.size(); ++k) {
        w += g.q[k];
        mx += g.q[k] * g.x[k];
        mp += g.q[k] * g.p[k];
    }
    mx /= w;
    mp /= w;
    Eigen::Matrix2d c = Eigen::Matrix2d::Zero();
    for (std::size_t k = 0; k < g.q.size(); ++k) {
        double ex = g.x[k] - mx;
        double ep = g.p[k] - mp;
        c(0, 0) += g.q[k] * ex * ex;
        c(1, 1) += g.q[k] * ep * ep;
        c(0, 1) += g.q[k] * ex * ep;
    }
    c(1, 0) = c(0, 1);
    return c / w;
}

CircuitDocument load_circuit(const Options &opt, const std::string &name) {
    return parse_circuit(cli::read_text_file((fs::path(opt.circuits_dir) / name).string()));
}

CsvGrid run_qgrid(const CircuitDocument &doc, const Options &opt) {
    std::ostringstream log;
    cli::RunOutcome r = cli::execute_circuit(doc, cli::RunOptions{opt.threads}, log);
    for (const auto &o : doc.outputs) {
        if (o.kind == OutputRequest::Kind::QGrid) {
            return parse_qgrid_csv(r.files.at(o.file));
        }
    }
    throw std::runtime_error("circuit has no qgrid output");
}

Check phase_space_figures(const Options &opt) {
    std::vector<std::string> notes;
    bool pass = true;
    auto within_cell = [](const CsvGrid &g, std::pair<double, double> at, double x, double p) {
        return std::abs(at.first - x) <= g.dx * (1 + 1e-9) && std::abs(at.second - p) <= g.dp * (1 + 1e-9);
    };
    // Translation: the peak follows the displacement parameters.
    double dx_total = 0.0, dp_total = 0.0;
    for (const char *name : {"fig2_displace_x.json", "fig2_displace_p.json"}) {
        CircuitDocument doc = load_circuit(opt, name);
        double ex = 0.0, ep = 0.0;
        for (const auto &op : doc.ops) {
            if (op.kind == CircuitOp::Kind::Gate && op.gate.kind == GateKind::DisplaceX) {
                ex += op.gate.params.at(0);
            } else if (op.kind == CircuitOp::Kind::Gate && op.gate.kind == GateKind::DisplaceZ) {
                ep += op.gate.params.at(0);
            }
        }
        CsvGrid g = run_qgrid(doc, opt);
        auto at = argmax(g);
        bool ok = within_cell(g, at, ex, ep);
        pass = pass && ok && (ex != 0.0 || ep != 0.0);
        dx_total += ex;
        dp_total += ep;
        notes.push_back(fmt("%s peak (%.2f, %.2f) expect (%.2f, %.2f)", name, at.first, at.second, ex, ep));
    }
    // Rotation: the Fourier gate turns the pre-gate peak by +π/2.
    {
        CircuitDocument doc = load_circuit(opt, "fig2_fourier.json");
        CircuitDocument before = doc;
        if (before.ops.empty() || before.ops.back().kind != CircuitOp::Kind::Gate ||
            before.ops.back().gate.kind != GateKind::Fourier) {
            throw std::runtime_error("fig2_fourier.json must end with a Fourier gate");
        }
        before.ops.pop_back();
        CsvGrid g0 = run_qgrid(before, opt);
        CsvGrid g1 = run_qgrid(doc, opt);
        auto a0 = argmax(g0);
        auto a1 = argmax(g1);
        bool ok = within_cell(g1, a1, -a0.second, a0.first) && std::hypot(a0.first, a0.second) > g0.dx;
        pass = pass && ok;
        notes.push_back(fmt("fourier (%.2f, %.2f) -> (%.2f, %.2f)", a0.first, a0.second, a1.first, a1.second));
    }
    // Squeezed ellipse: principal-variance ratio of Q.
    {
        CircuitDocument doc = load_circuit(opt, "fig4_squeeze.json");
        double r = 0.0;
        for (const auto &op : doc.ops) {
            if (op.kind == CircuitOp::Kind::Gate && op.gate.kind == GateKind::Squeeze1) {
                r += op.gate.params.at(0);
            }
        }
        CsvGrid g = run_qgrid(doc, opt);
        double ratio = principal_variance_ratio(moments(g));
        double expected = std::exp(2 * r);
        bool ok = std::abs(ratio / expected - 1.0) <= 0.10;
        pass = pass && ok;
        notes.push_back(fmt("squeeze r=%.2f aspect %.4f vs e^2r %.4f", r, ratio, expected));
    }
    std::string detail;
    for (const auto &n : notes) {
        detail += (detail.empty() ? "" : "; ") + n;
    }
    return {pass, detail};
}

// ---- 12 ---------------------------------------------------------------------

std::map<std::string, std::string> read_dir(const fs::path &dir) {
    std::map<std::string, std::string> out;
    for (const auto &e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) {
            out[fs::relative(e.path(), dir).string()] = cli::read_text_file(e.path().string());
        }
    }
    return out;
}

Check determinism(const Options &opt) {
    std::vector<fs::path> circuits;
    for (const auto &e : fs::directory_iterator(opt.circuits_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
            circuits.push_back(e.path());
        }
    }
    std::sort(circuits.begin(), circuits.end());
    if (circuits.empty()) {
        return {false, "no circuits found in " + opt.circuits_dir};
    }
    fs::path scratch = opt.scratch_dir.empty() ? fs::temp_directory_path() / "cvmaser-acceptance" : fs::path(opt.scratch_dir);
    fs::remove_all(scratch);
    std::size_t files = 0;
    std::vector<std::string> mismatches;
    for (const auto &c : circuits) {
        fs::path a = scratch / "a" / c.stem();
        fs::path b = scratch / "b" / c.stem();
        std::ostringstream sink;
        int ca = cli::cmd_run(c.string(), a.string(), cli::RunOptions{1}, sink, sink);
        int cb = cli::cmd_run(c.string(), b.string(), cli::RunOptions{std::max(2u, opt.threads)}, sink, sink);
        if (ca != 0 || cb != 0) {
            return {false, c.filename().string() + " failed: " + sink.str()};
        }
        auto fa = read_dir(a);
        auto fb = read_dir(b);
        files += fa.size();
        if (fa != fb) {
            mismatches.push_back(c.filename().string());
        }
    }
    fs::remove_all(scratch);
    if (!mismatches.empty()) {
        std::string list;
        for (const auto &m : mismatches) {
            list += " " + m;
        }
        return {false, "outputs differ:" + list};
    }
    return {true, fmt("%zu circuits, %zu files byte-identical across two runs (1 and %u threads)", circuits.size(),
                      files, std::max(2u, opt.threads))};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options &opt,
                                            const std::function<void(const CriterionResult &)> &on_result) {
    struct Entry {
        int id;
        const char *name;
        double limit;
        std::function<Check()> run;
    };
    const std::vector<Entry> entries{
        {1, "fourier-eigenphases", 1, [&] { return fourier_eigenphases(opt); }},
        {2, "beam-statistics", 5, [] { return beam(); }},
        {3, "product-formula-orders", 30, [] { return product_formula_orders(); }},
        {4, "squeezing-law", 10, [] { return squeezing_law(); }},
        {5, "two-mode-correlations", 10, [] { return two_mode_correlations(); }},
        {6, "jaynes-cummings-rabi", 10, [] { return jaynes_cummings(); }},
        {7, "dispersive-fourier", 20, [] { return dispersive_fourier(); }},
        {8, "pump-steady-state", 120, [] { return pump_steady_state(); }},
        {9, "effective-two-mode", 30, [] { return effective_two_mode(); }},
        {10, "universality-flagship", 300, [] { return flagship(); }},
        {11, "phase-space-figures", 30, [&] { return phase_space_figures(opt); }},
        {12, "determinism", 0, [&] { return determinism(opt); }},
    };
    std::vector<CriterionResult> results;
    for (const auto &e : entries) {
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        r.limit = e.limit;
        auto start = std::chrono::steady_clock::now();
        try {
            Check c = e.run();
            r.pass = c.pass;
            r.detail = c.detail;
        } catch (const std::exception &ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.limit > 0 && r.seconds > r.limit) {
            r.pass = false;
            r.detail += fmt(" [runtime %.2fs exceeds %.0fs]", r.seconds, r.limit);
        }
        if (on_result) {
            on_result(r);
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_result(const CriterionResult &r) {
    std::string limit = r.limit > 0 ? fmt("< %.0fs", r.limit) : std::string("no limit");
    return fmt("%s %2d %-24s %8.3fs (%s)  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
               limit.c_str()) +
           r.detail;
}

}  // namespace cvmaser::acceptance
