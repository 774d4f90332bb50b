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

#include "cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "cvmaser/error.hpp"
#include "cvmaser/micromaser.hpp"
#include "cvmaser/polynomial.hpp"
#include "cvmaser/serialize.hpp"
#include "json.hpp"

namespace cvmaser::cli {

using Json = nlohmann::ordered_json;

int exit_code_for(const std::exception &e) {
    if (const auto *d = dynamic_cast<const DocumentError *>(&e)) {
        return d->stage() == DocumentError::Stage::Parse ? kParseError : kValidationError;
    }
    if (const auto *c = dynamic_cast<const Error *>(&e)) {
        switch (c->kind()) {
            case ErrorKind::ClosureExhausted:
                return kClosureExhausted;
            case ErrorKind::Singular:
            case ErrorKind::Contract:
            case ErrorKind::BudgetExhausted:
                return kNumericalError;
            case ErrorKind::Dimension:
            case ErrorKind::SpaceMismatch:
            case ErrorKind::InvalidArgument:
                return kValidationError;
        }
    }
    return kFailure;
}

unsigned default_threads() {
    if (const char *env = std::getenv("CVMASER_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DocumentError(DocumentError::Stage::Parse, path, "cannot read file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
}

namespace {

Json conventions() {
    Json c;
    c["commutator"] = "[x,p]=i/2";
    c["hbar"] = 1;
    c["annihilation"] = "a=x+ip";
    return c;
}

std::string op_path(std::size_t k) {
    return "ops[" + std::to_string(k) + "]";
}

struct Attempt {
    std::map<std::string, std::string> files;
    Json ops = Json::array();
    Json results = Json::object();
    std::vector<std::string> warnings;
    double leakage = 0.0;
};

Json summary_json(const QGrid &q) {
    QSummary s = q_summary(q);
    Json j;
    j["argmax"] = {s.argmax_x, s.argmax_p};
    j["mean"] = {s.mean_x, s.mean_p};
    j["covariance"] = {{s.covariance(0, 0), s.covariance(0, 1)}, {s.covariance(1, 0), s.covariance(1, 1)}};
    j["total_mass"] = s.total_mass;
    j["grid"] = {{"x", {q.spec.x.min, q.spec.x.max, q.spec.x.count}},
                 {"p", {q.spec.p.min, q.spec.p.max, q.spec.p.count}}};
    j["probe_truncation"] = q.corner_leakage;
    return j;
}

DensityOperator measure_field(const DensityOperator &rho, const MeasureOp &m, Json &record) {
    const SpaceSignature &s = rho.space();
    int d = s.cutoff(0);
    Matrix joint = Matrix::Zero(2 * d, 2 * d);
    joint.block(kExcited * d, kExcited * d, d, d) = rho.matrix();
    DensityOperator evolved = jc_evolve(DensityOperator(atom_field_space(d), std::move(joint)),
                                        JCParams{0.0, 0.0, m.g}, m.t);
    MixedAtomMeasurement r = m.postselect ? measure_atom_branch(evolved, m.angle, *m.postselect)
                                          : measure_atom(evolved, m.angle, m.seed);
    record["outcome"] = r.outcome == kExcited ? "e" : "g";
    record["probability"] = r.probability;
    record["postselected"] = m.postselect.has_value();
    return DensityOperator(s, r.field.matrix());
}

Attempt run_once(const CircuitDocument &doc, unsigned threads) {
    Attempt a;
    SpaceSignature space = SpaceSignature::modes(doc.modes);
    auto track = [&](const DensityOperator &rho) {
        for (std::size_t m = 0; m < doc.modes.size(); ++m) {
            a.leakage = std::max(a.leakage, rho.top_level_population(m));
        }
    };
    for (std::size_t m = 0; m < doc.initial.size(); ++m) {
        if (doc.initial[m].kind == ModeInit::Kind::Coherent) {
            a.leakage = std::max(a.leakage, coherent_truncation_leakage(doc.initial[m].alpha, doc.modes[m]));
        }
    }
    DensityOperator rho = DensityOperator::from_pure(initial_state(doc.modes, doc.initial).normalized());
    track(rho);

    for (std::size_t k = 0; k < doc.ops.size(); ++k) {
        const CircuitOp &op = doc.ops[k];
        switch (op.kind) {
            case CircuitOp::Kind::Gate:
                rho = apply_to_density(build_gate(op.gate, space), rho);
                break;
            case CircuitOp::Kind::Dispersive: {
                const DispersiveOp &d = op.dispersive;
                Warnings w;
                OperatorMatrix local = dispersive_phase(d.delta, d.g, d.t, doc.modes[d.mode], &w);
                for (const auto &msg : w) {
                    a.warnings.push_back(op_path(k) + ": " + msg);
                }
                rho = apply_to_density(OperatorMatrix::unitary(space, embed(local.matrix(), space, d.mode)), rho);
                break;
            }
            case CircuitOp::Kind::Pump: {
                const PumpOp &p = op.pump;
                PumpConfig cfg = PumpConfig::from_epsilon(p.epsilon, p.kappa, p.t_int);
                PumpResult r = pump_to_steady(rho, cfg, p.atoms, 0.0);
                rho = r.rho;
                if (!p.trace_file.empty()) {
                    a.files[p.trace_file] = pump_trace_to_text(r.trace, doc.modes, cfg);
                }
                const PumpRecord &last = r.trace.back();
                Json rec;
                rec["op"] = op_path(k);
                rec["kind"] = "pump";
                rec["atoms"] = r.trace.size();
                rec["final_var_x"] = last.var_x;
                rec["final_var_p"] = last.var_p;
                rec["final_purity"] = last.purity;
                a.ops.push_back(rec);
                break;
            }
            case CircuitOp::Kind::Measure: {
                Json rec;
                rec["op"] = op_path(k);
                rec["kind"] = "measure";
                rho = measure_field(rho, op.measure, rec);
                a.ops.push_back(rec);
                break;
            }
        }
        track(rho);
    }

    for (std::size_t k = 0; k < doc.outputs.size(); ++k) {
        const OutputRequest &o = doc.outputs[k];
        switch (o.kind) {
            case OutputRequest::Kind::QGrid: {
                GridSpec grid = o.grid ? *o.grid : default_grid(rho, o.mode);
                QGrid q = husimi_q(rho, o.mode, grid, threads);
                a.files[o.file] = qgrid_to_csv(q, doc.modes, o.mode);
                a.results[o.file] = summary_json(q);
                break;
            }
            case OutputRequest::Kind::Expectation:
            case OutputRequest::Kind::Variance: {
                OperatorMatrix h = realize(parse_polynomial(o.op), space);
                a.results[o.name] = o.kind == OutputRequest::Kind::Expectation ? expectation(h, rho).real()
                                                                               : variance(h, rho);
                break;
            }
            case OutputRequest::Kind::Homodyne: {
                std::vector<double> xs = homodyne_sample(rho, o.mode, o.theta, o.samples, o.seed);
                a.files[o.file] = samples_to_csv(xs, doc.modes, o.mode, o.theta);
                double mean = 0.0;
                for (double x : xs) {
                    mean += x;
                }
                mean /= static_cast<double>(xs.size());
                double var = 0.0;
                for (double x : xs) {
                    var += (x - mean) * (x - mean);
                }
                var /= static_cast<double>(xs.size());
                a.results[o.file] = {{"samples", xs.size()}, {"mean", mean}, {"variance", var}};
                break;
            }
            case OutputRequest::Kind::Fidelity: {
                StateVector ref = initial_state(doc.modes, o.reference).normalized();
                const Vector &v = ref.amplitudes();
                a.results[o.name] = (v.adjoint() * rho.matrix() * v)(0, 0).real();
                break;
            }
        }
    }
    return a;
}

}  // namespace

RunOutcome execute_circuit(const CircuitDocument &doc, const RunOptions &opt, std::ostream &log) {
    validate_circuit(doc);
    CircuitDocument current = doc;
    for (int attempt = 0;; ++attempt) {
        Attempt a = run_once(current, opt.threads);
        bool over = a.leakage > opt.leakage_limit;
        if (over && attempt < opt.max_retries) {
            log << "leakage " << a.leakage << " exceeds " << opt.leakage_limit << " at cutoffs";
            for (int c : current.modes) {
                log << ' ' << c;
            }
            log << "; retrying with doubled cutoffs\n";
            current = scale_cutoffs(current, 2);
            continue;
        }
        if (over) {
            a.warnings.push_back("leakage " + format_double(a.leakage) + " still exceeds " +
                                 format_double(opt.leakage_limit) + " after " + std::to_string(attempt) +
                                 " retries");
        }
        Json j;
        j["schema_version"] = kCircuitSchemaVersion;
        j["conventions"] = conventions();
        j["requested_cutoffs"] = doc.modes;
        j["cutoffs"] = current.modes;
        j["retries"] = attempt;
        j["leakage"] = {{"max_top_level_population", a.leakage}, {"limit", opt.leakage_limit}};
        j["warnings"] = a.warnings;
        j["ops"] = a.ops;
        j["results"] = a.results;
        Json files = Json::array();
        for (const auto &[name, text] : a.files) {
            files.push_back(name);
        }
        j["files"] = files;

        RunOutcome out;
        out.files = std::move(a.files);
        out.files["results.json"] = j.dump(2) + "\n";
        out.cutoffs = current.modes;
        out.leakage = a.leakage;
        out.retries = attempt;
        return out;
    }
}

int cmd_run(const std::string &circuit_file, const std::string &out_dir, const RunOptions &opt, std::ostream &out,
            std::ostream &err) {
    try {
        CircuitDocument doc = parse_circuit(read_text_file(circuit_file));
        RunOutcome r = execute_circuit(doc, opt, err);
        std::filesystem::create_directories(out_dir);
        for (const auto &[name, text] : r.files) {
            write_text_file((std::filesystem::path(out_dir) / name).string(), text);
        }
        out << "wrote " << r.files.size() << " files to " << out_dir << " (cutoffs";
        for (int c : r.cutoffs) {
            out << ' ' << c;
        }
        out << ", leakage " << format_double(r.leakage) << ")\n";
        return kOk;
    } catch (const std::exception &e) {
        err << "error: " << circuit_file << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_synth(const SynthCommand &cmd, std::ostream &out, std::ostream &err) {
    try {
        SynthJob job = synth_job_from_json(read_text_file(cmd.job_file));
        PrimitiveSet prims =
            cmd.prims == "standard" ? PrimitiveSet::standard() : primitives_from_json(read_text_file(cmd.prims));
        double tol = cmd.tolerance.value_or(job.tolerance);
        if (!(tol > 0.0 && tol < 1.0)) {
            fail(ErrorKind::InvalidArgument, "tolerance must lie in (0, 1)");
        }
        std::size_t n_modes = std::max<std::size_t>(1, job.target.num_modes());
        for (const auto &[id, gen] : prims.all()) {
            n_modes = std::max(n_modes, gen.num_modes());
        }
        std::vector<int> cutoffs(n_modes, job.cutoff);
        SpaceSignature space = SpaceSignature::modes(cutoffs);

        SynthesisResult r = synthesize(job.target, prims, job.time, tol, space, job.options);
        OperatorMatrix reference = exp_hermitian(realize(job.target, space), job.time);
        FidelityReport baseline = evaluate_unitary(Matrix::Identity(space.dim(), space.dim()), reference, 0);

        std::string plan_file = cmd.plan_file.empty() ? "plan.json" : cmd.plan_file;
        std::string report_file = cmd.report_file;
        if (report_file.empty()) {
            std::filesystem::path p(plan_file);
            report_file = (p.parent_path() / (p.stem().string() + ".report.json")).string();
        }
        write_text_file(plan_file, plan_to_json(r.plan, cutoffs));
        write_text_file(report_file, report_to_json(r.report, cutoffs, &baseline));
        out << "target " << job.target.to_string() << " t=" << format_double(job.time) << "\n";
        out << "steps " << r.report.step_count << "  min fidelity " << format_double(r.report.min_fidelity)
            << "  mean fidelity " << format_double(r.report.mean_fidelity) << "  (identity baseline min "
            << format_double(baseline.min_fidelity) << ")\n";
        out << "wrote " << plan_file << " and " << report_file << "\n";
        return kOk;
    } catch (const std::exception &e) {
        err << "error: " << cmd.job_file << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_maser_pump(const PumpCommand &cmd, std::ostream &out, std::ostream &err) {
    try {
        if (cmd.cutoff < 2) {
            fail(ErrorKind::InvalidArgument, "cutoff must be at least 2");
        }
        if (cmd.atoms < 1) {
            fail(ErrorKind::InvalidArgument, "atoms must be at least 1");
        }
        PumpConfig cfg = PumpConfig::from_epsilon(cmd.epsilon, cmd.kappa, cmd.t_int);
        SpaceSignature space = SpaceSignature::modes({cmd.cutoff});
        PumpResult r = pump_to_steady(DensityOperator::from_pure(make_vacuum(space)), cfg, cmd.atoms, cmd.var_tol);
        std::string text = pump_trace_to_text(r.trace, {cmd.cutoff}, cfg);
        if (!cmd.trace_file.empty()) {
            write_text_file(cmd.trace_file, text);
        }
        const PumpRecord &last = r.trace.back();
        double min_var_p = last.var_p;
        for (const auto &rec : r.trace) {
            min_var_p = std::min(min_var_p, rec.var_p);
        }
        out << "atoms " << r.trace.size() << (r.converged ? " (converged)" : "") << "\n";
        out << "final var_x " << format_double(last.var_x) << "  var_p " << format_double(last.var_p)
            << "  purity " << format_double(last.purity) << "\n";
        out << "min var_p " << format_double(min_var_p) << "  vacuum 0.25\n";
        out << "top-level population " << format_double(r.rho.top_level_population(0)) << "\n";
        if (cmd.trace_file.empty()) {
            out << text;
        }
        return kOk;
    } catch (const std::exception &e) {
        err << "error: maser pump: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_maser_beam(const BeamCommand &cmd, std::ostream &out, std::ostream &err) {
    try {
        BeamConfig b{cmd.rate, cmd.length, cmd.velocity};
        if (cmd.atoms < 2) {
            fail(ErrorKind::InvalidArgument, "atoms must be at least 2");
        }
        BeamStatistics s = beam_statistics(b, cmd.atoms, cmd.seed);
        char p1[32];
        std::snprintf(p1, sizeof p1, "%.3f", s.p1);
        std::ostringstream t;
        t << "# beam: rate " << format_double(cmd.rate) << ", length " << format_double(cmd.length)
          << ", velocity " << format_double(cmd.velocity) << ", seed " << cmd.seed << "\n";
        t << "quantity observed expected sigma\n";
        t << "arrivals " << s.arrivals << ' ' << format_double(s.expected_arrivals) << ' '
          << format_double(std::sqrt(s.expected_arrivals)) << "\n";
        t << "short_gap_fraction " << format_double(s.short_gap_fraction) << ' '
          << format_double(s.short_gap_expected) << ' ' << format_double(s.short_gap_sigma) << "\n";
        t << "isolated_fraction " << format_double(s.isolated_fraction) << ' ' << format_double(s.p1) << ' '
          << format_double(s.isolated_sigma) << "\n";
        out << "P1 = " << p1 << " (" << format_double(s.p1) << ")\n" << t.str();
        if (!cmd.table_file.empty()) {
            write_text_file(cmd.table_file, "# conventions: [x,p]=i/2, hbar=1, a=x+ip\n# cutoffs: none\n# P1 " +
                                                format_double(s.p1) + "\n" + t.str());
        }
        return kOk;
    } catch (const std::exception &e) {
        err << "error: maser beam: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace cvmaser::cli
