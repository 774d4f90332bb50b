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

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "acceptance/acceptance.hpp"
#include "cli/runner.hpp"

#ifndef CVMASER_CIRCUITS_DIR
#define CVMASER_CIRCUITS_DIR "circuits"
#endif

namespace cli = cvmaser::cli;

int main(int argc, char **argv) {
    CLI::App app{"cvmaser: continuous-variable gates, synthesis and micromaser simulation"};
    app.require_subcommand(1);
    unsigned threads = cli::default_threads();
    app.add_option("--threads", threads, "Worker threads (default: CVMASER_THREADS or hardware)")
        ->check(CLI::PositiveNumber);

    std::string circuit, out_dir = "out";
    auto *run = app.add_subcommand("run", "Run a circuit document");
    run->add_option("circuit", circuit, "Circuit file")->required();
    run->add_option("-o,--out", out_dir, "Output directory");

    cli::SynthCommand synth_cmd;
    double tolerance = 0.0;
    auto *synth = app.add_subcommand("synth", "Synthesize a gate plan for a polynomial Hamiltonian");
    synth->add_option("job", synth_cmd.job_file, "Synthesis job file")->required();
    synth->add_option("--prims", synth_cmd.prims, "\"standard\" or a primitives file");
    auto *tol_opt = synth->add_option("--tolerance", tolerance, "Infidelity tolerance (overrides the job)");
    synth->add_option("-o,--out", synth_cmd.plan_file, "Plan file")->required();
    synth->add_option("--report", synth_cmd.report_file, "Fidelity report file");

    auto *maser = app.add_subcommand("maser", "Micromaser studies");
    maser->require_subcommand(1);
    cli::PumpCommand pump_cmd;
    auto *pump = maser->add_subcommand("pump", "Pump the cavity with a sequence of atoms");
    pump->add_option("--epsilon", pump_cmd.epsilon, "Atomic coherence imbalance in [0, 1)");
    pump->add_option("--kappa", pump_cmd.kappa, "Atom-field coupling");
    pump->add_option("--t-int", pump_cmd.t_int, "Interaction time per atom");
    pump->add_option("--atoms", pump_cmd.atoms, "Number of atoms");
    pump->add_option("--cutoff", pump_cmd.cutoff, "Field cutoff");
    pump->add_option("--var-tol", pump_cmd.var_tol, "Stop once var(p) changes by less than this");
    pump->add_option("-o,--out", pump_cmd.trace_file, "Variance trace file");
    cli::BeamCommand beam_cmd;
    auto *beam = maser->add_subcommand("beam", "Atomic beam statistics");
    beam->add_option("--rate", beam_cmd.rate, "Arrival rate");
    beam->add_option("--length", beam_cmd.length, "Cavity length");
    beam->add_option("--velocity", beam_cmd.velocity, "Atom velocity");
    beam->add_option("--atoms", beam_cmd.atoms, "Arrivals to sample");
    beam->add_option("--seed", beam_cmd.seed, "Sampling seed");
    beam->add_option("-o,--out", beam_cmd.table_file, "Statistics table file");

    cvmaser::acceptance::Options verify_opt;
    verify_opt.circuits_dir = CVMASER_CIRCUITS_DIR;
    auto *verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--circuits", verify_opt.circuits_dir, "Example circuit directory");
    verify->add_flag("--flip-fourier-convention", verify_opt.flip_fourier_convention)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kParseError;
    }

    if (*run) {
        return cli::cmd_run(circuit, out_dir, cli::RunOptions{threads}, std::cout, std::cerr);
    }
    if (*synth) {
        if (*tol_opt) {
            synth_cmd.tolerance = tolerance;
        }
        return cli::cmd_synth(synth_cmd, std::cout, std::cerr);
    }
    if (*pump) {
        return cli::cmd_maser_pump(pump_cmd, std::cout, std::cerr);
    }
    if (*beam) {
        return cli::cmd_maser_beam(beam_cmd, std::cout, std::cerr);
    }
    verify_opt.threads = threads;
    bool all = true;
    double total = 0.0;
    auto results = cvmaser::acceptance::run_acceptance(verify_opt, [&](const auto &r) {
        std::cout << cvmaser::acceptance::format_result(r) << std::endl;
        all = all && r.pass;
        total += r.seconds;
    });
    std::size_t passed = 0;
    for (const auto &r : results) {
        passed += r.pass ? 1 : 0;
    }
    std::cout << passed << "/" << results.size() << " criteria passed in " << total << " s\n";
    return all ? cli::kOk : cli::kFailure;
}
