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

#ifndef CVMASER_TOOLS_RUNNER_HPP
#define CVMASER_TOOLS_RUNNER_HPP

#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "cvmaser/circuit.hpp"

namespace cvmaser::cli {

/// Process exit codes. Stable across releases.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParseError = 2,
    kValidationError = 3,
    kNumericalError = 4,
    kClosureExhausted = 5,
};

/// Maps an exception escaping a command to its exit code.
int exit_code_for(const std::exception &e);

/// Thread cap from CVMASER_THREADS, else the hardware concurrency.
unsigned default_threads();

struct RunOptions {
    unsigned threads = 1;
    double leakage_limit = 1e-6;
    int max_retries = 2;
};

struct RunOutcome {
    /// File name to contents, results.json included.
    std::map<std::string, std::string> files;
    std::vector<int> cutoffs;
    double leakage = 0.0;
    int retries = 0;
};

/// Runs the circuit in memory. Reruns with doubled cutoffs while the
/// leakage exceeds the limit, logging each retry to `log`.
RunOutcome execute_circuit(const CircuitDocument &doc, const RunOptions &opt, std::ostream &log);

int cmd_run(const std::string &circuit_file, const std::string &out_dir, const RunOptions &opt, std::ostream &out,
            std::ostream &err);

struct SynthCommand {
    std::string job_file;
    /// "standard" or a primitives file.
    std::string prims = "standard";
    std::optional<double> tolerance;
    std::string plan_file;
    /// Defaults to the plan file name with a .report.json suffix.
    std::string report_file;
};

int cmd_synth(const SynthCommand &cmd, std::ostream &out, std::ostream &err);

struct PumpCommand {
    double epsilon = 0.05;
    double kappa = 1.0;
    double t_int = 0.1;
    std::size_t atoms = 500;
    int cutoff = 40;
    double var_tol = 0.0;
    std::string trace_file;
};

int cmd_maser_pump(const PumpCommand &cmd, std::ostream &out, std::ostream &err);

struct BeamCommand {
    double rate = 10.0;
    double length = 0.03;
    double velocity = 300.0;
    std::size_t atoms = 100000;
    std::uint64_t seed = 1;
    std::string table_file;
};

int cmd_maser_beam(const BeamCommand &cmd, std::ostream &out, std::ostream &err);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace cvmaser::cli

#endif
