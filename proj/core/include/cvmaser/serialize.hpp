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

#ifndef CVMASER_SERIALIZE_HPP
#define CVMASER_SERIALIZE_HPP

#include <string>
#include <vector>

#include "cvmaser/micromaser.hpp"
#include "cvmaser/phase_space.hpp"
#include "cvmaser/synthesis.hpp"

namespace cvmaser {

/// Comment lines ("# ...") naming the quadrature convention; every output
/// file starts with them.
std::string convention_header(const std::vector<int> &cutoffs);

/// Comment header followed by `x,p,q` rows, x outer and p inner.
std::string qgrid_to_csv(const QGrid &grid, const std::vector<int> &cutoffs, std::size_t mode);

std::string samples_to_csv(const std::vector<double> &samples, const std::vector<int> &cutoffs, std::size_t mode,
                           double theta);

/// Whitespace-separated columns: step var_x var_p purity.
std::string pump_trace_to_text(const std::vector<PumpRecord> &trace, const std::vector<int> &cutoffs,
                               const PumpConfig &cfg);

std::string plan_to_json(const GatePlan &plan, const std::vector<int> &cutoffs);
/// Steps, target and total time; the recipe is not restored.
GatePlan plan_from_json(const std::string &text);

std::string report_to_json(const FidelityReport &report, const std::vector<int> &cutoffs,
                           const FidelityReport *baseline = nullptr);

/// {"primitives": {"id": "polynomial", ...}} or the string "standard".
PrimitiveSet primitives_from_json(const std::string &text);

struct SynthJob {
    HermitianPolynomial target;
    std::string target_text;
    double time = 0.0;
    int cutoff = 20;
    double tolerance = 1e-2;
    SynthesisOptions options;
};

/// {"schema_version": 1, "target": "x_0^3", "time": 0.05, "cutoff": 20,
///  "tolerance": 0.01, "max_depth": 4, "max_degree": 6, "step_budget": 100000}
SynthJob synth_job_from_json(const std::string &text);

/// Shortest round-trip text for a double.
std::string format_double(double v);

}  // namespace cvmaser

#endif
