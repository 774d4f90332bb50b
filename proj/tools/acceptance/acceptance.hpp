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

#ifndef CVMASER_TOOLS_ACCEPTANCE_HPP
#define CVMASER_TOOLS_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace cvmaser::acceptance {

struct Options {
    /// Directory holding the shipped example circuits.
    std::string circuits_dir;
    /// Scratch directory for the determinism runs; a temporary one if empty.
    std::string scratch_dir;
    unsigned threads = 1;
    /// Negative control: evaluates the Fourier gate with the opposite
    /// rotation sense.
    bool flip_fourier_convention = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    /// Runtime limit in seconds, 0 when unbounded.
    double limit = 0.0;
};

std::vector<CriterionResult> run_acceptance(const Options &opt,
                                            const std::function<void(const CriterionResult &)> &on_result = {});

std::string format_result(const CriterionResult &r);

}  // namespace cvmaser::acceptance

#endif
