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


#include "cvmaser/rng.hpp"

#include <cmath>

#include "cvmaser/error.hpp"

namespace cvmaser {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Dimension:
            return "dimension";
        case ErrorKind::Contract:
            return "contract";
        case ErrorKind::SpaceMismatch:
            return "space-mismatch";
        case ErrorKind::InvalidArgument:
            return "invalid-argument";
        case ErrorKind::Singular:
            return "singular";
        case ErrorKind::ClosureExhausted:
            return "closure-exhausted";
        case ErrorKind::BudgetExhausted:
            return "budget-exhausted";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) {
        fail(ErrorKind::InvalidArgument, "exponential rate must be positive");
    }
    return -std::log1p(-uniform()) / rate;
}

}  // namespace cvmaser
