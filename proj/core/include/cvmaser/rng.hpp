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

#ifndef CVMASER_RNG_HPP
#define CVMASER_RNG_HPP

#include <cstdint>
#include <random>

namespace cvmaser {

/// Seeded generator used by every stochastic operation.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives doubles from the raw 64-bit words itself so that samples are
/// identical across standard library implementations.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Exponential variate with the given rate.
    double exponential(double rate);

    std::uint64_t next_u64() {
        return engine_();
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace cvmaser

#endif
