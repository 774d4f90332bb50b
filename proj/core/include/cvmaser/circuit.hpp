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

#ifndef CVMASER_CIRCUIT_HPP
#define CVMASER_CIRCUIT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvmaser/gates.hpp"
#include "cvmaser/phase_space.hpp"

namespace cvmaser {

inline constexpr int kCircuitSchemaVersion = 1;

struct ModeInit {
    enum class Kind { Vacuum, Fock, Coherent };
    Kind kind = Kind::Vacuum;
    int n = 0;
    Complex alpha{0.0, 0.0};
    bool normalize = false;

    bool operator==(const ModeInit &) const = default;
};

/// Dispersive atom transit: field phases e^{-ig²(n+1)t/Δ}.
struct DispersiveOp {
    std::size_t mode = 0;
    double delta = 0.0;
    double g = 0.0;
    double t = 0.0;
    bool operator==(const DispersiveOp &) const = default;
};

/// A run of pump atoms; needs a single-mode circuit.
struct PumpOp {
    double epsilon = 0.0;
    double kappa = 1.0;
    double t_int = 0.1;
    std::size_t atoms = 1;
    std::string trace_file;
    bool operator==(const PumpOp &) const = default;
};

/// An atom prepared in |e⟩ crosses the cavity resonantly for time t and is
/// then measured in a rotated basis; needs a single-mode circuit.
struct MeasureOp {
    double g = 1.0;
    double t = 0.0;
    double angle = 0.0;
    std::optional<int> postselect;
    std::uint64_t seed = 0;
    bool operator==(const MeasureOp &) const = default;
};

struct CircuitOp {
    enum class Kind { Gate, Dispersive, Pump, Measure };
    Kind kind = Kind::Gate;
    GateDescriptor gate{GateKind::DisplaceX, {0}, {0.0}};
    DispersiveOp dispersive;
    PumpOp pump;
    MeasureOp measure;
    bool operator==(const CircuitOp &) const = default;
};

struct OutputRequest {
    enum class Kind { QGrid, Expectation, Variance, Homodyne, Fidelity };
    Kind kind = Kind::Expectation;
    std::string name;
    std::string file;
    std::size_t mode = 0;
    std::optional<GridSpec> grid;
    std::string op;
    double theta = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<ModeInit> reference;

    bool operator==(const OutputRequest &o) const;
};

struct CircuitDocument {
    int schema_version = kCircuitSchemaVersion;
    std::vector<int> modes;
    std::vector<ModeInit> initial;
    std::vector<CircuitOp> ops;
    std::vector<OutputRequest> outputs;

    bool operator==(const CircuitDocument &) const = default;
};

/// Raised for malformed documents; `path` names the offending field.
class DocumentError : public std::runtime_error {
   public:
    enum class Stage { Parse, Validate };
    DocumentError(Stage stage, std::string path, const std::string &message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), stage_(stage), path_(std::move(path)) {
    }
    Stage stage() const noexcept {
        return stage_;
    }
    const std::string &path() const noexcept {
        return path_;
    }

   private:
    Stage stage_;
    std::string path_;
};

/// Parses and validates. Throws DocumentError.
CircuitDocument parse_circuit(const std::string &text);
std::string circuit_to_json(const CircuitDocument &doc);

/// Structural checks that need no parsing context.
void validate_circuit(const CircuitDocument &doc);

/// Same document with every cutoff multiplied by `factor`.
CircuitDocument scale_cutoffs(const CircuitDocument &doc, int factor);

StateVector initial_state(const std::vector<int> &cutoffs, const std::vector<ModeInit> &init);

}  // namespace cvmaser

#endif
