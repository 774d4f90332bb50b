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

#ifndef CVMASER_SYNTHESIS_HPP
#define CVMASER_SYNTHESIS_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cvmaser/fock.hpp"
#include "cvmaser/polynomial.hpp"

namespace cvmaser {

/// Generators the experiment can switch on with either sign and any
/// duration, keyed by id. Iteration is in id order, which is also the
/// tie-breaking order of the synthesis search.
class PrimitiveSet {
   public:
    void add(const std::string &id, HermitianPolynomial generator);
    bool contains(const std::string &id) const {
        return prims_.count(id) != 0;
    }
    const HermitianPolynomial &generator(const std::string &id) const;
    const std::map<std::string, HermitianPolynomial> &all() const {
        return prims_;
    }
    std::size_t size() const {
        return prims_.size();
    }

    /// {x_k, p_k, x_k² + p_k², (x_k² + p_k²)²} under ids xk, pk, rotk, kerrk.
    static PrimitiveSet standard(std::size_t mode = 0);

   private:
    std::map<std::string, HermitianPolynomial> prims_;
};

/// One primitive application e^{-i·sign·G·duration}.
struct PlanStep {
    std::string primitive;
    int sign = 1;
    double duration = 0.0;

    double signed_duration() const {
        return sign * duration;
    }
    bool operator==(const PlanStep &) const = default;
};

/// Node of a derivation tree: a primitive, the commutator i[a, b], or a
/// weighted sum. Every node denotes a Hermitian generator.
struct Derivation {
    enum class Kind { Primitive, Commutator, Sum };
    Kind kind = Kind::Primitive;
    std::string primitive;
    std::shared_ptr<const Derivation> a, b;
    std::vector<std::pair<double, std::shared_ptr<const Derivation>>> terms;
    HermitianPolynomial generator;
    int depth = 0;

    std::string label() const;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

DerivationPtr derive_primitive(const PrimitiveSet &prims, const std::string &id);
DerivationPtr derive_commutator(DerivationPtr a, DerivationPtr b);
DerivationPtr derive_sum(std::vector<std::pair<double, DerivationPtr>> terms);

/// Literal: the four-step sequences of the two product formulas.
/// Balanced: commutators as a mirrored pair of four-step blocks whose
/// durations are scaled by the generator norms on the working space.
enum class CompileStyle { Literal, Balanced };

/// Ordered primitive applications; steps[0] acts first. The plan realizes
/// e^{-i·target·total_time} approximately.
struct GatePlan {
    std::vector<PlanStep> steps;
    HermitianPolynomial target;
    double total_time = 0.0;
    DerivationPtr recipe;
    CompileStyle style = CompileStyle::Literal;
    int repetitions = 1;

    std::size_t step_count() const {
        return steps.size();
    }
};

/// e^{-iAδ}, e^{-iBδ}, e^{iAδ}, e^{iBδ} in that order, which realizes
/// e^{[A,B]δ²} = e^{-i·i[A,B]·δ²} up to O(δ³).
GatePlan commutator_compose(const PrimitiveSet &prims, const std::string &a, const std::string &b, double dt);

/// e^{iAδ/2}, e^{iBδ/2}, e^{iBδ/2}, e^{iAδ/2}, which realizes e^{i(A+B)δ}
/// up to O(δ³); the plan target is −(A + B).
GatePlan sum_compose(const PrimitiveSet &prims, const std::string &a, const std::string &b, double dt);

/// n copies of the plan's recipe compiled for time t/n.
GatePlan trotter_repeat(const GatePlan &plan, double t, int n_steps, const PrimitiveSet &prims,
                        const SpaceSignature *norm_space = nullptr);

/// Step list for e^{-i·G·tau} where G is the node's generator.
std::vector<PlanStep> compile(const DerivationPtr &node, double tau, CompileStyle style,
                              const PrimitiveSet &prims, const SpaceSignature *norm_space);

/// Merges consecutive applications of one primitive.
std::vector<PlanStep> merge_adjacent(const std::vector<PlanStep> &steps);

/// Dense unitary of the plan on the given space.
Matrix plan_unitary(const GatePlan &plan, const PrimitiveSet &prims, const SpaceSignature &space);

struct ProbeResult {
    std::string name;
    double fidelity;
};

struct FidelityReport {
    std::vector<ProbeResult> probes;
    double mean_fidelity = 0.0;
    double min_fidelity = 0.0;
    /// Spectral-norm error after optimal global phase, on the leakage-free
    /// block and on the whole truncated space.
    double operator_error_block = 0.0;
    double operator_error_full = 0.0;
    std::size_t step_count = 0;
};

/// Probe states on mode 0 of the space: |0⟩, |1⟩, |α=1⟩, Ŝ(r=0.3)|0⟩.
std::vector<std::pair<std::string, StateVector>> standard_probes(const SpaceSignature &space);

FidelityReport evaluate_unitary(const Matrix &u, const OperatorMatrix &reference, std::size_t step_count);
FidelityReport evaluate_plan(const GatePlan &plan, const PrimitiveSet &prims, const SpaceSignature &space,
                             const OperatorMatrix &reference);

struct ClosureOptions {
    int max_depth = 4;
    int max_degree = kDefaultMaxDegree;
};

struct ClosureNode {
    DerivationPtr node;
    std::string label;
};

struct Closure {
    std::vector<ClosureNode> nodes;
    /// Set when the target lies in the span of the nodes.
    DerivationPtr decomposition;
    int depth_reached = 0;
};

/// Breadth-first commutator closure of the primitive set, stopping at the
/// first depth whose span contains the target (constant terms ignored).
Closure commutator_closure(const HermitianPolynomial &target, const PrimitiveSet &prims,
                           const ClosureOptions &options = {});

struct SynthesisOptions {
    ClosureOptions closure;
    std::size_t step_budget = 100000;
    CompileStyle style = CompileStyle::Balanced;
};

struct SynthesisResult {
    GatePlan plan;
    FidelityReport report;
    std::vector<std::string> closure_basis;
};

/// Finds a derivation of the target, compiles it for time t with
/// geometric refinement, and certifies min probe fidelity ≥ 1 − tolerance
/// against e^{-i·target·t} on the space.
SynthesisResult synthesize(const HermitianPolynomial &target, const PrimitiveSet &prims, double t,
                           double tolerance, const SpaceSignature &space, const SynthesisOptions &options = {});

}  // namespace cvmaser

#endif
