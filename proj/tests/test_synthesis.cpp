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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvmaser/gates.hpp"
#include "cvmaser/polynomial.hpp"
#include "cvmaser/serialize.hpp"
#include "cvmaser/synthesis.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace cvmaser;

namespace {

PrimitiveSet quadratic_prims() {
    PrimitiveSet prims;
    prims.add("A", parse_polynomial("x_0^2"));
    prims.add("B", parse_polynomial("p_0^2"));
    return prims;
}

// Independent product of the plan's steps with the Taylor oracle.
Matrix oracle_plan_unitary(const GatePlan &plan, const PrimitiveSet &prims, const SpaceSignature &s) {
    Matrix u = Matrix::Identity(s.dim(), s.dim());
    for (const PlanStep &step : plan.steps) {
        Matrix h = realize(prims.generator(step.primitive), s).matrix();
        u = oracle::expm(Complex(0, -step.signed_duration()) * h) * u;
    }
    return u;
}

double block_error(const GatePlan &plan, const PrimitiveSet &prims, const SpaceSignature &s, int margin) {
    Matrix u = plan_unitary(plan, prims, s);
    Matrix ref = exp_hermitian(realize(plan.target, s), plan.total_time).matrix();
    std::vector<Index> block = low_fock_indices(s, margin);
    return restricted_max_abs(u - ref, block);
}

}  // namespace

TEST(CommutatorCompose, LiteralSequence) {
    PrimitiveSet prims = quadratic_prims();
    GatePlan plan = commutator_compose(prims, "A", "B", 0.1);
    ASSERT_EQ(plan.step_count(), 4u);
    EXPECT_EQ(plan.steps[0], (PlanStep{"A", 1, 0.1}));
    EXPECT_EQ(plan.steps[1], (PlanStep{"B", 1, 0.1}));
    EXPECT_EQ(plan.steps[2], (PlanStep{"A", -1, 0.1}));
    EXPECT_EQ(plan.steps[3], (PlanStep{"B", -1, 0.1}));
    EXPECT_EQ(plan.target, commutator_i(prims.generator("A"), prims.generator("B")));
    EXPECT_DOUBLE_EQ(plan.total_time, 0.01);
    SpaceSignature s = SpaceSignature::modes({12});
    EXPECT_LT(max_abs(plan_unitary(plan, prims, s) - oracle_plan_unitary(plan, prims, s)), 1e-10);
}

TEST(CommutatorCompose, CanonicalPairGivesPhase) {
    PrimitiveSet prims;
    prims.add("x", HermitianPolynomial::x(0));
    prims.add("p", HermitianPolynomial::p(0));
    SpaceSignature s = SpaceSignature::modes({30});
    const double dt = 0.1;
    GatePlan plan = commutator_compose(prims, "x", "p", dt);
    StateVector out = apply(OperatorMatrix(s, plan_unitary(plan, prims, s)), make_vacuum(s));
    Complex amp = out.amplitudes()(0);
    EXPECT_GE(std::norm(amp), 1 - 1e-4);
    // e^{[x,p]δ²} = e^{iδ²/2}.
    EXPECT_NEAR(std::arg(amp), dt * dt / 2, 1e-6);
}

TEST(CommutatorCompose, ThirdOrderLocalError) {
    PrimitiveSet prims = quadratic_prims();
    SpaceSignature s = SpaceSignature::modes({20});
    double e1 = block_error(commutator_compose(prims, "A", "B", 0.1), prims, s, 4);
    double e2 = block_error(commutator_compose(prims, "A", "B", 0.05), prims, s, 4);
    double c = e1 / std::pow(0.1, 3);
    EXPECT_LE(e2, 1.2 * c * std::pow(0.05, 3));
    EXPECT_NEAR(std::log2(e1 / e2), 3.0, 0.3);
}

TEST(SumCompose, StrangSequenceAndOrder) {
    PrimitiveSet prims = quadratic_prims();
    GatePlan plan = sum_compose(prims, "A", "B", 0.2);
    ASSERT_EQ(plan.step_count(), 4u);
    EXPECT_EQ(plan.steps[0], (PlanStep{"A", -1, 0.1}));
    EXPECT_EQ(plan.steps[3], (PlanStep{"A", -1, 0.1}));
    EXPECT_EQ(plan.target, -(prims.generator("A") + prims.generator("B")));
    SpaceSignature s = SpaceSignature::modes({20});
    double e1 = block_error(sum_compose(prims, "A", "B", 0.1), prims, s, 4);
    double e2 = block_error(sum_compose(prims, "A", "B", 0.05), prims, s, 4);
    EXPECT_NEAR(std::log2(e1 / e2), 3.0, 0.3);
}

TEST(SumCompose, ZeroSecondGeneratorIsExact) {
    PrimitiveSet prims;
    prims.add("A", parse_polynomial("x_0^2 + 0.3*p_0"));
    prims.add("Z", HermitianPolynomial());
    SpaceSignature s = SpaceSignature::modes({14});
    GatePlan plan = sum_compose(prims, "A", "Z", 0.4);
    Matrix expected = exp_hermitian(realize(prims.generator("A"), s), -0.4).matrix();
    EXPECT_LT(max_abs(plan_unitary(plan, prims, s) - expected), 1e-12);
}

TEST(TrotterRepeat, SecondOrderGlobalError) {
    PrimitiveSet prims = quadratic_prims();
    SpaceSignature s = SpaceSignature::modes({20});
    GatePlan base = sum_compose(prims, "A", "B", 0.3);
    GatePlan once = trotter_repeat(base, 0.3, 1, prims);
    EXPECT_EQ(once.steps, base.steps);
    std::vector<double> dts, errs;
    for (int n : {4, 8, 16, 32}) {
        GatePlan plan = trotter_repeat(base, 0.3, n, prims);
        EXPECT_EQ(plan.step_count(), 4u * n);
        EXPECT_LT(unitarity_defect(plan_unitary(plan, prims, s)), 1e-10);
        dts.push_back(0.3 / n);
        errs.push_back(block_error(plan, prims, s, 4));
    }
    EXPECT_NEAR(errs[0] / errs[1], 4.0, 0.6);
    double slope = std::log(errs.front() / errs.back()) / std::log(dts.front() / dts.back());
    EXPECT_GE(slope, 1.8);
    EXPECT_LE(slope, 2.2);
}

TEST(Closure, FindsCubicFromKerrAndLinear) {
    Closure c = commutator_closure(parse_polynomial("x_0^3"), PrimitiveSet::standard());
    ASSERT_TRUE(c.decomposition);
    EXPECT_GE(c.depth_reached, 1);
    HermitianPolynomial diff = c.decomposition->generator.without_constant() - parse_polynomial("x_0^3");
    for (const auto &[m, coef] : diff.terms()) {
        EXPECT_NEAR(coef, 0.0, 1e-12);
    }
}

TEST(Closure, ExhaustedListsBasis) {
    SynthesisOptions opt;
    opt.closure.max_depth = 2;
    SpaceSignature s = SpaceSignature::modes({10});
    try {
        synthesize(parse_polynomial("x_0^6"), PrimitiveSet::standard(), 0.05, 0.01, s, opt);
        FAIL() << "expected closure exhaustion";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ClosureExhausted);
        std::string msg = e.what();
        EXPECT_NE(msg.find("kerr0"), std::string::npos);
        EXPECT_NE(msg.find("reachable basis"), std::string::npos);
    }
}

TEST(Synthesize, PrimitiveTargetIsOneStep) {
    SpaceSignature s = SpaceSignature::modes({12});
    SynthesisResult r = synthesize(parse_polynomial("x_0"), PrimitiveSet::standard(), 0.7, 1e-6, s);
    ASSERT_EQ(r.plan.step_count(), 1u);
    EXPECT_EQ(r.plan.steps[0].primitive, "x0");
    EXPECT_NEAR(r.report.min_fidelity, 1.0, 1e-10);
}

TEST(Synthesize, SumOfQuadraticsWithinRepetitionBudget) {
    SpaceSignature s = SpaceSignature::modes({16});
    SynthesisResult r = synthesize(parse_polynomial("x_0^2 + p_0^2"), quadratic_prims(), 0.3, 1e-4, s);
    EXPECT_GE(r.report.min_fidelity, 1 - 1e-4);
    EXPECT_LE(r.plan.repetitions, 200);
    OperatorMatrix exact = exp_hermitian(realize(HermitianPolynomial::number(0), s), 0.3);
    FidelityReport against_number = evaluate_plan(r.plan, quadratic_prims(), s, exact);
    EXPECT_GE(against_number.min_fidelity, 1 - 1e-4);
}

TEST(Synthesize, FlagshipCubic) {
    SpaceSignature s = SpaceSignature::modes({20});
    SynthesisResult r = synthesize(parse_polynomial("x_0^3"), PrimitiveSet::standard(), 0.05, 0.01, s);
    EXPECT_GE(r.report.min_fidelity, 0.99);
    EXPECT_LE(r.report.step_count, 100000u);
    for (const PlanStep &step : r.plan.steps) {
        EXPECT_GT(step.duration, 0.0);
        EXPECT_TRUE(PrimitiveSet::standard().contains(step.primitive));
    }
    SynthesisResult again = synthesize(parse_polynomial("x_0^3"), PrimitiveSet::standard(), 0.05, 0.01, s);
    EXPECT_EQ(again.plan.steps, r.plan.steps);
    // Independent check of the vacuum probe.
    Matrix u = oracle_plan_unitary(r.plan, PrimitiveSet::standard(), s);
    Matrix ref = oracle::expm(Complex(0, -0.05) * realize(parse_polynomial("x_0^3"), s).matrix());
    Complex overlap = (ref.col(0).adjoint() * u.col(0))(0, 0);
    EXPECT_GE(std::norm(overlap), 0.99);
}

TEST(Synthesize, BudgetExhaustion) {
    SynthesisOptions opt;
    opt.step_budget = 20;
    SpaceSignature s = SpaceSignature::modes({20});
    EXPECT_CVMASER_ERROR(synthesize(parse_polynomial("x_0^3"), PrimitiveSet::standard(), 0.05, 1e-8, s, opt),
                         ErrorKind::BudgetExhausted);
}

TEST(EvaluatePlan, ExactAndIdentity) {
    SpaceSignature s = SpaceSignature::modes({20});
    OperatorMatrix f = fourier(s, 0);
    FidelityReport exact = evaluate_unitary(f.matrix(), f, 0);
    for (const auto &p : exact.probes) {
        EXPECT_NEAR(p.fidelity, 1.0, 1e-10) << p.name;
    }
    FidelityReport id = evaluate_unitary(Matrix::Identity(s.dim(), s.dim()), f, 0);
    ASSERT_EQ(id.probes.size(), 4u);
    EXPECT_NEAR(id.probes[0].fidelity, 1.0, 1e-12);
    EXPECT_NEAR(id.probes[1].fidelity, 1.0, 1e-12);
    EXPECT_LT(id.probes[2].fidelity, 0.9);
    EXPECT_GE(id.operator_error_block, std::sqrt(2.0) * std::sin(std::numbers::pi / 4));
}

TEST(PlanSerialization, RoundTrip) {
    SpaceSignature s = SpaceSignature::modes({20});
    SynthesisResult r = synthesize(parse_polynomial("x_0^3"), PrimitiveSet::standard(), 0.05, 0.01, s);
    std::string text = plan_to_json(r.plan, {20});
    GatePlan back = plan_from_json(text);
    EXPECT_EQ(back.steps, r.plan.steps);
    EXPECT_EQ(back.target, r.plan.target);
    EXPECT_DOUBLE_EQ(back.total_time, r.plan.total_time);
    EXPECT_NE(text.find("[x,p]=i/2"), std::string::npos);
    std::string again = plan_to_json(back, {20});
    EXPECT_EQ(again.substr(again.find("\"step_count\"")), text.substr(text.find("\"step_count\"")));
}

TEST(MergeAdjacent, CombinesRuns) {
    std::vector<PlanStep> steps{{"a", 1, 0.2}, {"a", -1, 0.5}, {"b", 1, 0.1}, {"b", 1, 0.1}, {"a", 1, 0.3}};
    std::vector<PlanStep> merged = merge_adjacent(steps);
    ASSERT_EQ(merged.size(), 3u);
    EXPECT_EQ(merged[0].primitive, "a");
    EXPECT_NEAR(merged[0].signed_duration(), -0.3, 1e-15);
    EXPECT_NEAR(merged[1].signed_duration(), 0.2, 1e-15);
}
