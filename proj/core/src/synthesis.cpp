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


#include "cvmaser/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvmaser/error.hpp"
#include "cvmaser/gates.hpp"

namespace cvmaser {

// ---- primitives and derivations ---------------------------------------------

void PrimitiveSet::add(const std::string &id, HermitianPolynomial generator) {
    if (id.empty()) {
        fail(ErrorKind::InvalidArgument, "primitive id must be nonempty");
    }
    prims_[id] = std::move(generator);
}

const HermitianPolynomial &PrimitiveSet::generator(const std::string &id) const {
    auto it = prims_.find(id);
    if (it == prims_.end()) {
        fail(ErrorKind::InvalidArgument, "unknown primitive '" + id + "'");
    }
    return it->second;
}

PrimitiveSet PrimitiveSet::standard(std::size_t mode) {
    std::string k = std::to_string(mode);
    HermitianPolynomial x = HermitianPolynomial::x(mode);
    HermitianPolynomial p = HermitianPolynomial::p(mode);
    HermitianPolynomial rot = jordan(x, x) + jordan(p, p);
    PrimitiveSet s;
    s.add("x" + k, x);
    s.add("p" + k, p);
    s.add("rot" + k, rot);
    s.add("kerr" + k, power(rot, 2));
    return s;
}

std::string Derivation::label() const {
    switch (kind) {
        case Kind::Primitive:
            return primitive;
        case Kind::Commutator:
            return "i[" + a->label() + "," + b->label() + "]";
        case Kind::Sum: {
            std::ostringstream out;
            out.precision(17);
            for (std::size_t k = 0; k < terms.size(); ++k) {
                if (k) {
                    out << " + ";
                }
                out << terms[k].first << "*" << terms[k].second->label();
            }
            return terms.empty() ? "0" : out.str();
        }
    }
    return "";
}

DerivationPtr derive_primitive(const PrimitiveSet &prims, const std::string &id) {
    auto d = std::make_shared<Derivation>();
    d->kind = Derivation::Kind::Primitive;
    d->primitive = id;
    d->generator = prims.generator(id);
    return d;
}

DerivationPtr derive_commutator(DerivationPtr a, DerivationPtr b) {
    auto d = std::make_shared<Derivation>();
    d->kind = Derivation::Kind::Commutator;
    d->generator = commutator_i(a->generator, b->generator);
    d->depth = 1 + std::max(a->depth, b->depth);
    d->a = std::move(a);
    d->b = std::move(b);
    return d;
}

DerivationPtr derive_sum(std::vector<std::pair<double, DerivationPtr>> terms) {
    auto d = std::make_shared<Derivation>();
    d->kind = Derivation::Kind::Sum;
    for (const auto &[c, n] : terms) {
        d->generator += c * n->generator;
        d->depth = std::max(d->depth, n->depth);
    }
    d->terms = std::move(terms);
    return d;
}

// ---- compilation -------------------------------------------------------------

namespace {

using Seq = std::vector<PlanStep>;

Seq inverse(const Seq &s) {
    Seq out(s.rbegin(), s.rend());
    for (auto &st : out) {
        st.sign = -st.sign;
    }
    return out;
}

void append(Seq &dst, const Seq &src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

class Compiler {
   public:
    Compiler(CompileStyle style, const PrimitiveSet &prims, const SpaceSignature *space)
        : style_(style), prims_(prims), space_(space) {
    }

    Seq emit(const Derivation &node, double tau) {
        switch (node.kind) {
            case Derivation::Kind::Primitive:
                if (tau == 0.0) {
                    return {};
                }
                return {PlanStep{node.primitive, tau > 0 ? 1 : -1, std::abs(tau)}};
            case Derivation::Kind::Commutator:
                return commutator(node, tau);
            case Derivation::Kind::Sum: {
                std::vector<Seq> half;
                for (const auto &[c, n] : node.terms) {
                    half.push_back(emit(*n, c * tau / 2));
                }
                Seq out;
                for (const auto &h : half) {
                    append(out, h);
                }
                for (auto it = half.rbegin(); it != half.rend(); ++it) {
                    append(out, *it);
                }
                return out;
            }
        }
        return {};
    }

   private:
    Seq commutator(const Derivation &node, double tau) {
        const Derivation *a = node.a.get();
        const Derivation *b = node.b.get();
        if (tau == 0.0) {
            return {};
        }
        if (tau < 0) {
            std::swap(a, b);
            tau = -tau;
        }
        if (style_ == CompileStyle::Literal) {
            double d = std::sqrt(tau);
            Seq ea = emit(*a, d);
            Seq eb = emit(*b, d);
            Seq out = ea;
            append(out, eb);
            append(out, inverse(ea));
            append(out, inverse(eb));
            return out;
        }
        double na = norm(*a);
        double nb = norm(*b);
        double s = tau / 2;
        double da = std::sqrt(s * nb / na);
        double db = std::sqrt(s * na / nb);
        Seq ea = emit(*a, da);
        Seq eb = emit(*b, db);
        Seq ia = inverse(ea);
        Seq ib = inverse(eb);
        Seq out = ea;
        append(out, eb);
        append(out, ia);
        append(out, ib);
        append(out, ia);
        append(out, ib);
        append(out, ea);
        append(out, eb);
        return out;
    }

    double norm(const Derivation &node) {
        if (space_ == nullptr) {
            return 1.0;
        }
        auto it = norms_.find(&node);
        if (it != norms_.end()) {
            return it->second;
        }
        OperatorMatrix m = realize(node.generator, *space_);
        Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix(), Eigen::EigenvaluesOnly);
        double v = es.eigenvalues().cwiseAbs().maxCoeff();
        if (!(v > 0.0)) {
            v = 1.0;
        }
        norms_[&node] = v;
        return v;
    }

    CompileStyle style_;
    const PrimitiveSet &prims_;
    const SpaceSignature *space_;
    std::map<const Derivation *, double> norms_;
};

}  // namespace

std::vector<PlanStep> compile(const DerivationPtr &node, double tau, CompileStyle style, const PrimitiveSet &prims,
                              const SpaceSignature *norm_space) {
    Compiler c(style, prims, norm_space);
    return c.emit(*node, tau);
}

std::vector<PlanStep> merge_adjacent(const std::vector<PlanStep> &steps) {
    std::vector<PlanStep> out;
    std::vector<double> signed_durations;
    for (const auto &st : steps) {
        if (!out.empty() && out.back().primitive == st.primitive) {
            signed_durations.back() += st.signed_duration();
        } else {
            out.push_back(st);
            signed_durations.push_back(st.signed_duration());
        }
    }
    std::vector<PlanStep> merged;
    for (std::size_t k = 0; k < out.size(); ++k) {
        double d = signed_durations[k];
        if (d == 0.0) {
            continue;
        }
        merged.push_back(PlanStep{out[k].primitive, d > 0 ? 1 : -1, std::abs(d)});
    }
    // A removed zero step can bring equal primitives together again.
    if (merged.size() != out.size()) {
        return merge_adjacent(merged);
    }
    return merged;
}

GatePlan commutator_compose(const PrimitiveSet &prims, const std::string &a, const std::string &b, double dt) {
    if (dt < 0) {
        fail(ErrorKind::InvalidArgument, "commutator_compose needs dt >= 0");
    }
    GatePlan plan;
    plan.recipe = derive_commutator(derive_primitive(prims, a), derive_primitive(prims, b));
    plan.target = plan.recipe->generator;
    plan.total_time = dt * dt;
    plan.style = CompileStyle::Literal;
    plan.steps = compile(plan.recipe, plan.total_time, CompileStyle::Literal, prims, nullptr);
    return plan;
}

GatePlan sum_compose(const PrimitiveSet &prims, const std::string &a, const std::string &b, double dt) {
    if (dt < 0) {
        fail(ErrorKind::InvalidArgument, "sum_compose needs dt >= 0");
    }
    GatePlan plan;
    plan.recipe = derive_sum({{-1.0, derive_primitive(prims, a)}, {-1.0, derive_primitive(prims, b)}});
    plan.target = plan.recipe->generator;
    plan.total_time = dt;
    plan.style = CompileStyle::Literal;
    plan.steps = compile(plan.recipe, dt, CompileStyle::Literal, prims, nullptr);
    return plan;
}

GatePlan trotter_repeat(const GatePlan &plan, double t, int n_steps, const PrimitiveSet &prims,
                        const SpaceSignature *norm_space) {
    if (n_steps < 1) {
        fail(ErrorKind::InvalidArgument, "trotter_repeat needs n_steps >= 1");
    }
    if (!plan.recipe) {
        fail(ErrorKind::InvalidArgument, "plan has no recipe to repeat");
    }
    GatePlan out;
    out.recipe = plan.recipe;
    out.target = plan.target;
    out.total_time = t;
    out.style = plan.style;
    out.repetitions = n_steps;
    std::vector<PlanStep> one = compile(plan.recipe, t / n_steps, plan.style, prims, norm_space);
    out.steps.reserve(one.size() * static_cast<std::size_t>(n_steps));
    for (int k = 0; k < n_steps; ++k) {
        out.steps.insert(out.steps.end(), one.begin(), one.end());
    }
    if (plan.style == CompileStyle::Balanced) {
        out.steps = merge_adjacent(out.steps);
    }
    return out;
}

// ---- evaluation --------------------------------------------------------------

Matrix plan_unitary(const GatePlan &plan, const PrimitiveSet &prims, const SpaceSignature &space) {
    std::map<std::string, SpectralGenerator> generators;
    std::map<std::pair<std::string, double>, Matrix> cache;
    Matrix u = Matrix::Identity(space.dim(), space.dim());
    for (const auto &st : plan.steps) {
        auto gi = generators.find(st.primitive);
        if (gi == generators.end()) {
            gi = generators.emplace(st.primitive, SpectralGenerator(realize(prims.generator(st.primitive), space)))
                     .first;
        }
        auto key = std::make_pair(st.primitive, st.signed_duration());
        auto ci = cache.find(key);
        if (ci == cache.end()) {
            ci = cache.emplace(key, gi->second.evolution_matrix(st.signed_duration())).first;
        }
        u = (ci->second * u).eval();
    }
    return u;
}

std::vector<std::pair<std::string, StateVector>> standard_probes(const SpaceSignature &space) {
    std::vector<std::pair<std::string, StateVector>> out;
    out.emplace_back("vacuum", make_vacuum(space));
    out.emplace_back("fock1", make_fock(space, 0, 1));
    out.emplace_back("coherent1", make_coherent(space, 0, Complex(1, 0), true));
    out.emplace_back("squeezed0.3", apply(squeeze_one(space, 0, SqueezeParam{0.3, 0.0}), make_vacuum(space)));
    return out;
}

namespace {

double aligned_error(const Matrix &u, const Matrix &v) {
    Complex tr = (v.adjoint() * u).trace();
    Complex phase = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1, 0);
    Matrix diff = u - phase * v;
    Eigen::JacobiSVD<Matrix> svd(diff);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace

FidelityReport evaluate_unitary(const Matrix &u, const OperatorMatrix &reference, std::size_t step_count) {
    const SpaceSignature &space = reference.space();
    if (u.rows() != space.dim() || u.cols() != space.dim()) {
        fail(ErrorKind::SpaceMismatch, "plan unitary does not match reference space " + space.describe());
    }
    FidelityReport rep;
    rep.step_count = step_count;
    const Matrix &v = reference.matrix();
    double sum = 0;
    rep.min_fidelity = 1.0;
    for (const auto &[name, psi] : standard_probes(space)) {
        Vector a = u * psi.amplitudes();
        Vector b = v * psi.amplitudes();
        double f = std::norm(b.dot(a));
        rep.probes.push_back({name, f});
        sum += f;
        rep.min_fidelity = std::min(rep.min_fidelity, f);
    }
    rep.mean_fidelity = sum / static_cast<double>(rep.probes.size());
    std::vector<Index> block = low_fock_indices(space, 1);
    Matrix ub(block.size(), block.size()), vb(block.size(), block.size());
    for (std::size_t r = 0; r < block.size(); ++r) {
        for (std::size_t c = 0; c < block.size(); ++c) {
            ub(r, c) = u(block[r], block[c]);
            vb(r, c) = v(block[r], block[c]);
        }
    }
    rep.operator_error_block = aligned_error(ub, vb);
    rep.operator_error_full = aligned_error(u, v);
    return rep;
}

FidelityReport evaluate_plan(const GatePlan &plan, const PrimitiveSet &prims, const SpaceSignature &space,
                             const OperatorMatrix &reference) {
    require_same_space(space, reference.space(), "evaluate_plan");
    return evaluate_unitary(plan_unitary(plan, prims, space), reference, plan.step_count());
}

// ---- closure -----------------------------------------------------------------

namespace {

using Coords = std::map<Monomial, double>;

double dot(const Coords &a, const Coords &b) {
    double s = 0;
    for (const auto &[m, v] : a) {
        auto it = b.find(m);
        if (it != b.end()) {
            s += v * it->second;
        }
    }
    return s;
}

double norm(const Coords &a) {
    return std::sqrt(dot(a, a));
}

void axpy(Coords &y, double alpha, const Coords &x) {
    for (const auto &[m, v] : x) {
        y[m] += alpha * v;
    }
}

class Span {
   public:
    /// Residual of v after projection onto the span.
    Coords residual(const Coords &v) const {
        Coords r = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : basis_) {
                axpy(r, -dot(r, q), q);
            }
        }
        return r;
    }

    bool contains(const Coords &v) const {
        double n = norm(v);
        return n == 0.0 || norm(residual(v)) <= 1e-9 * n;
    }

    bool add(const Coords &v) {
        if (contains(v)) {
            return false;
        }
        Coords r = residual(v);
        double n = norm(r);
        for (auto &[m, x] : r) {
            x /= n;
        }
        basis_.push_back(std::move(r));
        return true;
    }

   private:
    std::vector<Coords> basis_;
};

Coords coords_of(const HermitianPolynomial &p) {
    return p.without_constant().terms();
}

bool in_span(const std::vector<const Coords *> &vs, const Coords &target) {
    Span s;
    for (const Coords *v : vs) {
        s.add(*v);
    }
    return s.contains(target);
}

std::vector<double> solve_coefficients(const std::vector<const Coords *> &vs, const Coords &target) {
    std::map<Monomial, Index> rows;
    for (const Coords *v : vs) {
        for (const auto &[m, x] : *v) {
            rows.emplace(m, 0);
        }
    }
    for (const auto &[m, x] : target) {
        rows.emplace(m, 0);
    }
    Index r = 0;
    for (auto &[m, idx] : rows) {
        idx = r++;
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, static_cast<Index>(vs.size()));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(r);
    for (std::size_t c = 0; c < vs.size(); ++c) {
        for (const auto &[m, x] : *vs[c]) {
            a(rows[m], static_cast<Index>(c)) = x;
        }
    }
    for (const auto &[m, x] : target) {
        b(rows[m]) = x;
    }
    Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
    return std::vector<double>(sol.data(), sol.data() + sol.size());
}

struct Entry {
    DerivationPtr node;
    Coords coords;
};

DerivationPtr decompose(const std::vector<Entry> &entries, const Coords &target, int depth) {
    std::vector<std::size_t> lower, deep;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        (entries[k].node->depth < depth ? lower : deep).push_back(k);
    }
    auto gather = [&](const std::vector<std::size_t> &idx) {
        std::vector<const Coords *> out;
        for (std::size_t k : idx) {
            out.push_back(&entries[k].coords);
        }
        return out;
    };
    std::vector<std::size_t> chosen;
    bool found = false;
    if (depth == 0 || deep.empty()) {
        found = in_span(gather(lower), target);
    }
    for (std::size_t size = 1; !found && size <= deep.size(); ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t k = 0; k < size; ++k) {
            pick[k] = k;
        }
        while (true) {
            std::vector<std::size_t> trial = lower;
            for (std::size_t k : pick) {
                trial.push_back(deep[k]);
            }
            if (in_span(gather(trial), target)) {
                chosen.clear();
                for (std::size_t k : pick) {
                    chosen.push_back(deep[k]);
                }
                found = true;
                break;
            }
            // next combination in lexicographic order
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == deep.size() - size + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    if (!found) {
        return nullptr;
    }
    std::vector<std::size_t> keep = lower;
    for (std::size_t k = keep.size(); k-- > 0;) {
        std::vector<std::size_t> trial;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if (j != k) {
                trial.push_back(keep[j]);
            }
        }
        trial.insert(trial.end(), chosen.begin(), chosen.end());
        if (in_span(gather(trial), target)) {
            keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
    keep.insert(keep.end(), chosen.begin(), chosen.end());
    std::vector<double> coef = solve_coefficients(gather(keep), target);
    std::vector<std::pair<double, DerivationPtr>> terms;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (coef[k] != 0.0) {
            terms.emplace_back(coef[k], entries[keep[k]].node);
        }
    }
    return derive_sum(std::move(terms));
}

}  // namespace

Closure commutator_closure(const HermitianPolynomial &target, const PrimitiveSet &prims,
                           const ClosureOptions &options) {
    if (target.degree() > options.max_degree) {
        fail(ErrorKind::InvalidArgument, "target degree " + std::to_string(target.degree()) + " exceeds maximum " +
                                             std::to_string(options.max_degree));
    }
    Coords goal = coords_of(target);
    Closure out;
    std::vector<Entry> entries;
    Span span;
    auto publish = [&]() {
        out.nodes.clear();
        for (const auto &e : entries) {
            out.nodes.push_back({e.node, e.node->label()});
        }
    };
    auto consider = [&](DerivationPtr node) {
        if (node->generator.degree() > options.max_degree) {
            return;
        }
        Coords c = coords_of(node->generator);
        if (c.empty() || !span.add(c)) {
            return;
        }
        entries.push_back({std::move(node), std::move(c)});
    };

    if (goal.empty()) {
        publish();
        out.decomposition = derive_sum({});
        return out;
    }
    for (const auto &[id, g] : prims.all()) {
        consider(derive_primitive(prims, id));
    }
    for (int depth = 0; depth <= options.max_depth; ++depth) {
        if (depth > 0) {
            std::size_t count = entries.size();
            for (std::size_t i = 0; i < count; ++i) {
                for (std::size_t j = i + 1; j < count; ++j) {
                    if (std::max(entries[i].node->depth, entries[j].node->depth) != depth - 1) {
                        continue;
                    }
                    consider(derive_commutator(entries[i].node, entries[j].node));
                }
            }
            if (entries.size() == count) {
                out.depth_reached = depth;
                break;
            }
        }
        out.depth_reached = depth;
        if (span.contains(goal)) {
            publish();
            out.decomposition = decompose(entries, goal, depth);
            return out;
        }
    }
    publish();
    std::ostringstream msg;
    msg << "target " << target.to_string() << " not reachable within depth " << options.max_depth
        << " and degree " << options.max_degree << "; reachable basis:";
    for (const auto &n : out.nodes) {
        msg << "\n  " << n.label << " = " << n.node->generator.to_string();
    }
    throw Error(ErrorKind::ClosureExhausted, msg.str());
}

SynthesisResult synthesize(const HermitianPolynomial &target, const PrimitiveSet &prims, double t,
                           double tolerance, const SpaceSignature &space, const SynthesisOptions &options) {
    if (!(tolerance > 0.0)) {
        fail(ErrorKind::InvalidArgument, "synthesis tolerance must be positive");
    }
    Closure closure = commutator_closure(target, prims, options.closure);
    SynthesisResult result;
    for (const auto &n : closure.nodes) {
        result.closure_basis.push_back(n.label);
    }
    OperatorMatrix reference = exp_hermitian(realize(target, space), t);

    GatePlan base;
    base.recipe = closure.decomposition;
    base.target = target;
    base.style = options.style;
    FidelityReport last;
    for (std::size_t n = 1;; n *= 2) {
        GatePlan plan = trotter_repeat(base, t, static_cast<int>(n), prims, &space);
        if (plan.step_count() > options.step_budget) {
            std::ostringstream msg;
            msg << "step budget " << options.step_budget << " exhausted at " << n
                << " repetitions; best min probe fidelity " << last.min_fidelity;
            throw Error(ErrorKind::BudgetExhausted, msg.str());
        }
        FidelityReport rep = evaluate_plan(plan, prims, space, reference);
        if (rep.min_fidelity >= 1.0 - tolerance) {
            result.plan = std::move(plan);
            result.report = std::move(rep);
            return result;
        }
        last = rep;
        if (n > options.step_budget) {
            throw Error(ErrorKind::BudgetExhausted, "refinement did not converge");
        }
    }
}

}  // namespace cvmaser
