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


#include "cvmaser/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cvmaser/error.hpp"

namespace cvmaser {

Factor Factor::mode(int cutoff) {
    if (cutoff < 2) {
        fail(ErrorKind::InvalidArgument, "mode cutoff must be at least 2, got " + std::to_string(cutoff));
    }
    return Factor{FactorKind::Mode, cutoff};
}

Factor Factor::atom(int levels) {
    if (levels != 2 && levels != 3) {
        fail(ErrorKind::InvalidArgument, "atom must have 2 or 3 levels, got " + std::to_string(levels));
    }
    return Factor{FactorKind::Atom, levels};
}

SpaceSignature::SpaceSignature(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        fail(ErrorKind::InvalidArgument, "space signature needs at least one factor");
    }
    strides_.assign(factors_.size(), 1);
    dim_ = 1;
    for (std::size_t k = factors_.size(); k-- > 0;) {
        const Factor &f = factors_[k];
        if ((f.kind == FactorKind::Mode && f.dim < 2) || (f.kind == FactorKind::Atom && f.dim != 2 && f.dim != 3)) {
            fail(ErrorKind::InvalidArgument, "invalid factor dimension " + std::to_string(f.dim));
        }
        strides_[k] = dim_;
        dim_ *= f.dim;
    }
}

SpaceSignature SpaceSignature::modes(std::vector<int> cutoffs) {
    std::vector<Factor> fs;
    fs.reserve(cutoffs.size());
    for (int c : cutoffs) {
        fs.push_back(Factor::mode(c));
    }
    return SpaceSignature(std::move(fs));
}

const Factor &SpaceSignature::factor(std::size_t k) const {
    if (k >= factors_.size()) {
        fail(ErrorKind::Dimension, "factor index " + std::to_string(k) + " out of range for " + describe());
    }
    return factors_[k];
}

void SpaceSignature::require_mode(std::size_t k) const {
    if (!factor(k).is_mode()) {
        fail(ErrorKind::InvalidArgument, "factor " + std::to_string(k) + " of " + describe() + " is not a mode");
    }
}

int SpaceSignature::cutoff(std::size_t k) const {
    require_mode(k);
    return factors_[k].dim;
}

Index SpaceSignature::joint_index(std::span<const int> digits) const {
    if (digits.size() != factors_.size()) {
        fail(ErrorKind::Dimension, "digit count does not match " + describe());
    }
    Index j = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= factors_[k].dim) {
            fail(ErrorKind::Dimension, "level " + std::to_string(digits[k]) + " outside factor " + std::to_string(k) +
                                           " of " + describe());
        }
        j += digits[k] * strides_[k];
    }
    return j;
}

SpaceSignature SpaceSignature::subspace(std::span<const std::size_t> keep) const {
    std::vector<Factor> fs;
    for (std::size_t k : keep) {
        fs.push_back(factor(k));
    }
    return SpaceSignature(std::move(fs));
}

std::string SpaceSignature::describe() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (k) {
            out << ", ";
        }
        out << (factors_[k].is_mode() ? "Mode(" : "Atom(") << factors_[k].dim << ")";
    }
    out << "]";
    return out.str();
}

SpaceSignature tensor(const SpaceSignature &a, const SpaceSignature &b) {
    std::vector<Factor> fs = a.factors();
    fs.insert(fs.end(), b.factors().begin(), b.factors().end());
    return SpaceSignature(std::move(fs));
}

void require_same_space(const SpaceSignature &a, const SpaceSignature &b, const char *what) {
    if (!(a == b)) {
        fail(ErrorKind::SpaceMismatch, std::string(what) + ": " + a.describe() + " vs " + b.describe());
    }
}

// ---- StateVector -------------------------------------------------------------

StateVector::StateVector(SpaceSignature space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.dim()) {
        fail(ErrorKind::Dimension, "amplitude vector length " + std::to_string(amplitudes_.size()) +
                                       " does not match " + space_.describe());
    }
    double n2 = amplitudes_.squaredNorm();
    if (!(n2 > 0.0) || n2 > 1.0 + tolerance::kStateNorm) {
        fail(ErrorKind::Contract, "state squared norm " + std::to_string(n2) + " outside (0, 1]");
    }
}

Complex StateVector::amplitude(std::span<const int> digits) const {
    return amplitudes_(space_.joint_index(digits));
}

bool StateVector::is_normalized() const {
    return std::abs(norm_squared() - 1.0) <= tolerance::kNormalized;
}

StateVector StateVector::normalized() const {
    return StateVector(space_, amplitudes_ / amplitudes_.norm());
}

double StateVector::top_level_population(std::size_t mode) const {
    int top = space_.cutoff(mode) - 1;
    double total = 0;
    for (Index j = 0; j < space_.dim(); ++j) {
        if (space_.digit(j, mode) == top) {
            total += std::norm(amplitudes_(j));
        }
    }
    return total;
}

// ---- DensityOperator ---------------------------------------------------------

DensityOperator::DensityOperator(SpaceSignature space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
        fail(ErrorKind::Dimension, "density matrix shape does not match " + space_.describe());
    }
    if (hermiticity_defect(matrix_) > tolerance::kHermitian) {
        fail(ErrorKind::Contract, "density matrix is not Hermitian");
    }
    double tr = trace();
    if (!(tr > 0.0) || tr > 1.0 + tolerance::kDensityTrace) {
        fail(ErrorKind::Contract, "density trace " + std::to_string(tr) + " outside (0, 1]");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix_, Eigen::EigenvaluesOnly);
    double lowest = eig.eigenvalues().minCoeff();
    if (lowest < -tolerance::kDensityEigen) {
        fail(ErrorKind::Contract, "density matrix has eigenvalue " + std::to_string(lowest));
    }
}

DensityOperator DensityOperator::from_pure(const StateVector &psi) {
    const Vector &v = psi.amplitudes();
    return DensityOperator(psi.space(), v * v.adjoint());
}

double DensityOperator::trace() const {
    return matrix_.trace().real();
}

double DensityOperator::purity() const {
    // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ.
    return matrix_.squaredNorm();
}

double DensityOperator::top_level_population(std::size_t mode) const {
    int top = space_.cutoff(mode) - 1;
    double total = 0;
    for (Index j = 0; j < space_.dim(); ++j) {
        if (space_.digit(j, mode) == top) {
            total += matrix_(j, j).real();
        }
    }
    return total;
}

Vector DensityOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cast<Complex>();
}

// ---- OperatorMatrix ----------------------------------------------------------

double max_abs(const Matrix &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

double hermiticity_defect(const Matrix &m) {
    return max_abs(m - m.adjoint());
}

double unitarity_defect(const Matrix &m) {
    return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()));
}

OperatorMatrix::OperatorMatrix(SpaceSignature space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
        fail(ErrorKind::Dimension, "operator shape " + std::to_string(matrix_.rows()) + "x" +
                                       std::to_string(matrix_.cols()) + " does not match " + space_.describe());
    }
}

OperatorMatrix OperatorMatrix::hermitian(SpaceSignature space, Matrix matrix) {
    OperatorMatrix op(std::move(space), std::move(matrix));
    double defect = hermiticity_defect(op.matrix_);
    if (defect > tolerance::kHermitian) {
        fail(ErrorKind::Contract, "operator tagged Hermitian has defect " + std::to_string(defect));
    }
    op.tags_ |= static_cast<unsigned>(OperatorTag::Hermitian);
    return op;
}

OperatorMatrix OperatorMatrix::unitary(SpaceSignature space, Matrix matrix) {
    OperatorMatrix op(std::move(space), std::move(matrix));
    double defect = unitarity_defect(op.matrix_);
    if (defect > tolerance::kUnitary) {
        fail(ErrorKind::Contract, "operator tagged unitary has defect " + std::to_string(defect));
    }
    op.tags_ |= static_cast<unsigned>(OperatorTag::Unitary);
    return op;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix op(space_, matrix_.adjoint());
    op.tags_ = tags_;
    return op;
}

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_space(a.space(), b.space(), "operator product");
    return OperatorMatrix(a.space(), a.matrix() * b.matrix());
}

OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_space(a.space(), b.space(), "operator sum");
    return OperatorMatrix(a.space(), a.matrix() + b.matrix());
}

OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_space(a.space(), b.space(), "operator difference");
    return OperatorMatrix(a.space(), a.matrix() - b.matrix());
}

OperatorMatrix operator*(Complex c, const OperatorMatrix &a) {
    return OperatorMatrix(a.space(), c * a.matrix());
}

// ---- states ------------------------------------------------------------------

StateVector make_vacuum(const SpaceSignature &space) {
    Vector v = Vector::Zero(space.dim());
    v(0) = 1.0;
    return StateVector(space, std::move(v));
}

StateVector make_fock(const SpaceSignature &space, std::size_t mode, int n) {
    int d = space.cutoff(mode);
    if (n < 0 || n >= d) {
        fail(ErrorKind::Dimension, "Fock level " + std::to_string(n) + " not below cutoff " + std::to_string(d));
    }
    Vector v = Vector::Zero(space.dim());
    v(n * space.stride(mode)) = 1.0;
    return StateVector(space, std::move(v));
}

Vector coherent_amplitudes(Complex alpha, int count) {
    Vector c(count);
    if (count == 0) {
        return c;
    }
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < count; ++n) {
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return c;
}

double coherent_truncation_leakage(Complex alpha, int cutoff) {
    // Sum the Poisson tail directly so small leakages keep relative accuracy.
    double m = std::norm(alpha);
    if (m == 0.0) {
        return 0.0;
    }
    double log_term = -m + cutoff * std::log(m) - std::lgamma(cutoff + 1.0);
    double term = std::exp(log_term);
    double tail = 0.0;
    for (int n = cutoff; n < cutoff + 100000; ++n) {
        tail += term;
        term *= m / (n + 1);
        if (n > m && term < 1e-18 * tail) {
            break;
        }
    }
    return tail;
}

StateVector make_coherent(const SpaceSignature &space, std::size_t mode, Complex alpha, bool normalize) {
    int d = space.cutoff(mode);
    Vector c = coherent_amplitudes(alpha, d);
    if (normalize) {
        c /= c.norm();
    }
    Vector v = Vector::Zero(space.dim());
    for (int n = 0; n < d; ++n) {
        v(n * space.stride(mode)) = c(n);
    }
    return StateVector(space, std::move(v));
}

// ---- operators ---------------------------------------------------------------

Matrix embed(const Matrix &local, const SpaceSignature &space, std::size_t k) {
    const Factor &f = space.factor(k);
    if (local.rows() != f.dim || local.cols() != f.dim) {
        fail(ErrorKind::Dimension, "local operator does not match factor " + std::to_string(k));
    }
    Index stride = space.stride(k);
    Index outer = space.dim() / (stride * f.dim);
    Matrix out = Matrix::Zero(space.dim(), space.dim());
    for (Index o = 0; o < outer; ++o) {
        Index base = o * stride * f.dim;
        for (int r = 0; r < f.dim; ++r) {
            for (int c = 0; c < f.dim; ++c) {
                Complex v = local(r, c);
                if (v == Complex(0)) {
                    continue;
                }
                for (Index s = 0; s < stride; ++s) {
                    out(base + r * stride + s, base + c * stride + s) = v;
                }
            }
        }
    }
    return out;
}

Matrix local_annihilation(int cutoff) {
    Matrix a = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix local_x(int cutoff) {
    Matrix a = local_annihilation(cutoff);
    return 0.5 * (a + a.adjoint());
}

Matrix local_p(int cutoff) {
    Matrix a = local_annihilation(cutoff);
    return Complex(0, -0.5) * (a - a.adjoint());
}

OperatorMatrix identity_op(const SpaceSignature &space) {
    return OperatorMatrix::unitary(space, Matrix::Identity(space.dim(), space.dim()));
}

LadderPair ladder_ops(const SpaceSignature &space, std::size_t mode) {
    Matrix a = embed(local_annihilation(space.cutoff(mode)), space, mode);
    Matrix ad = a.adjoint();
    return LadderPair{OperatorMatrix(space, std::move(a)), OperatorMatrix(space, std::move(ad))};
}

OperatorMatrix number_op(const SpaceSignature &space, std::size_t mode) {
    int d = space.cutoff(mode);
    Matrix n = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        n(k, k) = k;
    }
    return OperatorMatrix::hermitian(space, embed(n, space, mode));
}

QuadraturePair quadrature_ops(const SpaceSignature &space, std::size_t mode, double theta) {
    int d = space.cutoff(mode);
    Matrix x = local_x(d);
    Matrix p = local_p(d);
    double c = std::cos(theta);
    double s = std::sin(theta);
    Matrix xt = c * x + s * p;
    Matrix pt = -s * x + c * p;
    return QuadraturePair{OperatorMatrix::hermitian(space, embed(xt, space, mode)),
                          OperatorMatrix::hermitian(space, embed(pt, space, mode))};
}

SpectralGenerator::SpectralGenerator(const OperatorMatrix &h) : space_(h.space()) {
    double defect = hermiticity_defect(h.matrix());
    if (defect > tolerance::kHermitian) {
        fail(ErrorKind::Contract, "generator is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) {
        fail(ErrorKind::Singular, "eigen-decomposition of generator failed");
    }
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
}

Matrix SpectralGenerator::evolution_matrix(double t) const {
    Vector phases(eigenvalues_.size());
    for (Index k = 0; k < eigenvalues_.size(); ++k) {
        phases(k) = std::polar(1.0, -eigenvalues_(k) * t);
    }
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

OperatorMatrix SpectralGenerator::evolution(double t) const {
    return OperatorMatrix::unitary(space_, evolution_matrix(t));
}

OperatorMatrix exp_hermitian(const OperatorMatrix &h, double t) {
    return SpectralGenerator(h).evolution(t);
}

StateVector apply(const OperatorMatrix &u, const StateVector &psi) {
    require_same_space(u.space(), psi.space(), "apply");
    Vector out = u.matrix() * psi.amplitudes();
    if (u.is_tagged_unitary()) {
        // Clamp round-off above unit norm so the result stays a valid state.
        double n2 = out.squaredNorm();
        if (n2 > 1.0) {
            out /= std::sqrt(n2);
        }
    }
    return StateVector(psi.space(), std::move(out));
}

DensityOperator apply_to_density(const OperatorMatrix &u, const DensityOperator &rho) {
    require_same_space(u.space(), rho.space(), "apply_to_density");
    Matrix m = u.matrix() * rho.matrix() * u.matrix().adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    double tr = m.trace().real();
    if (u.is_tagged_unitary() && tr > 1.0) {
        m /= tr;
    }
    return DensityOperator(rho.space(), std::move(m));
}

Complex expectation(const OperatorMatrix &o, const StateVector &psi) {
    require_same_space(o.space(), psi.space(), "expectation");
    return psi.amplitudes().dot(o.matrix() * psi.amplitudes());
}

Complex expectation(const OperatorMatrix &o, const DensityOperator &rho) {
    require_same_space(o.space(), rho.space(), "expectation");
    // tr(ρO) = Σ_ij ρ_ij O_ji
    return rho.matrix().cwiseProduct(o.matrix().transpose()).sum();
}

double variance(const OperatorMatrix &o, const StateVector &psi) {
    require_same_space(o.space(), psi.space(), "variance");
    Vector ov = o.matrix() * psi.amplitudes();
    double m = psi.amplitudes().dot(ov).real();
    return ov.squaredNorm() - m * m;
}

double variance(const OperatorMatrix &o, const DensityOperator &rho) {
    require_same_space(o.space(), rho.space(), "variance");
    double m = expectation(o, rho).real();
    Matrix o2 = o.matrix() * o.matrix();
    double m2 = rho.matrix().cwiseProduct(o2.transpose()).sum().real();
    return m2 - m * m;
}

DensityOperator partial_trace(const DensityOperator &rho, std::vector<std::size_t> keep) {
    const SpaceSignature &space = rho.space();
    if (keep.empty()) {
        fail(ErrorKind::InvalidArgument, "partial_trace: keep list is empty");
    }
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        fail(ErrorKind::InvalidArgument, "partial_trace: duplicate subsystem index");
    }
    if (keep.back() >= space.num_factors()) {
        fail(ErrorKind::InvalidArgument, "partial_trace: subsystem index " + std::to_string(keep.back()) +
                                             " out of range for " + space.describe());
    }
    if (keep.size() == space.num_factors()) {
        return rho;
    }
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < space.num_factors(); ++k) {
        if (!std::binary_search(keep.begin(), keep.end(), k)) {
            traced.push_back(k);
        }
    }
    SpaceSignature kept_space = space.subspace(keep);
    SpaceSignature traced_space = space.subspace(traced);
    Index dk = kept_space.dim();
    Index dt = traced_space.dim();

    // joint[a * dt + t] = full index with kept digits of a and traced digits of t.
    std::vector<Index> joint(static_cast<std::size_t>(dk * dt));
    for (Index a = 0; a < dk; ++a) {
        Index base = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            base += kept_space.digit(a, i) * space.stride(keep[i]);
        }
        for (Index t = 0; t < dt; ++t) {
            Index off = 0;
            for (std::size_t i = 0; i < traced.size(); ++i) {
                off += traced_space.digit(t, i) * space.stride(traced[i]);
            }
            joint[static_cast<std::size_t>(a * dt + t)] = base + off;
        }
    }
    const Matrix &m = rho.matrix();
    Matrix out = Matrix::Zero(dk, dk);
    for (Index a = 0; a < dk; ++a) {
        for (Index b = 0; b < dk; ++b) {
            Complex s = 0;
            for (Index t = 0; t < dt; ++t) {
                s += m(joint[a * dt + t], joint[b * dt + t]);
            }
            out(a, b) = s;
        }
    }
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityOperator(std::move(kept_space), std::move(out));
}

namespace {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

StateVector tensor(const StateVector &a, const StateVector &b) {
    const Vector &va = a.amplitudes();
    const Vector &vb = b.amplitudes();
    Vector out(va.size() * vb.size());
    for (Index i = 0; i < va.size(); ++i) {
        out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    }
    return StateVector(tensor(a.space(), b.space()), std::move(out));
}

OperatorMatrix tensor(const OperatorMatrix &a, const OperatorMatrix &b) {
    return OperatorMatrix(tensor(a.space(), b.space()), kron(a.matrix(), b.matrix()));
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    return DensityOperator(tensor(a.space(), b.space()), kron(a.matrix(), b.matrix()));
}

double fidelity(const StateVector &a, const StateVector &b) {
    require_same_space(a.space(), b.space(), "fidelity");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

std::vector<Index> low_fock_indices(const SpaceSignature &space, int margin) {
    std::vector<Index> out;
    for (Index j = 0; j < space.dim(); ++j) {
        bool ok = true;
        for (std::size_t k = 0; k < space.num_factors() && ok; ++k) {
            const Factor &f = space.factors()[k];
            if (f.is_mode() && space.digit(j, k) >= f.dim - margin) {
                ok = false;
            }
        }
        if (ok) {
            out.push_back(j);
        }
    }
    return out;
}

double restricted_max_abs(const Matrix &m, std::span<const Index> indices) {
    double best = 0;
    for (Index r : indices) {
        for (Index c : indices) {
            best = std::max(best, std::abs(m(r, c)));
        }
    }
    return best;
}

}  // namespace cvmaser
