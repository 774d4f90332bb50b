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

#ifndef CVMASER_FOCK_HPP
#define CVMASER_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cvmaser {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

namespace tolerance {
inline constexpr double kNormalized = 1e-10;
inline constexpr double kStateNorm = 1e-12;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-8;
inline constexpr double kDensityTrace = 1e-10;
inline constexpr double kDensityEigen = 1e-9;
}  // namespace tolerance

enum class FactorKind { Mode, Atom };

/// One tensor factor: a truncated bosonic mode (photon numbers 0..cutoff-1)
/// or an atom with 2 or 3 levels.
struct Factor {
    FactorKind kind;
    int dim;

    static Factor mode(int cutoff);
    static Factor atom(int levels);

    bool is_mode() const {
        return kind == FactorKind::Mode;
    }
    bool operator==(const Factor &) const = default;
};

/// Ordered tensor-product structure of a Hilbert space. The first factor is
/// the most significant digit of the joint basis index.
class SpaceSignature {
   public:
    explicit SpaceSignature(std::vector<Factor> factors);

    /// Convenience: a space made only of modes with the given cutoffs.
    static SpaceSignature modes(std::vector<int> cutoffs);

    const std::vector<Factor> &factors() const {
        return factors_;
    }
    std::size_t num_factors() const {
        return factors_.size();
    }
    const Factor &factor(std::size_t k) const;
    Index dim() const {
        return dim_;
    }
    Index stride(std::size_t k) const {
        return strides_.at(k);
    }

    /// Cutoff of factor k, which must be a mode.
    int cutoff(std::size_t k) const;
    void require_mode(std::size_t k) const;

    /// Digit of factor k in the joint basis index.
    int digit(Index joint, std::size_t k) const {
        return static_cast<int>((joint / strides_[k]) % factors_[k].dim);
    }
    Index joint_index(std::span<const int> digits) const;

    SpaceSignature subspace(std::span<const std::size_t> keep) const;
    std::string describe() const;

    bool operator==(const SpaceSignature &other) const {
        return factors_ == other.factors_;
    }

   private:
    std::vector<Factor> factors_;
    std::vector<Index> strides_;
    Index dim_ = 1;
};

SpaceSignature tensor(const SpaceSignature &a, const SpaceSignature &b);
void require_same_space(const SpaceSignature &a, const SpaceSignature &b, const char *what);

/// Pure state. The squared norm may fall below one when a truncated series
/// was not renormalized; the deficit is the leakage out of the space.
class StateVector {
   public:
    StateVector(SpaceSignature space, Vector amplitudes);

    const SpaceSignature &space() const {
        return space_;
    }
    const Vector &amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(std::span<const int> digits) const;

    double norm_squared() const {
        return amplitudes_.squaredNorm();
    }
    bool is_normalized() const;
    StateVector normalized() const;

    /// Probability carried by the top Fock level of the given mode.
    double top_level_population(std::size_t mode) const;

   private:
    SpaceSignature space_;
    Vector amplitudes_;
};

class DensityOperator {
   public:
    DensityOperator(SpaceSignature space, Matrix matrix);
    static DensityOperator from_pure(const StateVector &psi);

    const SpaceSignature &space() const {
        return space_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    double trace() const;
    double purity() const;
    double top_level_population(std::size_t mode) const;
    Vector eigenvalues() const;

   private:
    SpaceSignature space_;
    Matrix matrix_;
};

enum class OperatorTag : unsigned { None = 0, Hermitian = 1, Unitary = 2 };

class OperatorMatrix {
   public:
    /// Untagged operator.
    OperatorMatrix(SpaceSignature space, Matrix matrix);

    /// Tagged constructors verify the tag and throw ErrorKind::Contract.
    static OperatorMatrix hermitian(SpaceSignature space, Matrix matrix);
    static OperatorMatrix unitary(SpaceSignature space, Matrix matrix);

    const SpaceSignature &space() const {
        return space_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    bool is_tagged_hermitian() const {
        return (tags_ & static_cast<unsigned>(OperatorTag::Hermitian)) != 0;
    }
    bool is_tagged_unitary() const {
        return (tags_ & static_cast<unsigned>(OperatorTag::Unitary)) != 0;
    }

    OperatorMatrix adjoint() const;

   private:
    SpaceSignature space_;
    Matrix matrix_;
    unsigned tags_ = 0;
};

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b);
OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b);
OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b);
OperatorMatrix operator*(Complex c, const OperatorMatrix &a);

double hermiticity_defect(const Matrix &m);
double unitarity_defect(const Matrix &m);
double max_abs(const Matrix &m);

// ---- states --------------------------------------------------------------

StateVector make_vacuum(const SpaceSignature &space);
StateVector make_fock(const SpaceSignature &space, std::size_t mode, int n);

/// Truncated coherent-state series e^{-|α|²/2} Σ αⁿ/√n! |n⟩ on one mode,
/// vacuum elsewhere. Not renormalized unless asked; the missing weight is
/// coherent_truncation_leakage(alpha, cutoff).
StateVector make_coherent(const SpaceSignature &space, std::size_t mode, Complex alpha,
                          bool normalize = false);

/// 1 − Σ_{n<cutoff} e^{-|α|²}|α|^{2n}/n!.
double coherent_truncation_leakage(Complex alpha, int cutoff);

/// Amplitudes e^{-|α|²/2} αⁿ/√n! for n < count.
Vector coherent_amplitudes(Complex alpha, int count);

// ---- operators -----------------------------------------------------------

struct LadderPair {
    OperatorMatrix a;
    OperatorMatrix a_dagger;
};

struct QuadraturePair {
    OperatorMatrix x;
    OperatorMatrix p;
};

/// Lift an operator on factor k alone to the full space.
Matrix embed(const Matrix &local, const SpaceSignature &space, std::size_t k);

OperatorMatrix identity_op(const SpaceSignature &space);
LadderPair ladder_ops(const SpaceSignature &space, std::size_t mode);
OperatorMatrix number_op(const SpaceSignature &space, std::size_t mode);

/// Rotated quadratures x̂^(θ) = x̂cosθ + p̂sinθ, p̂^(θ) = −x̂sinθ + p̂cosθ
/// with x̂ = (â+â†)/2 and p̂ = (â−â†)/(2i), so [x̂, p̂] = i/2.
QuadraturePair quadrature_ops(const SpaceSignature &space, std::size_t mode, double theta = 0.0);

/// Single-factor matrices (no embedding).
Matrix local_annihilation(int cutoff);
Matrix local_x(int cutoff);
Matrix local_p(int cutoff);

/// Spectral form of a Hermitian generator; evaluates e^{-iHt} for many t
/// from one eigendecomposition.
class SpectralGenerator {
   public:
    explicit SpectralGenerator(const OperatorMatrix &hermitian);

    const SpaceSignature &space() const {
        return space_;
    }
    const Eigen::VectorXd &eigenvalues() const {
        return eigenvalues_;
    }
    const Matrix &eigenvectors() const {
        return eigenvectors_;
    }
    Matrix evolution_matrix(double t) const;
    OperatorMatrix evolution(double t) const;

   private:
    SpaceSignature space_;
    Eigen::VectorXd eigenvalues_;
    Matrix eigenvectors_;
};

/// U = e^{-iHt} by spectral decomposition of H.
OperatorMatrix exp_hermitian(const OperatorMatrix &h, double t);

StateVector apply(const OperatorMatrix &u, const StateVector &psi);
DensityOperator apply_to_density(const OperatorMatrix &u, const DensityOperator &rho);

Complex expectation(const OperatorMatrix &o, const StateVector &psi);
Complex expectation(const OperatorMatrix &o, const DensityOperator &rho);
double variance(const OperatorMatrix &o, const StateVector &psi);
double variance(const OperatorMatrix &o, const DensityOperator &rho);

DensityOperator partial_trace(const DensityOperator &rho, std::vector<std::size_t> keep);

StateVector tensor(const StateVector &a, const StateVector &b);
OperatorMatrix tensor(const OperatorMatrix &a, const OperatorMatrix &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);

/// |⟨a|b⟩|² for normalized inputs; insensitive to global phase.
double fidelity(const StateVector &a, const StateVector &b);

/// Boolean mask over the joint basis selecting indices whose mode digits are
/// all below cutoff − margin (atom digits unrestricted).
std::vector<Index> low_fock_indices(const SpaceSignature &space, int margin);

/// Max-norm of the restriction of m to the given basis indices.
double restricted_max_abs(const Matrix &m, std::span<const Index> indices);

}  // namespace cvmaser

#endif
