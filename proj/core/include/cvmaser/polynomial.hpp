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

#ifndef CVMASER_POLYNOMIAL_HPP
#define CVMASER_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cvmaser/fock.hpp"

namespace cvmaser {

inline constexpr int kDefaultMaxDegree = 6;

/// Exponent vector (x₀, p₀, x₁, p₁, …) with trailing zeros trimmed.
using Monomial = std::vector<int>;

/// Real polynomial in the Weyl symbols of the quadratures. A monomial
/// x^a p^b stands for its symmetrized operator, so every polynomial realizes
/// a Hermitian matrix. Products of symbols follow the Moyal star product
/// with [x_k, p_k] = i/2.
class HermitianPolynomial {
   public:
    HermitianPolynomial() = default;

    static HermitianPolynomial constant(double c);
    static HermitianPolynomial x(std::size_t mode);
    static HermitianPolynomial p(std::size_t mode);
    static HermitianPolynomial monomial(Monomial m, double coefficient = 1.0);
    /// Symbol of N̂ = â†â, i.e. x² + p² − 1/2.
    static HermitianPolynomial number(std::size_t mode);

    const std::map<Monomial, double> &terms() const {
        return terms_;
    }
    bool is_zero() const {
        return terms_.empty();
    }
    int degree() const;
    /// Number of modes referenced (highest mode index + 1).
    std::size_t num_modes() const;
    double coefficient(const Monomial &m) const;
    /// Same polynomial without its constant term.
    HermitianPolynomial without_constant() const;

    HermitianPolynomial &operator+=(const HermitianPolynomial &o);
    HermitianPolynomial &operator-=(const HermitianPolynomial &o);
    HermitianPolynomial &operator*=(double c);

    /// Canonical text form, parseable by parse_polynomial.
    std::string to_string() const;

    bool operator==(const HermitianPolynomial &o) const = default;
    auto operator<=>(const HermitianPolynomial &o) const = default;

   private:
    void add_term(const Monomial &m, double c);
    std::map<Monomial, double> terms_;
};

HermitianPolynomial operator+(HermitianPolynomial a, const HermitianPolynomial &b);
HermitianPolynomial operator-(HermitianPolynomial a, const HermitianPolynomial &b);
HermitianPolynomial operator*(double c, HermitianPolynomial a);
HermitianPolynomial operator-(HermitianPolynomial a);

/// Symbol of i[Â, B̂].
HermitianPolynomial commutator_i(const HermitianPolynomial &a, const HermitianPolynomial &b);

/// Symbol of (ÂB̂ + B̂Â)/2.
HermitianPolynomial jordan(const HermitianPolynomial &a, const HermitianPolynomial &b);

/// Operator power Âⁿ (n ≥ 0).
HermitianPolynomial power(const HermitianPolynomial &a, int n);

/// Parses expressions such as "x_0^3", "0.5*x0*p0", "(x_0^2 + p_0^2)^2",
/// "n_1 - 2*p_1". A run of x/p symbols denotes the symmetrized monomial;
/// parenthesized groups and n_k multiply by symmetrized operator product.
HermitianPolynomial parse_polynomial(std::string_view text);

/// Hermitian matrix of the polynomial on the given space. Mode k of the
/// polynomial acts on factor k, which must be a mode.
OperatorMatrix realize(const HermitianPolynomial &poly, const SpaceSignature &space);

/// Matrix of the symmetrized monomial on one truncated mode (exact
/// projection of the untruncated operator).
Matrix weyl_monomial_local(int x_power, int p_power, int cutoff);

}  // namespace cvmaser

#endif
