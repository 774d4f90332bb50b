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


#include "cvmaser/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "cvmaser/error.hpp"

namespace cvmaser {

namespace {

constexpr double kDropBelow = 1e-14;

void trim(Monomial &m) {
    while (!m.empty() && m.back() == 0) {
        m.pop_back();
    }
}

int exponent(const Monomial &m, std::size_t k) {
    return k < m.size() ? m[k] : 0;
}

using ComplexTerms = std::map<Monomial, Complex>;

double falling(int a, int u) {
    double r = 1.0;
    for (int k = 0; k < u; ++k) {
        r *= a - k;
    }
    return r;
}

double factorial(int n) {
    return std::tgamma(n + 1.0);
}

// Star product of two monomials:
//   Σ_{u,v} (i/4)^{|u|+|v|} Π_m (−1)^{v_m}/(u_m! v_m!) (∂x^u ∂p^v f)(∂p^u ∂x^v g)
void star_monomials(const Monomial &f, const Monomial &g, Complex scale, ComplexTerms &out) {
    std::size_t modes = (std::max(f.size(), g.size()) + 1) / 2;
    std::vector<int> u(modes, 0);
    std::vector<int> v(modes, 0);
    std::vector<int> umax(modes), vmax(modes);
    for (std::size_t m = 0; m < modes; ++m) {
        umax[m] = std::min(exponent(f, 2 * m), exponent(g, 2 * m + 1));
        vmax[m] = std::min(exponent(f, 2 * m + 1), exponent(g, 2 * m));
    }
    const Complex quarter_i(0, 0.25);
    while (true) {
        Complex c = scale;
        Monomial prod(2 * modes, 0);
        int order = 0;
        for (std::size_t m = 0; m < modes; ++m) {
            int fx = exponent(f, 2 * m), fp = exponent(f, 2 * m + 1);
            int gx = exponent(g, 2 * m), gp = exponent(g, 2 * m + 1);
            double w = falling(fx, u[m]) * falling(fp, v[m]) * falling(gp, u[m]) * falling(gx, v[m]);
            w /= factorial(u[m]) * factorial(v[m]);
            if (v[m] % 2) {
                w = -w;
            }
            c *= w;
            order += u[m] + v[m];
            prod[2 * m] = fx - u[m] + gx - v[m];
            prod[2 * m + 1] = fp - v[m] + gp - u[m];
        }
        c *= std::pow(quarter_i, order);
        trim(prod);
        out[prod] += c;

        std::size_t k = 0;
        for (; k < 2 * modes; ++k) {
            std::vector<int> &digits = (k % 2 == 0) ? u : v;
            const std::vector<int> &lim = (k % 2 == 0) ? umax : vmax;
            std::size_t m = k / 2;
            if (digits[m] < lim[m]) {
                ++digits[m];
                break;
            }
            digits[m] = 0;
        }
        if (k == 2 * modes) {
            break;
        }
    }
}

ComplexTerms star(const HermitianPolynomial &a, const HermitianPolynomial &b) {
    ComplexTerms out;
    for (const auto &[ma, ca] : a.terms()) {
        for (const auto &[mb, cb] : b.terms()) {
            star_monomials(ma, mb, Complex(ca * cb, 0), out);
        }
    }
    return out;
}

HermitianPolynomial from_real(const ComplexTerms &terms, Complex factor, const char *what) {
    HermitianPolynomial out;
    for (const auto &[m, c] : terms) {
        Complex v = factor * c;
        if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v))) {
            fail(ErrorKind::Contract, std::string(what) + " produced a non-Hermitian symbol");
        }
        out += HermitianPolynomial::monomial(m, v.real());
    }
    return out;
}

}  // namespace

void HermitianPolynomial::add_term(const Monomial &m0, double c) {
    Monomial m = m0;
    trim(m);
    double v = (terms_[m] += c);
    if (std::abs(v) < kDropBelow) {
        terms_.erase(m);
    }
}

HermitianPolynomial HermitianPolynomial::constant(double c) {
    return monomial({}, c);
}

HermitianPolynomial HermitianPolynomial::x(std::size_t mode) {
    Monomial m(2 * mode + 1, 0);
    m[2 * mode] = 1;
    return monomial(m);
}

HermitianPolynomial HermitianPolynomial::p(std::size_t mode) {
    Monomial m(2 * mode + 2, 0);
    m[2 * mode + 1] = 1;
    return monomial(m);
}

HermitianPolynomial HermitianPolynomial::monomial(Monomial m, double coefficient) {
    for (int e : m) {
        if (e < 0) {
            fail(ErrorKind::InvalidArgument, "negative exponent in monomial");
        }
    }
    HermitianPolynomial out;
    if (coefficient != 0.0) {
        out.add_term(m, coefficient);
    }
    return out;
}

HermitianPolynomial HermitianPolynomial::number(std::size_t mode) {
    Monomial x2(2 * mode + 1, 0);
    x2[2 * mode] = 2;
    Monomial p2(2 * mode + 2, 0);
    p2[2 * mode + 1] = 2;
    return monomial(x2) + monomial(p2) + constant(-0.5);
}

int HermitianPolynomial::degree() const {
    int d = 0;
    for (const auto &[m, c] : terms_) {
        int s = 0;
        for (int e : m) {
            s += e;
        }
        d = std::max(d, s);
    }
    return d;
}

std::size_t HermitianPolynomial::num_modes() const {
    std::size_t n = 0;
    for (const auto &[m, c] : terms_) {
        n = std::max(n, (m.size() + 1) / 2);
    }
    return n;
}

double HermitianPolynomial::coefficient(const Monomial &m0) const {
    Monomial m = m0;
    trim(m);
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

HermitianPolynomial HermitianPolynomial::without_constant() const {
    HermitianPolynomial out = *this;
    out.terms_.erase(Monomial{});
    return out;
}

HermitianPolynomial &HermitianPolynomial::operator+=(const HermitianPolynomial &o) {
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

HermitianPolynomial &HermitianPolynomial::operator-=(const HermitianPolynomial &o) {
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

HermitianPolynomial &HermitianPolynomial::operator*=(double c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_) {
        v *= c;
    }
    return *this;
}

HermitianPolynomial operator+(HermitianPolynomial a, const HermitianPolynomial &b) {
    a += b;
    return a;
}

HermitianPolynomial operator-(HermitianPolynomial a, const HermitianPolynomial &b) {
    a -= b;
    return a;
}

HermitianPolynomial operator*(double c, HermitianPolynomial a) {
    a *= c;
    return a;
}

HermitianPolynomial operator-(HermitianPolynomial a) {
    a *= -1.0;
    return a;
}

std::string HermitianPolynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        double mag = std::abs(c);
        if (first) {
            if (c < 0) {
                out += "-";
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string word;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) {
                continue;
            }
            if (!word.empty()) {
                word += "*";
            }
            word += (k % 2 == 0 ? "x_" : "p_") + std::to_string(k / 2);
            if (m[k] > 1) {
                word += "^" + std::to_string(m[k]);
            }
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", mag);
        if (word.empty()) {
            out += buf;
        } else if (mag == 1.0) {
            out += word;
        } else {
            out += std::string(buf) + "*" + word;
        }
    }
    return out;
}

HermitianPolynomial commutator_i(const HermitianPolynomial &a, const HermitianPolynomial &b) {
    ComplexTerms ab = star(a, b);
    ComplexTerms ba = star(b, a);
    for (const auto &[m, c] : ba) {
        ab[m] -= c;
    }
    return from_real(ab, Complex(0, 1), "commutator");
}

HermitianPolynomial jordan(const HermitianPolynomial &a, const HermitianPolynomial &b) {
    ComplexTerms ab = star(a, b);
    ComplexTerms ba = star(b, a);
    for (const auto &[m, c] : ba) {
        ab[m] += c;
    }
    return from_real(ab, Complex(0.5, 0), "symmetrized product");
}

HermitianPolynomial power(const HermitianPolynomial &a, int n) {
    if (n < 0) {
        fail(ErrorKind::InvalidArgument, "negative operator power");
    }
    HermitianPolynomial out = HermitianPolynomial::constant(1.0);
    for (int k = 0; k < n; ++k) {
        out = jordan(out, a);
    }
    return out;
}

// ---- parser ------------------------------------------------------------------

namespace {

class Parser {
   public:
    explicit Parser(std::string_view s) : s_(s) {
    }

    HermitianPolynomial parse_all() {
        HermitianPolynomial p = expr();
        skip();
        if (pos_ != s_.size()) {
            error("unexpected character '" + std::string(1, s_[pos_]) + "'");
        }
        return p;
    }

   private:
    [[noreturn]] void error(const std::string &msg) {
        fail(ErrorKind::InvalidArgument, "polynomial '" + std::string(s_) + "' at offset " + std::to_string(pos_) +
                                             ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) {
            return false;
        }
        char c = s_[pos_];
        return c == '(' || c == 'x' || c == 'p' || c == 'n' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
    }

    HermitianPolynomial expr() {
        HermitianPolynomial out = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                out += term();
            } else if (peek('-')) {
                ++pos_;
                out -= term();
            } else {
                return out;
            }
        }
    }

    int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            error("expected integer");
        }
        int v = 0;
        std::from_chars(s_.data() + start, s_.data() + pos_, v);
        return v;
    }

    int optional_power() {
        if (peek('^')) {
            ++pos_;
            return integer();
        }
        return 1;
    }

    HermitianPolynomial term() {
        double coeff = 1.0;
        while (peek('+') || peek('-')) {
            if (s_[pos_] == '-') {
                coeff = -coeff;
            }
            ++pos_;
        }
        Monomial word;
        std::vector<HermitianPolynomial> groups;
        bool any = false;
        while (true) {
            if (any && peek('*')) {
                ++pos_;
            } else if (!starts_factor()) {
                break;
            }
            if (!starts_factor()) {
                error("expected factor");
            }
            any = true;
            char c = s_[pos_];
            if (c == '(') {
                ++pos_;
                HermitianPolynomial inner = expr();
                if (!peek(')')) {
                    error("expected ')'");
                }
                ++pos_;
                groups.push_back(power(inner, optional_power()));
            } else if (c == 'x' || c == 'p' || c == 'n') {
                ++pos_;
                if (peek('_')) {
                    ++pos_;
                }
                std::size_t mode = 0;
                skip();
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    mode = static_cast<std::size_t>(integer());
                }
                int e = optional_power();
                if (c == 'n') {
                    groups.push_back(power(HermitianPolynomial::number(mode), e));
                } else {
                    std::size_t k = 2 * mode + (c == 'p' ? 1 : 0);
                    if (word.size() <= k) {
                        word.resize(k + 1, 0);
                    }
                    word[k] += e;
                }
            } else {
                skip();
                const char *b = s_.data() + pos_;
                char *end = nullptr;
                std::string tail(b, s_.size() - pos_);
                double v = std::strtod(tail.c_str(), &end);
                if (end == tail.c_str()) {
                    error("expected number");
                }
                pos_ += static_cast<std::size_t>(end - tail.c_str());
                int e = optional_power();
                coeff *= std::pow(v, e);
            }
        }
        if (!any) {
            error("expected term");
        }
        HermitianPolynomial out = HermitianPolynomial::monomial(word, 1.0);
        for (const auto &g : groups) {
            out = jordan(out, g);
        }
        return coeff * out;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

HermitianPolynomial parse_polynomial(std::string_view text) {
    return Parser(text).parse_all();
}

// ---- realization -------------------------------------------------------------

Matrix weyl_monomial_local(int a, int b, int cutoff) {
    int padded = cutoff + a + b;
    Matrix x = local_x(padded);
    Matrix p = local_p(padded);
    Matrix pb = Matrix::Identity(padded, padded);
    for (int k = 0; k < b; ++k) {
        pb = (pb * p).eval();
    }
    std::vector<Matrix> xpow(static_cast<std::size_t>(a + 1));
    xpow[0] = Matrix::Identity(padded, padded);
    for (int k = 1; k <= a; ++k) {
        xpow[static_cast<std::size_t>(k)] = xpow[static_cast<std::size_t>(k - 1)] * x;
    }
    Matrix sum = Matrix::Zero(padded, padded);
    double binom = 1.0;
    for (int k = 0; k <= a; ++k) {
        sum += binom * (xpow[static_cast<std::size_t>(a - k)] * pb * xpow[static_cast<std::size_t>(k)]);
        binom = binom * (a - k) / (k + 1);
    }
    sum *= std::ldexp(1.0, -a);
    Matrix out = sum.topLeftCorner(cutoff, cutoff);
    return 0.5 * (out + out.adjoint());
}

OperatorMatrix realize(const HermitianPolynomial &poly, const SpaceSignature &space) {
    std::size_t modes = poly.num_modes();
    for (std::size_t k = 0; k < modes; ++k) {
        if (k >= space.num_factors() || !space.factor(k).is_mode()) {
            bool used = false;
            for (const auto &[m, c] : poly.terms()) {
                used = used || exponent(m, 2 * k) > 0 || exponent(m, 2 * k + 1) > 0;
            }
            if (used) {
                fail(ErrorKind::InvalidArgument, "polynomial references mode " + std::to_string(k) +
                                                     " which is not a mode of " + space.describe());
            }
        }
    }
    Index dim = space.dim();
    Matrix total = Matrix::Zero(dim, dim);
    for (const auto &[m, c] : poly.terms()) {
        Matrix term = Matrix::Identity(dim, dim);
        bool first = true;
        for (std::size_t k = 0; k < modes; ++k) {
            int a = exponent(m, 2 * k);
            int b = exponent(m, 2 * k + 1);
            if (a == 0 && b == 0) {
                continue;
            }
            Matrix local = embed(weyl_monomial_local(a, b, space.cutoff(k)), space, k);
            term = first ? local : (term * local).eval();
            first = false;
        }
        total += c * term;
    }
    total = 0.5 * (total + total.adjoint()).eval();
    return OperatorMatrix::hermitian(space, std::move(total));
}

}  // namespace cvmaser
