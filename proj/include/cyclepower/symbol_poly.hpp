#pragma once

/**
 * @file symbol_poly.hpp
 * @brief Integer polynomials for the Laplacian symbol of C_N^k.
 *
 * Substituting x = z + 1/z turns 2k - sum_{r<=k} (z^r + z^-r) into a degree-k
 * polynomial Phi_k(x) with integer coefficients. It vanishes at x = 2, and the
 * cofactor Psi_k(x) = Phi_k(x) / (2 - x) carries every correction term of the
 * hitting-time formula.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/numeric.hpp"

namespace cyclepower {

/// Polynomial with big-integer coefficients, constant term first.
/// The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long long> coeffs) {
        for (long long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    static IntPolynomial constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }
    static IntPolynomial x() { return IntPolynomial{0, 1}; }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }

    BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    const BigInt& leading() const {
        if (coeffs_.empty()) throw ParameterError("zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    IntPolynomial& operator+=(const IntPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    IntPolynomial& operator-=(const IntPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPolynomial(std::move(out));
    }
    friend IntPolynomial operator*(const BigInt& s, IntPolynomial p) {
        for (auto& c : p.coeffs_) c *= s;
        p.trim();
        return p;
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const BigInt& c = coeffs_[i];
            if (c == 0) continue;
            BigInt mag = boost::multiprecision::abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (mag != 1 || i == 0) os << mag;
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<BigInt> coeffs_;
};

/// Quotient of an exact division num / den. Requires every leading-coefficient
/// division to be exact and the remainder to vanish; otherwise throws
/// ConsistencyError.
inline IntPolynomial divide_exact(const IntPolynomial& num, const IntPolynomial& den) {
    if (den.is_zero()) throw ParameterError("division by the zero polynomial");
    if (num.degree() < den.degree()) {
        if (num.is_zero()) return {};
        throw ConsistencyError("divide_exact: nonzero remainder " + num.to_string());
    }
    std::vector<BigInt> rem = num.coefficients();
    const auto& d = den.coefficients();
    const std::size_t dn = d.size();
    std::vector<BigInt> quot(rem.size() - dn + 1);
    for (std::size_t i = quot.size(); i-- > 0;) {
        const BigInt& top = rem[i + dn - 1];
        if (top % d.back() != 0) throw ConsistencyError("divide_exact: non-integral quotient coefficient");
        quot[i] = top / d.back();
        for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= quot[i] * d[j];
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& c) { return c != 0; })) {
        throw ConsistencyError("divide_exact: nonzero remainder " + IntPolynomial(rem).to_string());
    }
    return IntPolynomial(std::move(quot));
}

/// P_r(x) = z^r + z^-r written in x = z + 1/z, i.e. 2 T_r(x/2).
inline IntPolynomial basis_term(int r) {
    if (r < 0) throw ParameterError("basis_term: r must be >= 0");
    IntPolynomial prev{2};
    if (r == 0) return prev;
    IntPolynomial cur = IntPolynomial::x();
    for (int i = 1; i < r; ++i) {
        IntPolynomial next = IntPolynomial::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Phi_k(x) = 2k - sum_{r=1..k} P_r(x).
inline IntPolynomial build_phi(int k) {
    if (k < 1) throw ParameterError("build_phi: k must be >= 1");
    IntPolynomial phi{2LL * k};
    for (int r = 1; r <= k; ++r) phi -= basis_term(r);
    return phi;
}

/// Psi_k(x) = Phi_k(x) / (2 - x), degree k - 1.
inline IntPolynomial build_psi(int k) {
    return divide_exact(build_phi(k), IntPolynomial{2, -1});
}

inline IntPolynomial derivative(const IntPolynomial& p) {
    const auto& c = p.coefficients();
    if (c.size() <= 1) return {};
    std::vector<BigInt> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * static_cast<long long>(i);
    return IntPolynomial(std::move(out));
}

namespace detail {

template <class T>
T lift(const BigInt& c) {
    return T(c);
}
template <>
inline HpComplex lift<HpComplex>(const BigInt& c) {
    return HpComplex(Real(c));
}

}  // namespace detail

/// Horner evaluation in the arithmetic of `point` (BigInt, Rational, Real or
/// HpComplex). Real and complex evaluation runs at the caller's precision.
template <class T>
T eval_poly(const IntPolynomial& p, const T& point) {
    const auto& c = p.coefficients();
    T acc = detail::lift<T>(BigInt(0));
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * point;
        acc += detail::lift<T>(c[i]);
    }
    return acc;
}

}  // namespace cyclepower
