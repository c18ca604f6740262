#pragma once

/**
 * @file numeric.hpp
 * @brief Scalar types shared by every module.
 *
 * Exact work uses GMP integers and rationals. Analytic work uses MPFR reals
 * whose working precision is chosen at run time through PrecisionScope, and a
 * small Complex<R> template over them (std::complex is unspecified for
 * non-builtin element types).
 */

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <string>

#include "cyclepower/errors.hpp"

namespace cyclepower {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

inline constexpr int kDefaultPrecisionBits = 256;
inline constexpr int kMinPrecisionBits = 64;

/// Decimal digits MPFR needs to carry at least `bits` binary digits.
inline unsigned digits10_for_bits(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// RAII guard over the MPFR default precision. Every value created while the
/// guard is alive carries at least `bits` bits of mantissa.
class PrecisionScope {
public:
    explicit PrecisionScope(int bits) : saved_(Real::default_precision()) {
        if (bits < kMinPrecisionBits) {
            throw ParameterError("precision_bits must be >= " + std::to_string(kMinPrecisionBits));
        }
        Real::default_precision(digits10_for_bits(bits));
    }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
    ~PrecisionScope() { Real::default_precision(saved_); }

private:
    unsigned saved_;
};

/// 2^e at the current working precision.
inline Real pow2(int e) { return ldexp(Real(1), e); }

inline Real to_real(const BigInt& v) { return Real(v); }
inline Real to_real(const Rational& v) {
    return Real(boost::multiprecision::numerator(v)) / Real(boost::multiprecision::denominator(v));
}

template <class R>
class Complex {
public:
    Complex() : re_(0), im_(0) {}
    Complex(R re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
    Complex(R re, R im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(int re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)

    const R& real() const { return re_; }
    const R& imag() const { return im_; }

    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R re = re_ * o.re_ - im_ * o.im_;
        R im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        R den = o.re_ * o.re_ + o.im_ * o.im_;
        R re = (re_ * o.re_ + im_ * o.im_) / den;
        R im = (im_ * o.re_ - re_ * o.im_) / den;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return Complex(R(-a.re_), R(-a.im_)); }

private:
    R re_;
    R im_;
};

using HpComplex = Complex<Real>;

template <class R>
Complex<R> conj(const Complex<R>& z) {
    return Complex<R>(z.real(), R(-z.imag()));
}

/// Squared modulus.
template <class R>
R norm(const Complex<R>& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

template <class R>
R abs(const Complex<R>& z) {
    return hypot(z.real(), z.imag());
}

/// Principal square root (branch cut on the negative real axis).
template <class R>
Complex<R> sqrt(const Complex<R>& z) {
    R r = abs(z);
    if (r == 0) return Complex<R>();
    R re = sqrt((r + z.real()) / 2);
    R im = sqrt((r - z.real()) / 2);
    if (z.imag() < 0) im = -im;
    return Complex<R>(std::move(re), std::move(im));
}

/// z^n by binary powering; negative n inverts.
template <class R>
Complex<R> pow(Complex<R> z, long long n) {
    if (n < 0) return Complex<R>(R(1)) / pow(std::move(z), -n);
    Complex<R> result(R(1));
    while (n > 0) {
        if (n & 1) result *= z;
        n >>= 1;
        if (n > 0) z *= z;
    }
    return result;
}

/// Formats a real with `digits` significant decimal digits.
inline std::string format_real(const Real& v, int digits) {
    return v.str(digits);
}

}  // namespace cyclepower
