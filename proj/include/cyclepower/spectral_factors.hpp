#pragma once

/**
 * @file spectral_factors.hpp
 * @brief Roots of Psi_k, their inner roots, and the partial-fraction
 *        expansion of 2k / Phi_k(x).
 *
 *   2k / Phi_k(x) = B / (2 - x) + sum_a A_a / (gamma_a - x)
 *
 * with B = 2k / Psi_k(2) = 12 / ((k+1)(2k+1)) and
 * A_a = -2k / ((2 - gamma_a) Psi_k'(gamma_a)). Each gamma_a lies off the real
 * segment [-2, 2], so rho_a + 1/rho_a = gamma_a has exactly one solution
 * strictly inside the unit disc.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/numeric.hpp"
#include "cyclepower/symbol_poly.hpp"

namespace cyclepower {

struct FactorData {
    HpComplex gamma;
    HpComplex rho;
    HpComplex A;
    Real residual;  ///< |Psi_k(gamma)| after refinement
    std::size_t partner = 0;  ///< index of the conjugate factor (itself if gamma is real)

    bool is_real() const { return gamma.imag() == 0; }
};

class SpectralFactorization {
public:
    SpectralFactorization(int k, int precision_bits, Rational b, std::vector<FactorData> factors)
        : k_(k), bits_(precision_bits), b_(std::move(b)), factors_(std::move(factors)) {}

    int k() const { return k_; }
    int precision_bits() const { return bits_; }
    const Rational& B() const { return b_; }
    const std::vector<FactorData>& factors() const { return factors_; }

private:
    int k_;
    int bits_;
    Rational b_;
    std::vector<FactorData> factors_;
};

namespace detail {

/// Aberth-Ehrlich simultaneous iteration in double precision; seeds only.
inline std::vector<std::complex<double>> aberth_seeds(const IntPolynomial& p) {
    const int deg = p.degree();
    std::vector<std::complex<double>> z;
    if (deg < 1) return z;
    std::vector<double> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = p.coefficient(i).convert_to<double>();

    double bound = 0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[i] / c[deg]));
    bound += 1.0;
    for (int i = 0; i < deg; ++i) {
        double angle = 2.0 * M_PI * (i + 0.25) / deg + 0.4;
        z.push_back(std::polar(0.5 * bound, angle));
    }

    auto eval = [&](std::complex<double> x, std::complex<double>& dv) {
        std::complex<double> v = c[deg];
        dv = 0;
        for (int i = deg - 1; i >= 0; --i) {
            dv = dv * x + v;
            v = v * x + c[i];
        }
        return v;
    };

    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> dv;
            std::complex<double> v = eval(z[i], dv);
            if (v == 0.0) continue;
            std::complex<double> ratio = v / dv;
            std::complex<double> repulsion = 0;
            for (int j = 0; j < deg; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            std::complex<double> step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-14 * bound) break;
    }
    return z;
}

}  // namespace detail

/// All roots of `psi`, Newton-refined at `precision_bits` until
/// |psi(gamma)| <= 2^(-bits/2). Roots with negligible imaginary part are
/// snapped onto the real axis and conjugate pairs are made exactly conjugate.
/// Ordered by real part, then imaginary part descending.
inline std::vector<HpComplex> find_roots(const IntPolynomial& psi, int precision_bits) {
    PrecisionScope scope(precision_bits);
    const int deg = psi.degree();
    if (deg < 0) throw ParameterError("find_roots: zero polynomial");
    std::vector<HpComplex> roots;
    if (deg == 0) return roots;

    const IntPolynomial dpsi = derivative(psi);
    const Real tolerance = pow2(-precision_bits / 2);
    const Real step_floor = pow2(-precision_bits + 8);
    const Real snap = pow2(-precision_bits / 4);

    for (const auto& seed : detail::aberth_seeds(psi)) {
        HpComplex g(Real(seed.real()), Real(seed.imag()));
        bool converged = false;
        for (int iter = 0; iter < 200; ++iter) {
            HpComplex value = eval_poly(psi, g);
            HpComplex slope = eval_poly(dpsi, g);
            if (norm(slope) == 0) break;
            HpComplex step = value / slope;
            g -= step;
            if (abs(step) <= step_floor * max(Real(1), abs(g))) {
                converged = true;
                break;
            }
        }
        if (!converged || abs(eval_poly(psi, g)) > tolerance) {
            throw PrecisionError("find_roots: Newton refinement did not converge for degree " +
                                 std::to_string(deg) + " at " + std::to_string(precision_bits) +
                                 " bits; retry with higher precision_bits");
        }
        if (abs(g.imag()) <= snap * max(Real(1), abs(g))) g = HpComplex(g.real(), Real(0));
        roots.push_back(g);
    }

    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (abs(roots[i] - roots[j]) <= snap) {
                throw PrecisionError("find_roots: roots " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are not separated");
            }

    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i] || roots[i].imag() == 0) continue;
        std::size_t best = roots.size();
        Real best_dist;
        const HpComplex target = conj(roots[i]);
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == i || used[j]) continue;
            Real d = abs(roots[j] - target);
            if (best == roots.size() || d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        if (best == roots.size() || best_dist > snap) {
            throw PrecisionError("find_roots: complex root without a conjugate partner");
        }
        used[i] = used[best] = true;
        const HpComplex upper = roots[i].imag() > 0 ? roots[i] : roots[best];
        roots[i] = upper;
        roots[best] = conj(upper);
    }

    std::sort(roots.begin(), roots.end(), [](const HpComplex& a, const HpComplex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

/// The solution of rho^2 - gamma*rho + 1 = 0 with |rho| < 1.
inline HpComplex inner_root(const HpComplex& gamma, int precision_bits) {
    PrecisionScope scope(precision_bits);
    const HpComplex disc = sqrt(gamma * gamma - HpComplex(4));
    HpComplex plus = (gamma + disc) / HpComplex(2);
    HpComplex minus = (gamma - disc) / HpComplex(2);
    // the root of larger modulus is free of cancellation; its reciprocal is the other root
    const HpComplex& outer = norm(plus) >= norm(minus) ? plus : minus;
    HpComplex rho = HpComplex(1) / outer;
    if (abs(Real(abs(rho) - 1)) <= pow2(-precision_bits / 4)) {
        throw DegeneracyError("inner_root: |rho| is within tolerance of 1; gamma lies on [-2, 2]");
    }
    return rho;
}

/// B, and gamma / rho / A per root of Psi_k, at `precision_bits`.
inline SpectralFactorization partial_fractions(int k, int precision_bits) {
    if (k < 1) throw ParameterError("partial_fractions: k must be >= 1");
    PrecisionScope scope(precision_bits);
    const IntPolynomial psi = build_psi(k);
    const IntPolynomial dpsi = derivative(psi);
    const Rational b(BigInt(2 * k), eval_poly(psi, BigInt(2)));

    std::vector<HpComplex> roots = find_roots(psi, precision_bits);
    std::vector<FactorData> factors;
    factors.reserve(roots.size());
    for (const auto& g : roots) {
        FactorData f;
        f.gamma = g;
        f.rho = inner_root(g, precision_bits);
        f.A = HpComplex(Real(-2 * k)) / ((HpComplex(2) - g) * eval_poly(dpsi, g));
        f.residual = abs(eval_poly(psi, g));
        factors.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        factors[i].partner = i;
        if (factors[i].is_real()) continue;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (j != i && factors[j].gamma.real() == factors[i].gamma.real() &&
                factors[j].gamma.imag() == -factors[i].gamma.imag()) {
                factors[i].partner = j;
            }
        }
        if (factors[i].partner == i) throw ConsistencyError("partial_fractions: unpaired complex root");
    }
    return SpectralFactorization(k, precision_bits, b, std::move(factors));
}

/// |2k/Phi_k(x) - B/(2-x) - sum_a A_a/(gamma_a - x)| at the factorization's
/// precision. `x` must be at least 2^-8 away from every pole.
inline Real check_decomposition(const SpectralFactorization& sf, const HpComplex& x) {
    PrecisionScope scope(sf.precision_bits());
    const Real pole_margin = pow2(-8);
    if (abs(HpComplex(2) - x) <= pole_margin) throw ParameterError("check_decomposition: x too close to 2");
    for (const auto& f : sf.factors())
        if (abs(f.gamma - x) <= pole_margin) throw ParameterError("check_decomposition: x too close to a root");

    const int k = sf.k();
    const HpComplex lhs = HpComplex(Real(2 * k)) / eval_poly(build_phi(k), x);
    HpComplex rhs = HpComplex(to_real(sf.B())) / (HpComplex(2) - x);
    for (const auto& f : sf.factors()) rhs += f.A / (f.gamma - x);
    return abs(lhs - rhs);
}

}  // namespace cyclepower
