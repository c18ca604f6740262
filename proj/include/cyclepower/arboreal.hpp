#pragma once

/**
 * @file arboreal.hpp
 * @brief Spanning trees, effective resistance, two-component spanning
 *        forests and trees of the 0~l identified graph.
 *
 * Each count has an exact integer route (cofactor determinants) and at least
 * one analytic route that must round to the same integer.
 */

#include <optional>
#include <string>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/exact_linalg.hpp"
#include "cyclepower/graph_model.hpp"
#include "cyclepower/numeric.hpp"
#include "cyclepower/spectral_factors.hpp"
#include "cyclepower/symbol_poly.hpp"
#include "cyclepower/walk_kernels.hpp"

namespace cyclepower {

/// Analytic counts are accepted only within this distance of an integer
/// (absolute, or relative for values above 1).
inline constexpr double kIntegerAcceptance = 1e-6;

/// Nearest integer to `v`; throws PrecisionError if `v` is not within
/// kIntegerAcceptance of it.
inline BigInt nearest_integer_checked(const Real& v, const std::string& what) {
    const Real rounded = round(v);
    const Real defect = abs(Real(v - rounded));
    const Real scale = max(Real(1), abs(rounded));
    if (defect > kIntegerAcceptance * scale) {
        throw PrecisionError(what + ": analytic value " + v.str(30) + " is not within tolerance of an integer");
    }
    return rounded.convert_to<BigInt>();
}

/// Matrix-tree theorem: determinant of the Laplacian with vertex 0 deleted.
inline BigInt tau_det(const GraphSpec& spec) { return determinant(build_laplacian(spec).minor(0)); }

/// (1/N) prod_{j=1}^{N-1} Phi_k(2 cos(2 pi j / N)).
inline Real tau_eigen(const GraphSpec& spec, int precision_bits) {
    PrecisionScope scope(precision_bits);
    const IntPolynomial phi = build_phi(spec.k());
    const auto cosines = cosine_table(spec.n());
    Real product = 1;
    for (int j = 1; j < spec.n(); ++j) product *= eval_poly(phi, Real(2 * cosines[j]));
    return product / spec.n();
}

/// prod_{j=1}^{N-1} (2 - 2 cos(2 pi j / N)); equals N^2.
inline Real cycle_eigen_product(int n, int precision_bits) {
    PrecisionScope scope(precision_bits);
    const auto cosines = cosine_table(n);
    Real product = 1;
    for (int j = 1; j < n; ++j) product *= 2 - 2 * cosines[j];
    return product;
}

/// (-1)^((N-1)(k-1)) N prod_a (1 - rho_a^N)^2 / (rho_a^(N-1) (1 - rho_a)^2).
///
/// Psi_k is monic, so each root contributes prod_j (2 cos theta_j - gamma_a)
/// = (-1)^(N-1) prod_j (gamma_a - 2 cos theta_j); the sign only matters when a
/// real root and even N meet (k = 2, N = 6 gives -384 without it).
///
/// A conjugate pair contributes |term|^2, which is real by construction; a
/// real root contributes its term directly.
inline Real tau_product(const GraphSpec& spec, const SpectralFactorization& sf) {
    if (sf.k() != spec.k()) throw ParameterError("tau_product: factorization built for a different k");
    PrecisionScope scope(sf.precision_bits());
    const long long n = spec.n();
    const HpComplex one(1);
    const bool negate = ((n - 1) * (spec.k() - 1)) % 2 != 0;
    Real product = Real(negate ? -n : n);
    const auto& factors = sf.factors();
    for (std::size_t a = 0; a < factors.size(); ++a) {
        const auto& f = factors[a];
        if (f.partner < a) continue;  // pair already counted
        const HpComplex head = one - pow(f.rho, n);
        const HpComplex tail = one - f.rho;
        HpComplex term = (head * head) / (tail * tail);
        term /= pow(f.rho, n - 1);
        if (f.partner == a) {
            if (abs(term.imag()) > pow2(-sf.precision_bits() / 2) * max(Real(1), abs(term))) {
                throw PrecisionError("tau_product: real factor has imaginary residue " + term.imag().str(6));
            }
            product *= term.real();
        } else {
            product *= norm(term);
        }
    }
    return product;
}

/// R(0, l) = h(0, l) / (N k) from the commute-time identity.
inline Rational resistance(const GraphSpec& spec, long long ell) {
    return hit_exact(spec, ell) / Rational(spec.edge_count());
}

namespace detail {

inline void check_nonzero_target(const GraphSpec& spec, long long ell) {
    if (ell < 1 || ell >= spec.n()) throw ParameterError("need 1 <= ell < N (got " + std::to_string(ell) + ")");
}

inline BigInt forests_from(const BigInt& tau, const Rational& resist) {
    const Rational f = Rational(tau) * resist;
    if (boost::multiprecision::denominator(f) != 1) {
        throw ConsistencyError("forests: tau * R = " + f.str() + " is not an integer");
    }
    return boost::multiprecision::numerator(f);
}

}  // namespace detail

/// Two-component spanning forests separating 0 and l: tau * R(0, l).
inline BigInt forests(const GraphSpec& spec, long long ell) {
    detail::check_nonzero_target(spec, ell);
    return detail::forests_from(tau_det(spec), resistance(spec, ell));
}

/// Spanning trees of the multigraph with 0 and l identified.
inline BigInt tau_contracted(const GraphSpec& spec, long long ell) {
    detail::check_nonzero_target(spec, ell);
    return determinant(contract_vertices(build_laplacian(spec), 0, static_cast<std::size_t>(ell)).minor(0));
}

struct ArborealCounts {
    GraphSpec spec;
    std::optional<long long> ell;
    BigInt tau;
    Real tau_eigen;
    Real tau_product;
    std::optional<Rational> resistance;
    std::optional<BigInt> forests;
    std::optional<BigInt> tau_contracted;
};

/// Every count for `spec` (and target `ell` if given), with the integer and
/// duality contracts checked. Throws PrecisionError / ConsistencyError on any
/// disagreement.
inline ArborealCounts arboreal_counts(const GraphSpec& spec, std::optional<long long> ell, int precision_bits) {
    PrecisionScope scope(precision_bits);
    const auto sf = partial_fractions(spec.k(), precision_bits);
    ArborealCounts out{spec, ell, tau_det(spec), tau_eigen(spec, precision_bits), tau_product(spec, sf),
                       std::nullopt, std::nullopt, std::nullopt};
    if (nearest_integer_checked(out.tau_eigen, "tau_eigen") != out.tau ||
        nearest_integer_checked(out.tau_product, "tau_product") != out.tau) {
        throw ConsistencyError("spanning-tree counts disagree");
    }
    if (ell) {
        out.resistance = resistance(spec, *ell);
        if (*ell != 0) {
            out.forests = detail::forests_from(out.tau, *out.resistance);
            out.tau_contracted = tau_contracted(spec, *ell);
            if (*out.forests != *out.tau_contracted) {
                throw ConsistencyError("forest count differs from contracted tree count");
            }
        }
    }
    return out;
}

}  // namespace cyclepower
