#pragma once

/**
 * @file walk_kernels.hpp
 * @brief Average hitting time h(0, l) on C_N^k by four routes.
 *
 *  - exact:    h(0) = 0, (L_k h)(i) = 2k for i != 0, solved over Q;
 *  - spectral: 2k * sum_{j=1}^{N-1} (1 - cos(l theta_j)) / lambda_j with the
 *              circulant eigenvalues lambda_j = 2k - 2 sum_r cos(r theta_j);
 *  - closed:   (B/2) l(N-l) + N sum_a A_a * ratio_a(l), one correction per
 *              root of Psi_k;
 *  - simulate: Monte Carlo (see simulate.hpp).
 *
 * The exact route is the reference for the other three. The graph is
 * vertex-transitive, so h(p, q) = h(0, q - p) and only targets l from the
 * origin are exposed.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/exact_linalg.hpp"
#include "cyclepower/graph_model.hpp"
#include "cyclepower/numeric.hpp"
#include "cyclepower/sequences.hpp"
#include "cyclepower/simulate.hpp"
#include "cyclepower/spectral_factors.hpp"
#include "cyclepower/symbol_poly.hpp"

namespace cyclepower {

namespace detail {

inline void check_target(const GraphSpec& spec, long long ell) {
    if (ell < 0 || ell >= spec.n()) {
        throw ParameterError("target ell must satisfy 0 <= ell < N (got " + std::to_string(ell) + ")");
    }
}

}  // namespace detail

/// h(0, l) for every l in 0..N-1 from one exact solve.
///
/// Deleting vertex 0 from the system gives u(i) = h(i, 0); translating by -l
/// maps the pair (0, l) to (N-l, 0), so h(0, l) = u(N-l).
inline std::vector<Rational> hit_exact_profile(const GraphSpec& spec) {
    const IntMatrix reduced = build_laplacian(spec).minor(0);
    const std::vector<BigInt> rhs(reduced.dim(), BigInt(spec.degree()));
    const std::vector<Rational> u = solve_exact(reduced, rhs);  // u[i-1] = h(i, 0)
    std::vector<Rational> h(spec.n());
    for (int ell = 1; ell < spec.n(); ++ell) h[ell] = u[spec.n() - ell - 1];
    return h;
}

inline Rational hit_exact(const GraphSpec& spec, long long ell) {
    detail::check_target(spec, ell);
    if (ell == 0) return Rational(0);
    return hit_exact_profile(spec)[ell];
}

/// cos(2 pi m / N) for m = 0..N-1 at the current precision.
inline std::vector<Real> cosine_table(int n) {
    const Real two_pi = 2 * boost::multiprecision::acos(Real(-1));
    std::vector<Real> table(n);
    for (int m = 0; m < n; ++m) table[m] = cos(two_pi * m / n);
    return table;
}

/// Laplacian eigenvalues lambda_j = 2k - 2 sum_{r=1..k} cos(2 pi j r / N),
/// j = 0..N-1, at the current precision.
inline std::vector<Real> laplacian_eigenvalues(const GraphSpec& spec, const std::vector<Real>& cosines) {
    const int n = spec.n();
    std::vector<Real> lambda(n);
    for (int j = 0; j < n; ++j) {
        Real s = 0;
        for (int r = 1; r <= spec.k(); ++r) s += cosines[(static_cast<long long>(j) * r) % n];
        lambda[j] = Real(2 * spec.k()) - 2 * s;
    }
    return lambda;
}

inline Real hit_spectral(const GraphSpec& spec, long long ell, int precision_bits) {
    detail::check_target(spec, ell);
    PrecisionScope scope(precision_bits);
    if (ell == 0) return Real(0);
    const int n = spec.n();
    const auto cosines = cosine_table(n);
    const auto lambda = laplacian_eigenvalues(spec, cosines);
    Real sum = 0;
    for (int j = 1; j < n; ++j) {
        if (lambda[j] <= 0) {
            throw ConsistencyError("hit_spectral: nonpositive eigenvalue at j=" + std::to_string(j));
        }
        sum += (1 - cosines[(j * ell) % n]) / lambda[j];
    }
    return 2 * spec.k() * sum;
}

/// sum_{j=1}^{N-1} (1 - cos(l theta_j)) / (gamma - 2 cos theta_j), evaluated
/// term by term. Equals N * correction_ratio for the inner root of gamma.
inline HpComplex resolvent_sum(int n, long long ell, const HpComplex& gamma, int precision_bits) {
    if (n < 1 || ell < 0) throw ParameterError("resolvent_sum: need N >= 1, ell >= 0");
    PrecisionScope scope(precision_bits);
    const auto cosines = cosine_table(n);
    HpComplex sum;
    for (int j = 1; j < n; ++j) {
        HpComplex term(Real(1 - cosines[(j * ell) % n]));
        sum += term / (gamma - HpComplex(Real(2 * cosines[j])));
    }
    return sum;
}

namespace detail {

inline Real closed_from_corrections(const GraphSpec& spec, long long ell, const SpectralFactorization& sf,
                                    const HpComplex& corrections, bool check_imaginary) {
    const Rational quadratic = sf.B() / 2 * Rational(ell * (spec.n() - ell));
    if (check_imaginary) {
        const Real scale = max(Real(1), abs(corrections));
        if (abs(corrections.imag()) > pow2(-sf.precision_bits() / 2) * scale) {
            throw PrecisionError("hit_closed: imaginary residue " + corrections.imag().str(6) +
                                 " exceeds tolerance; increase precision_bits");
        }
    }
    return to_real(quadratic) + spec.n() * corrections.real();
}

inline void check_factorization(const GraphSpec& spec, const SpectralFactorization& sf) {
    if (sf.k() != spec.k()) {
        throw ParameterError("factorization built for k=" + std::to_string(sf.k()) + " used with k=" +
                             std::to_string(spec.k()));
    }
}

}  // namespace detail

/// Quadratic term plus one correction per root of Psi_k.
inline Real hit_closed(const GraphSpec& spec, long long ell, const SpectralFactorization& sf,
                       RatioForm form = RatioForm::exponential) {
    detail::check_target(spec, ell);
    detail::check_factorization(spec, sf);
    PrecisionScope scope(sf.precision_bits());
    HpComplex corrections;
    for (const auto& f : sf.factors()) corrections += f.A * correction_ratio(f, ell, spec.n(), form);
    return detail::closed_from_corrections(spec, ell, sf, corrections, true);
}

/// The closed form with V_l V_(N-l) / V_N in place of the verified ratio.
/// Disagrees with the exact value for k >= 2; used only for erratum reports.
inline Real hit_closed_literal(const GraphSpec& spec, long long ell, const SpectralFactorization& sf) {
    detail::check_target(spec, ell);
    detail::check_factorization(spec, sf);
    PrecisionScope scope(sf.precision_bits());
    HpComplex corrections;
    for (const auto& f : sf.factors()) corrections += f.A * literal_sequence_ratio(f, ell, spec.n());
    return detail::closed_from_corrections(spec, ell, sf, corrections, false);
}

// ---------------------------------------------------------------------------
// Per-method profile

enum class HitMethod { exact, spectral, closed, simulate, closed_literal };

inline std::string to_string(HitMethod m) {
    switch (m) {
        case HitMethod::exact: return "exact";
        case HitMethod::spectral: return "spectral";
        case HitMethod::closed: return "closed";
        case HitMethod::simulate: return "simulate";
        case HitMethod::closed_literal: return "closed-literal";
    }
    return "unknown";
}

struct MethodValue {
    HitMethod method;
    std::optional<Rational> exact;  ///< set for the exact method only
    Real value;
    std::optional<Real> error_bound;
};

struct HittingOptions {
    std::vector<HitMethod> methods{HitMethod::exact, HitMethod::spectral, HitMethod::closed};
    RatioForm form = RatioForm::exponential;
    int precision_bits = kDefaultPrecisionBits;
    std::uint64_t walks = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

struct HittingProfile {
    GraphSpec spec;
    long long ell;
    std::vector<MethodValue> values;
    Real agreement;  ///< max pairwise relative deviation over deterministic verified methods
    std::optional<SimulationResult> simulation;
};

/// Runs the requested methods at one target and records their spread.
///
/// Error bounds: spectral uses N * 2^(16-bits) * max(1, |h|) as a rounding
/// budget; closed adds the Newton residuals of the roots to the same budget;
/// simulate reports its standard error. The literal form is reported with its
/// deviation from the verified closed form.
inline HittingProfile hitting_profile(const GraphSpec& spec, long long ell, const HittingOptions& opts) {
    detail::check_target(spec, ell);
    PrecisionScope scope(opts.precision_bits);
    HittingProfile profile{spec, ell, {}, Real(0), std::nullopt};
    std::optional<SpectralFactorization> sf;
    auto factorization = [&]() -> const SpectralFactorization& {
        if (!sf) sf = partial_fractions(spec.k(), opts.precision_bits);
        return *sf;
    };
    const Real rounding = spec.n() * pow2(16 - opts.precision_bits);

    for (HitMethod m : opts.methods) {
        MethodValue mv{m, std::nullopt, Real(0), std::nullopt};
        switch (m) {
            case HitMethod::exact: {
                mv.exact = hit_exact(spec, ell);
                mv.value = to_real(*mv.exact);
                break;
            }
            case HitMethod::spectral: {
                mv.value = hit_spectral(spec, ell, opts.precision_bits);
                mv.error_bound = Real(rounding * max(Real(1), abs(mv.value)));
                break;
            }
            case HitMethod::closed: {
                const auto& f = factorization();
                mv.value = hit_closed(spec, ell, f, opts.form);
                Real bound = rounding * max(Real(1), abs(mv.value));
                for (const auto& fd : f.factors()) bound += spec.n() * abs(fd.A) * fd.residual;
                mv.error_bound = bound;
                break;
            }
            case HitMethod::simulate: {
                auto sim = hit_simulate(spec, static_cast<int>(ell), opts.walks, opts.seed, opts.threads);
                mv.value = Real(sim.mean);
                mv.error_bound = Real(sim.std_error);
                profile.simulation = sim;
                break;
            }
            case HitMethod::closed_literal: {
                const auto& f = factorization();
                mv.value = hit_closed_literal(spec, ell, f);
                mv.error_bound = Real(abs(Real(mv.value - hit_closed(spec, ell, f))));
                break;
            }
        }
        profile.values.push_back(std::move(mv));
    }

    for (std::size_t a = 0; a < profile.values.size(); ++a) {
        for (std::size_t b = a + 1; b < profile.values.size(); ++b) {
            const auto& va = profile.values[a];
            const auto& vb = profile.values[b];
            auto verified = [](HitMethod m) {
                return m == HitMethod::exact || m == HitMethod::spectral || m == HitMethod::closed;
            };
            if (!verified(va.method) || !verified(vb.method)) continue;
            Real dev = abs(Real(va.value - vb.value)) / max(Real(1), abs(va.value));
            if (dev > profile.agreement) profile.agreement = dev;
        }
    }
    return profile;
}

}  // namespace cyclepower
