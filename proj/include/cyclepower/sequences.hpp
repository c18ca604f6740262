#pragma once

/**
 * @file sequences.hpp
 * @brief Second-order recurrences s_{n+1} = c s_n - s_{n-1}, s_0 = 0, s_1 = 1,
 *        attached to each root of Psi_k.
 *
 * Two coefficient choices are provided:
 *   - full-index V_n with c = gamma, Binet base rho;
 *   - half-index W_n with c = delta = sigma + 1/sigma, sigma^2 = rho, so that
 *     delta^2 = gamma + 2.
 *
 * The periodized resolvent gives the correction ratio
 *
 *   (1 - rho^l)(1 - rho^(N-l)) / ((1/rho - rho)(1 - rho^N))
 *     = W_l W_(N-l) / (delta W_N).
 *
 * The product V_l V_(N-l) / V_N is the same expression with rho replaced by
 * rho^2; it does not equal the ratio above and is kept only as
 * literal_sequence_ratio for erratum reporting.
 */

#include <string>

#include "cyclepower/errors.hpp"
#include "cyclepower/numeric.hpp"
#include "cyclepower/spectral_factors.hpp"

namespace cyclepower {

/// Seeds are always s_0 = 0, s_1 = 1.
struct RecurrenceSpec {
    HpComplex coefficient;
};

enum class RatioForm { exponential, sequence };

enum class Branch { principal, negated };

inline std::string to_string(RatioForm f) { return f == RatioForm::exponential ? "exp" : "seq"; }

namespace detail {

/// Opens a precision scope matching an existing value.
class MatchPrecision {
public:
    explicit MatchPrecision(const Real& like) : saved_(Real::default_precision()) {
        Real::default_precision(like.precision());
    }
    MatchPrecision(const MatchPrecision&) = delete;
    MatchPrecision& operator=(const MatchPrecision&) = delete;
    ~MatchPrecision() { Real::default_precision(saved_); }

private:
    unsigned saved_;
};

inline int bits_of(const Real& like) {
    return static_cast<int>(like.precision() / 0.30102999566398120);
}

}  // namespace detail

inline HpComplex term_by_recurrence(const RecurrenceSpec& spec, long long n) {
    if (n < 0) throw ParameterError("term_by_recurrence: n must be >= 0");
    detail::MatchPrecision scope(spec.coefficient.real());
    HpComplex prev(0);
    HpComplex cur(1);
    if (n == 0) return prev;
    for (long long i = 1; i < n; ++i) {
        HpComplex next = spec.coefficient * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// (b^n - b^-n) / (b - 1/b).
inline HpComplex term_by_binet(const HpComplex& base, long long n) {
    if (n < 0) throw ParameterError("term_by_binet: n must be >= 0");
    detail::MatchPrecision scope(base.real());
    const Real margin = pow2(-detail::bits_of(base.real()) / 4);
    if (abs(base - HpComplex(1)) <= margin || abs(base + HpComplex(1)) <= margin) {
        throw DegeneracyError("term_by_binet: base is within tolerance of +-1");
    }
    const HpComplex inv = HpComplex(1) / base;
    return (pow(base, n) - pow(inv, n)) / (base - inv);
}

/// V-form recurrence: coefficient gamma, Binet base rho.
inline RecurrenceSpec full_index_spec(const FactorData& factor) { return RecurrenceSpec{factor.gamma}; }

/// Square root sigma of rho on the requested branch.
inline HpComplex half_index_base(const FactorData& factor, Branch branch) {
    detail::MatchPrecision scope(factor.rho.real());
    HpComplex sigma = sqrt(factor.rho);
    return branch == Branch::principal ? sigma : -sigma;
}

/// W-form recurrence: coefficient delta = sigma + 1/sigma.
inline RecurrenceSpec half_index_spec(const FactorData& factor, Branch branch) {
    detail::MatchPrecision scope(factor.rho.real());
    const HpComplex sigma = half_index_base(factor, branch);
    return RecurrenceSpec{sigma + HpComplex(1) / sigma};
}

/// Correction ratio of one factor at target l on the N-cycle; the N-scaled
/// resolvent sum over the nonzero frequencies equals N times this value.
inline HpComplex correction_ratio(const FactorData& factor, long long ell, long long n, RatioForm form,
                                  Branch branch = Branch::principal) {
    if (ell < 0 || ell > n) throw ParameterError("correction_ratio: need 0 <= ell <= N");
    detail::MatchPrecision scope(factor.rho.real());
    const HpComplex one(1);
    if (form == RatioForm::exponential) {
        const HpComplex& rho = factor.rho;
        HpComplex num = (one - pow(rho, ell)) * (one - pow(rho, n - ell));
        HpComplex den = (one / rho - rho) * (one - pow(rho, n));
        return num / den;
    }
    const RecurrenceSpec w = half_index_spec(factor, branch);
    return term_by_recurrence(w, ell) * term_by_recurrence(w, n - ell) /
           (w.coefficient * term_by_recurrence(w, n));
}

/// V_l V_(N-l) / V_N with V built on gamma; the unverified full-index form.
inline HpComplex literal_sequence_ratio(const FactorData& factor, long long ell, long long n) {
    if (ell < 0 || ell > n) throw ParameterError("literal_sequence_ratio: need 0 <= ell <= N");
    detail::MatchPrecision scope(factor.rho.real());
    return term_by_binet(factor.rho, ell) * term_by_binet(factor.rho, n - ell) / term_by_binet(factor.rho, n);
}

}  // namespace cyclepower
