#include <gtest/gtest.h>

#include "cyclepower/sequences.hpp"
#include "oracles/oracles.hpp"

using namespace cyclepower;

namespace {

constexpr int kBits = 256;

Real rel_diff(const HpComplex& a, const HpComplex& b) { return abs(a - b) / max(Real(1), abs(b)); }

}  // namespace

TEST(TermByRecurrence, FibonacciCoefficient) {
    PrecisionScope scope(kBits);
    RecurrenceSpec spec{HpComplex(-3)};
    EXPECT_EQ(term_by_recurrence(spec, 0).real(), 0);
    EXPECT_EQ(term_by_recurrence(spec, 5).real(), 55);
    EXPECT_EQ(term_by_recurrence(spec, 6).real(), -144);
    EXPECT_EQ(term_by_recurrence(RecurrenceSpec{HpComplex(Real(0.3), Real(2))}, 0).real(), 0);
    EXPECT_THROW(term_by_recurrence(spec, -1), ParameterError);
}

TEST(TermByBinet, WorkedCases) {
    PrecisionScope scope(kBits);
    const HpComplex rho(Real((sqrt(Real(5)) - 3) / 2));
    EXPECT_LT(abs(term_by_binet(rho, 4) - HpComplex(-21)), pow2(-120));
    EXPECT_LT(abs(term_by_binet(rho, 1) - HpComplex(1)), pow2(-120));
    const HpComplex half(Real(0.5));
    EXPECT_LT(abs(term_by_binet(half, 3) - HpComplex(Real(21) / 4)), pow2(-120));
    EXPECT_LT(abs(term_by_recurrence(RecurrenceSpec{HpComplex(Real(2.5))}, 3) - HpComplex(Real(21) / 4)),
              pow2(-120));
    EXPECT_THROW(term_by_binet(HpComplex(1), 3), DegeneracyError);
    EXPECT_THROW(term_by_binet(HpComplex(-1), 3), DegeneracyError);
}

TEST(HalfIndexSpec, KTwoIsImaginaryUnit) {
    auto sf = partial_fractions(2, kBits);
    PrecisionScope scope(kBits);
    const auto& f = sf.factors()[0];
    for (Branch b : {Branch::principal, Branch::negated}) {
        auto w = half_index_spec(f, b);
        EXPECT_LT(abs(w.coefficient * w.coefficient + HpComplex(1)), pow2(-kBits / 2));
        EXPECT_LT(abs(Real(abs(term_by_recurrence(w, 6)) - 8)), pow2(-120));
    }
}

TEST(HalfIndexSpec, DeltaSquaredIsGammaPlusTwo) {
    for (int k = 2; k <= 8; ++k) {
        const int bits = k == 3 ? 128 : kBits;
        auto sf = partial_fractions(k, bits);
        PrecisionScope scope(bits);
        for (const auto& f : sf.factors()) {
            for (Branch b : {Branch::principal, Branch::negated}) {
                auto w = half_index_spec(f, b);
                EXPECT_LE(abs(w.coefficient * w.coefficient - (f.gamma + HpComplex(2))), pow2(-bits / 2));
            }
        }
    }
}

TEST(CorrectionRatio, KTwoSixCycle) {
    auto sf = partial_fractions(2, kBits);
    PrecisionScope scope(kBits);
    const auto& f = sf.factors()[0];
    for (RatioForm form : {RatioForm::exponential, RatioForm::sequence}) {
        EXPECT_LT(abs(correction_ratio(f, 1, 6, form) - HpComplex(Real(-0.625))), pow2(-120));
        EXPECT_LT(abs(correction_ratio(f, 2, 6, form) - HpComplex(Real(-0.375))), pow2(-120));
        EXPECT_EQ(abs(correction_ratio(f, 0, 6, form)), 0);
    }
    EXPECT_THROW(correction_ratio(f, 7, 6, RatioForm::exponential), ParameterError);
}

TEST(CorrectionRatio, LiteralFullIndexFormDiffers) {
    auto sf = partial_fractions(2, kBits);
    PrecisionScope scope(kBits);
    auto literal = literal_sequence_ratio(sf.factors()[0], 1, 6);
    EXPECT_LT(abs(literal - HpComplex(Real(-55) / 144)), pow2(-120));
    EXPECT_GT(abs(literal - correction_ratio(sf.factors()[0], 1, 6, RatioForm::exponential)), Real(0.2));
}

TEST(Sequences, BinetMatchesRecurrence) {
    for (int k = 2; k <= 6; ++k) {
        auto sf = partial_fractions(k, kBits);
        PrecisionScope scope(kBits);
        for (const auto& f : sf.factors()) {
            const auto sigma = half_index_base(f, Branch::principal);
            const auto v = full_index_spec(f);
            const auto w = half_index_spec(f, Branch::principal);
            for (int n = 0; n <= 64; ++n) {
                ASSERT_LE(rel_diff(term_by_recurrence(v, n), term_by_binet(f.rho, n)), pow2(-kBits / 2));
                ASSERT_LE(rel_diff(term_by_recurrence(w, n), term_by_binet(sigma, n)), pow2(-kBits / 2));
            }
        }
    }
}

TEST(Sequences, BranchInvarianceAndFormAgreement) {
    for (int k = 2; k <= 6; ++k) {
        auto sf = partial_fractions(k, kBits);
        PrecisionScope scope(kBits);
        for (const auto& f : sf.factors()) {
            for (int n = 2 * k + 1; n <= 48; ++n) {
                for (int ell = 0; ell <= n; ++ell) {
                    auto e = correction_ratio(f, ell, n, RatioForm::exponential);
                    auto s1 = correction_ratio(f, ell, n, RatioForm::sequence, Branch::principal);
                    auto s2 = correction_ratio(f, ell, n, RatioForm::sequence, Branch::negated);
                    ASSERT_LE(rel_diff(s1, e), pow2(-kBits / 2)) << k << " " << n << " " << ell;
                    ASSERT_LE(rel_diff(s2, s1), pow2(-kBits / 2));
                }
            }
        }
    }
}

TEST(Sequences, SymmetryAndConjugation) {
    for (int k = 2; k <= 6; ++k) {
        auto sf = partial_fractions(k, kBits);
        PrecisionScope scope(kBits);
        const auto& fs = sf.factors();
        for (const auto& f : fs) {
            for (int n = 2 * k + 1; n <= 30; ++n) {
                for (int ell = 0; ell <= n; ++ell) {
                    auto a = correction_ratio(f, ell, n, RatioForm::exponential);
                    auto b = correction_ratio(f, n - ell, n, RatioForm::exponential);
                    ASSERT_EQ(a.real(), b.real());
                    ASSERT_EQ(a.imag(), b.imag());
                    auto c = correction_ratio(fs[f.partner], ell, n, RatioForm::exponential);
                    ASSERT_LE(rel_diff(c, conj(a)), pow2(-kBits / 2));
                }
            }
        }
    }
}

TEST(Sequences, FibonacciAnchor) {
    auto sf = partial_fractions(2, kBits);
    PrecisionScope scope(kBits);
    const auto& f = sf.factors()[0];
    for (int n = 5; n <= 48; ++n) {
        for (int ell = 0; ell <= n; ++ell) {
            const Rational expect(-oracle::fibonacci(ell) * oracle::fibonacci(n - ell), oracle::fibonacci(n));
            auto got = correction_ratio(f, ell, n, RatioForm::sequence);
            ASSERT_LE(rel_diff(got, HpComplex(to_real(expect))), pow2(-kBits / 2)) << n << " " << ell;
        }
    }
}
