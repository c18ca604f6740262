#include <gtest/gtest.h>

#include "cyclepower/walk_kernels.hpp"
#include "oracles/oracles.hpp"

using namespace cyclepower;

namespace {

constexpr int kBits = 256;

Real rel(const Real& got, const Rational& expect) {
    return abs(Real(got - to_real(expect))) / max(Real(1), abs(to_real(expect)));
}

}  // namespace

TEST(HitExact, WorkedCases) {
    EXPECT_EQ(hit_exact(GraphSpec::create(7, 1), 3), Rational(12));
    auto s62 = GraphSpec::create(6, 2);
    EXPECT_EQ(hit_exact(s62, 1), Rational(5));
    EXPECT_EQ(hit_exact(s62, 2), Rational(5));
    EXPECT_EQ(hit_exact(s62, 3), Rational(6));
    for (int ell = 1; ell < 5; ++ell) EXPECT_EQ(hit_exact(GraphSpec::create(5, 2), ell), Rational(4));
    EXPECT_EQ(hit_exact(s62, 0), Rational(0));
    EXPECT_THROW(hit_exact(s62, 6), ParameterError);
    EXPECT_THROW(hit_exact(s62, -1), ParameterError);
}

TEST(HitExact, MatchesGaussJordanOracle) {
    for (int k = 1; k <= 4; ++k) {
        for (int n = 2 * k + 1; n <= 16; ++n) {
            auto profile = hit_exact_profile(GraphSpec::create(n, k));
            for (int ell = 0; ell < n; ++ell)
                ASSERT_EQ(profile[ell], oracle::hitting_time(n, k, ell)) << n << " " << k << " " << ell;
        }
    }
    EXPECT_EQ(hit_exact(GraphSpec::create(12, 2), 5), oracle::hitting_time(12, 2, 5));
}

TEST(HitExact, SymmetryPositivityAndCycle) {
    for (int k = 1; k <= 6; ++k) {
        for (int n = 2 * k + 1; n <= 30; ++n) {
            auto h = hit_exact_profile(GraphSpec::create(n, k));
            EXPECT_EQ(h[0], 0);
            for (int ell = 1; ell < n; ++ell) {
                ASSERT_EQ(h[ell], h[n - ell]);
                ASSERT_GT(h[ell], 0);
            }
        }
    }
    for (int n = 3; n <= 64; ++n) {
        auto h = hit_exact_profile(GraphSpec::create(n, 1));
        for (int ell = 0; ell < n; ++ell) ASSERT_EQ(h[ell], Rational(ell * (n - ell)));
    }
    for (int k = 1; k <= 6; ++k) {
        auto h = hit_exact_profile(GraphSpec::create(2 * k + 1, k));
        for (int ell = 1; ell <= 2 * k; ++ell) ASSERT_EQ(h[ell], Rational(2 * k));
    }
}

TEST(HitSpectral, WorkedCases) {
    EXPECT_LE(abs(Real(hit_spectral(GraphSpec::create(6, 2), 1, kBits) - 5)), pow2(-100));
    EXPECT_EQ(hit_spectral(GraphSpec::create(9, 3), 0, kBits), 0);
    EXPECT_LE(abs(Real(hit_spectral(GraphSpec::create(7, 3), 2, kBits) - 6)), pow2(-100));
}

TEST(HitSpectral, LongDoubleSanity) {
    for (int k = 1; k <= 4; ++k)
        for (int n = 2 * k + 1; n <= 20; ++n)
            for (int ell = 0; ell < n; ++ell) {
                const double hp = hit_spectral(GraphSpec::create(n, k), ell, 128).convert_to<double>();
                ASSERT_NEAR(hp, static_cast<double>(oracle::spectral_hit_ld(n, k, ell)), 1e-9 * std::max(1.0, hp));
            }
}

TEST(HitSpectral, StandardIdentityViaCycle) {
    // sum_j (1 - cos l t_j) / (2 - 2 cos t_j) = l(N-l)/2, i.e. the k = 1 spectral sum is l(N-l)
    for (int n = 3; n <= 64; ++n)
        for (int ell = 0; ell < n; ++ell)
            ASSERT_LE(rel(hit_spectral(GraphSpec::create(n, 1), ell, kBits), Rational(ell * (n - ell))), Real(1e-30));
}

TEST(HitClosed, WorkedCases) {
    auto f1 = partial_fractions(1, kBits);
    EXPECT_LE(abs(Real(hit_closed(GraphSpec::create(7, 1), 3, f1) - 12)), pow2(-100));
    auto f2 = partial_fractions(2, kBits);
    EXPECT_LE(abs(Real(hit_closed(GraphSpec::create(6, 2), 2, f2) - 5)), pow2(-100));
    auto f3 = partial_fractions(3, kBits);
    for (RatioForm form : {RatioForm::exponential, RatioForm::sequence})
        EXPECT_LE(abs(Real(hit_closed(GraphSpec::create(7, 3), 1, f3, form) - 6)), pow2(-100));
    EXPECT_THROW(hit_closed(GraphSpec::create(7, 3), 1, f2), ParameterError);
}

TEST(HitClosed, LiteralFormErratum) {
    auto f2 = partial_fractions(2, kBits);
    PrecisionScope scope(kBits);
    const Real literal = hit_closed_literal(GraphSpec::create(6, 2), 1, f2);
    EXPECT_LE(abs(Real(literal - Real(23) / 6)), pow2(-100));  // 2 + (24/5)(55/144)
    EXPECT_GE(abs(Real(literal - 5)), 1);
}

TEST(WalkKernels, OracleAgreementSweep) {
    for (int k = 1; k <= 6; ++k) {
        auto sf = partial_fractions(k, kBits);
        for (int n = 2 * k + 1; n <= 30; ++n) {
            auto spec = GraphSpec::create(n, k);
            auto h = hit_exact_profile(spec);
            for (int ell = 0; ell < n; ++ell) {
                ASSERT_LE(rel(hit_spectral(spec, ell, kBits), h[ell]), Real(1e-10));
                ASSERT_LE(rel(hit_closed(spec, ell, sf), h[ell]), Real(1e-10)) << n << " " << k << " " << ell;
            }
        }
    }
}

TEST(ResolventSum, PeriodizationIdentity) {
    for (int k = 2; k <= 3; ++k) {
        auto sf = partial_fractions(k, kBits);
        PrecisionScope scope(kBits);
        for (const auto& f : sf.factors()) {
            for (int n = 2 * k + 1; n <= 32; ++n) {
                for (int ell = 0; ell <= n; ++ell) {
                    auto direct = resolvent_sum(n, ell, f.gamma, kBits);
                    auto periodized = HpComplex(Real(n)) * correction_ratio(f, ell, n, RatioForm::exponential);
                    ASSERT_LE(abs(direct - periodized) / max(Real(1), abs(periodized)), Real(1e-10));
                }
            }
        }
    }
}

TEST(HittingProfile, AllMethods) {
    HittingOptions opts;
    opts.methods = {HitMethod::exact, HitMethod::spectral, HitMethod::closed, HitMethod::simulate,
                    HitMethod::closed_literal};
    opts.walks = 20000;
    opts.seed = 5;
    auto p = hitting_profile(GraphSpec::create(6, 2), 1, opts);
    ASSERT_EQ(p.values.size(), 5u);
    EXPECT_EQ(*p.values[0].exact, Rational(5));
    EXPECT_LT(p.agreement, Real(1e-30));
    ASSERT_TRUE(p.simulation.has_value());
    EXPECT_NEAR(p.simulation->mean, 5.0, 4 * p.simulation->std_error);
    EXPECT_GE(p.values[4].error_bound.value(), 1);

    auto zero = hitting_profile(GraphSpec::create(6, 2), 0, opts);
    for (const auto& v : zero.values) EXPECT_EQ(v.value, 0) << to_string(v.method);
}
