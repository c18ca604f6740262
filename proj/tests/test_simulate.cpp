#include <gtest/gtest.h>

#include "cyclepower/simulate.hpp"
#include "cyclepower/walk_kernels.hpp"

using namespace cyclepower;

TEST(Simulate, CompleteGraphMean) {
    auto r = hit_simulate(GraphSpec::create(6, 2), 3, 100000, 123);
    EXPECT_LE(std::abs(r.mean - 6.0), 4 * r.std_error);
    EXPECT_EQ(r.walks, 100000u);
    EXPECT_EQ(r.generator, std::string(kGeneratorId));
}

TEST(Simulate, TwelveCycleSquared) {
    auto spec = GraphSpec::create(12, 2);
    const double exact = to_real(hit_exact(spec, 5)).convert_to<double>();
    auto r = hit_simulate(spec, 5, 100000, 99);
    EXPECT_LE(std::abs(r.mean - exact), 4 * r.std_error);
}

TEST(Simulate, StartAtTarget) {
    auto r = hit_simulate(GraphSpec::create(9, 2), 0, 10, 1);
    EXPECT_EQ(r.mean, 0);
    EXPECT_EQ(r.std_error, 0);
    EXPECT_EQ(r.total_steps, 0u);
}

TEST(Simulate, ThreadCountDoesNotChangeResult) {
    auto spec = GraphSpec::create(15, 3);
    auto a = hit_simulate(spec, 7, 5000, 77, 1);
    auto b = hit_simulate(spec, 7, 5000, 77, 4);
    auto c = hit_simulate(spec, 7, 5000, 77, 7);
    EXPECT_EQ(a.total_steps, b.total_steps);
    EXPECT_EQ(a.total_steps, c.total_steps);
    EXPECT_EQ(a.mean, c.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    auto d = hit_simulate(spec, 7, 5000, 78, 1);
    EXPECT_NE(a.total_steps, d.total_steps);
}

TEST(Simulate, StreamsAreKeyedByWalk) {
    EXPECT_NE(walk_stream_seed(1, 0), walk_stream_seed(1, 1));
    EXPECT_NE(walk_stream_seed(1, 0), walk_stream_seed(2, 0));
    EXPECT_EQ(walk_stream_seed(5, 9), walk_stream_seed(5, 9));
}

TEST(Simulate, UniformBelowCoversRange) {
    std::mt19937_64 gen(3);
    std::vector<int> counts(6, 0);
    for (int i = 0; i < 60000; ++i) ++counts[uniform_below(gen, 6)];
    for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(Simulate, BudgetAndArguments) {
    auto spec = GraphSpec::create(40, 1);
    EXPECT_THROW(hit_simulate(spec, 20, 100, 1, 1, 50), SimulationBudgetError);
    EXPECT_THROW(hit_simulate(spec, 20, 0, 1), ParameterError);
    EXPECT_THROW(hit_simulate(spec, 40, 10, 1), ParameterError);
}
