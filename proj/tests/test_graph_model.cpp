#include <gtest/gtest.h>

#include "cyclepower/exact_linalg.hpp"
#include "cyclepower/graph_model.hpp"
#include "oracles/oracles.hpp"

using namespace cyclepower;

namespace {

std::vector<long long> row(const IntMatrix& m, std::size_t i) {
    std::vector<long long> out;
    for (std::size_t j = 0; j < m.dim(); ++j) out.push_back(m(i, j).convert_to<long long>());
    return out;
}

}  // namespace

TEST(GraphSpec, RejectsBelowStandingAssumption) {
    EXPECT_THROW(GraphSpec::create(4, 2), ParameterError);
    EXPECT_THROW(GraphSpec::create(6, 3), ParameterError);
    EXPECT_THROW(GraphSpec::create(2, 1), ParameterError);
    EXPECT_THROW(GraphSpec::create(7, 0), ParameterError);
    EXPECT_NO_THROW(GraphSpec::create(5, 2));
    EXPECT_NO_THROW(GraphSpec::create(3, 1));
}

TEST(GraphSpec, DegreeAndEdges) {
    auto s = GraphSpec::create(10, 3);
    EXPECT_EQ(s.degree(), 6);
    EXPECT_EQ(s.edge_count(), 30);
    EXPECT_FALSE(s.is_complete());
    EXPECT_TRUE(GraphSpec::create(7, 3).is_complete());
}

TEST(BuildLaplacian, Triangle) {
    auto lap = build_laplacian(GraphSpec::create(3, 1));
    EXPECT_EQ(row(lap, 0), (std::vector<long long>{2, -1, -1}));
    EXPECT_EQ(row(lap, 1), (std::vector<long long>{-1, 2, -1}));
    EXPECT_EQ(row(lap, 2), (std::vector<long long>{-1, -1, 2}));
}

TEST(BuildLaplacian, CompleteGraphK5) {
    auto lap = build_laplacian(GraphSpec::create(5, 2));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(lap(i, j), i == j ? 4 : -1);
}

TEST(BuildLaplacian, SixCycleSquaredRowZero) {
    auto lap = build_laplacian(GraphSpec::create(6, 2));
    EXPECT_EQ(row(lap, 0), (std::vector<long long>{4, -1, -1, 0, -1, -1}));
}

TEST(BuildLaplacian, MatchesShiftOperatorPolynomial) {
    // L_k = 2k I - sum_r (T^r + T^-r), with T^-1 = T^(N-1)
    const int n = 9, k = 3;
    const IntMatrix t = shift_operator(n);
    auto multiply = [&](const IntMatrix& a, const IntMatrix& b) {
        IntMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m) c(i, j) += a(i, m) * b(m, j);
        return c;
    };
    std::vector<IntMatrix> powers{IntMatrix(n)};
    for (int i = 0; i < n; ++i) powers[0](i, i) = 1;
    for (int p = 1; p < n; ++p) powers.push_back(multiply(powers.back(), t));

    IntMatrix expect(n);
    for (int i = 0; i < n; ++i) expect(i, i) = 2 * k;
    for (int r = 1; r <= k; ++r)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) expect(i, j) -= powers[r](i, j) + powers[n - r](i, j);
    EXPECT_EQ(build_laplacian(GraphSpec::create(n, k)), expect);
}

TEST(BuildLaplacian, InvariantsAcrossParameters) {
    for (int k = 1; k <= 6; ++k) {
        for (int n = 2 * k + 1; n <= 30; ++n) {
            auto lap = build_laplacian(GraphSpec::create(n, k));
            ASSERT_TRUE(lap.is_symmetric());
            for (int i = 0; i < n; ++i) {
                ASSERT_EQ(lap.row_sum(i), 0);
                ASSERT_EQ(lap(i, i), 2 * k);
            }
            ASSERT_EQ(lap.trace() / 2, BigInt(n) * k);
            // adjacency agrees with the edge list built from cyclic distance
            auto edges = oracle::cycle_power_edges(n, k);
            ASSERT_EQ(edges.size(), static_cast<std::size_t>(n * k));
            for (auto [a, b] : edges) ASSERT_EQ(lap(a, b), -1);
        }
    }
}

TEST(ContractVertices, TriangleGivesDoubledEdge) {
    auto c = contract_vertices(build_laplacian(GraphSpec::create(3, 1)), 0, 1);
    ASSERT_EQ(c.dim(), 2u);
    EXPECT_EQ(row(c, 0), (std::vector<long long>{2, -2}));
    EXPECT_EQ(row(c, 1), (std::vector<long long>{-2, 2}));
}

TEST(ContractVertices, K5MergedDegreeAndCofactor) {
    auto c = contract_vertices(build_laplacian(GraphSpec::create(5, 2)), 0, 2);
    ASSERT_EQ(c.dim(), 4u);
    EXPECT_EQ(c(0, 0), 6);
    EXPECT_EQ(determinant(c.minor(0)), 50);
    auto edges = oracle::identify(oracle::cycle_power_edges(5, 2), 5, 0, 2);
    EXPECT_EQ(oracle::count_spanning_trees(edges, 4), 50u);
}

TEST(ContractVertices, OppositeVerticesOfSixCycle) {
    auto c = contract_vertices(build_laplacian(GraphSpec::create(6, 1)), 0, 3);
    EXPECT_EQ(determinant(c.minor(0)), 9);
    auto edges = oracle::identify(oracle::cycle_power_edges(6, 1), 6, 0, 3);
    EXPECT_EQ(oracle::count_spanning_trees(edges, 5), 9u);
}

TEST(ContractVertices, RowSumsStayZero) {
    for (int k = 1; k <= 4; ++k) {
        for (int n = 2 * k + 1; n <= 14; ++n) {
            auto lap = build_laplacian(GraphSpec::create(n, k));
            for (int u = 0; u < n; ++u) {
                for (int v = 0; v < n; ++v) {
                    if (u == v) continue;
                    auto c = contract_vertices(lap, u, v);
                    ASSERT_TRUE(c.is_symmetric());
                    ASSERT_EQ(c.total_sum(), 0);
                    for (std::size_t i = 0; i < c.dim(); ++i) ASSERT_EQ(c.row_sum(i), 0);
                }
            }
        }
    }
}

TEST(ContractVertices, Errors) {
    auto lap = build_laplacian(GraphSpec::create(5, 1));
    EXPECT_THROW(contract_vertices(lap, 2, 2), ParameterError);
    EXPECT_THROW(contract_vertices(lap, 0, 5), ParameterError);
}
