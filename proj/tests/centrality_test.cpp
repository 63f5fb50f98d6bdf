#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tcrank/centrality.hpp"
#include "tcrank/generators.hpp"
#include "tcrank/parallel.hpp"
#include "test_support.hpp"

namespace tcrank {
namespace {

using testing::coin_graph;
using testing::complete;
using testing::cycle;
using testing::make_graph;
using testing::path;
using testing::star;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(DegreeTest, SmallGraphs) {
    EXPECT_EQ(degree(path(3)).score, (std::vector<double>{1, 2, 1}));
    EXPECT_EQ(degree(star(4)).score, (std::vector<double>{4, 1, 1, 1, 1}));
}

TEST(DegreeTest, MatchesAdjacencyRowSums) {
    const auto g = coin_graph(50, 0.1, 42);
    const auto a = testing::adjacency_matrix(g);
    const auto d = degree(g);
    for (NodeId u = 0; u < 50; ++u)
        EXPECT_EQ(d[u], static_cast<double>(std::count(a[u].begin(), a[u].end(), true)));
}

TEST(HarmonicTest, HandValues) {
    const auto p = harmonic(path(3));
    EXPECT_DOUBLE_EQ(p[0], 1.5);
    EXPECT_DOUBLE_EQ(p[1], 2.0);
    EXPECT_DOUBLE_EQ(p[2], 1.5);
    const auto s = harmonic(star(4));
    EXPECT_DOUBLE_EQ(s[0], 4.0);
    for (NodeId leaf = 1; leaf <= 4; ++leaf) EXPECT_DOUBLE_EQ(s[leaf], 2.5);
}

TEST(HarmonicTest, DisconnectedPairsContributeZero) {
    const auto h = harmonic(make_graph(4, {{0, 1}, {2, 3}}));
    EXPECT_EQ(h.score, (std::vector<double>{1, 1, 1, 1}));
    EXPECT_EQ(harmonic(make_graph(3, {})).score, (std::vector<double>{0, 0, 0}));
}

TEST(HarmonicTest, ExactMatchesAllPairsOracle) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto n = 20 + 15 * seed;
        const auto g = coin_graph(n, 3.0 / static_cast<double>(n), seed);
        const auto h = harmonic(g);
        const auto expected = testing::harmonic_oracle(g);
        for (NodeId u = 0; u < n; ++u) ASSERT_NEAR(h[u], expected[u], 1e-9) << "seed " << seed;
    }
}

TEST(HarmonicTest, SampledWithAllPivotsIsExact) {
    const auto g = coin_graph(80, 0.05, 9);
    const auto exact = harmonic(g);
    const auto sampled = harmonic(g, {80, 3});
    for (NodeId u = 0; u < 80; ++u) EXPECT_NEAR(sampled[u], exact[u], 1e-9);
}

TEST(HarmonicTest, SampledIsUnbiased) {
    const auto g = coin_graph(60, 0.06, 10);
    const auto exact = harmonic(g);
    std::vector<double> mean(60, 0.0);
    const int runs = 2000;
    for (int r = 0; r < runs; ++r) {
        const auto s = harmonic(g, {10, static_cast<std::uint64_t>(r)});
        for (NodeId u = 0; u < 60; ++u) mean[u] += s[u] / runs;
    }
    for (NodeId u = 0; u < 60; ++u) EXPECT_NEAR(mean[u], exact[u], 0.05 * exact[u] + 0.05) << u;
}

TEST(HarmonicTest, SampledDeterministicAndValidated) {
    const auto g = gnp(200, 0.03, 1);
    EXPECT_EQ(harmonic(g, {50, 7}).score, harmonic(g, {50, 7}).score);
    EXPECT_THROW(harmonic(g, {201, 7}), ArgumentError);
}

TEST(PageRankTest, Symmetric) {
    for (double x : pagerank(path(2)).score) EXPECT_NEAR(x, 0.5, 1e-12);
    for (double x : pagerank(complete(3)).score) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
}

TEST(PageRankTest, EdgePlusIsolatedMatchesLinearSolve) {
    const auto g = make_graph(3, {{0, 1}});
    const auto pr = pagerank(g);
    const auto expected = testing::pagerank_oracle(g, 0.8);
    for (NodeId u = 0; u < 3; ++u) EXPECT_NEAR(pr[u], expected[u], 1e-8);
    // Closed form: isolated c keeps (1 - a)/n + a * c / n, so c = (1 - a) / (n - a) = 0.2 / 2.2.
    EXPECT_NEAR(pr[2], 0.2 / 2.2, 1e-9);
}

TEST(PageRankTest, RandomGraphsMatchOracleAndSumToOne) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = coin_graph(40 + 10 * seed, 0.05, seed + 100);
        const auto pr = pagerank(g);
        const auto expected = testing::pagerank_oracle(g, 0.8);
        EXPECT_NEAR(sum(pr.score), 1.0, 1e-8);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            ASSERT_GE(pr[u], 0.0);
            ASSERT_NEAR(pr[u], expected[u], 1e-8);
        }
    }
}

TEST(PageRankTest, PermutationEquivariant) {
    const auto g = coin_graph(70, 0.06, 5);
    const auto perm = testing::random_permutation(70, 6);
    const auto a = pagerank(g);
    const auto b = pagerank(testing::permute(g, perm));
    for (NodeId u = 0; u < 70; ++u) EXPECT_NEAR(a[u], b[perm[u]], 1e-12);
}

TEST(PageRankTest, Errors) {
    EXPECT_THROW(pagerank(Graph{}), ArgumentError);
    EXPECT_THROW(pagerank(path(3), {1.0, 1e-10, 200}), ArgumentError);
    EXPECT_THROW(pagerank(path(3), {0.8, 0.0, 200}), ArgumentError);
    try {
        pagerank(coin_graph(30, 0.2, 1), {0.8, 1e-10, 2});
        FAIL() << "expected non-convergence";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.residual(), 1e-10);
        EXPECT_EQ(e.iterations(), 2);
    }
}

TEST(KCoreTest, PathStarCycleClique) {
    for (double s : k_core(path(5)).score) EXPECT_EQ(s, 1.0);
    for (double s : k_core(star(4)).score) EXPECT_EQ(s, 1.0);
    for (double s : k_core(cycle(5)).score) EXPECT_EQ(s, 2.0);
    for (double s : k_core(complete(4)).score) EXPECT_EQ(s, 3.0);
    EXPECT_EQ(k_core(make_graph(2, {})).score, (std::vector<double>{0, 0}));
}

TEST(KCoreTest, MatchesNaivePeelingAndInducedDegreeProperty) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = coin_graph(60, 0.04 + 0.01 * static_cast<double>(seed), seed);
        const auto shells = core_numbers(g);
        EXPECT_EQ(shells, testing::core_oracle(g)) << "seed " << seed;
        const auto top = *std::max_element(shells.begin(), shells.end());
        for (std::uint32_t k = 1; k <= top; ++k)
            for (NodeId u = 0; u < g.node_count(); ++u) {
                if (shells[u] < k) continue;
                std::uint32_t d = 0;
                for (NodeId v : g.neighbors(u)) d += shells[v] >= k;
                ASSERT_GE(d, k);
            }
    }
}

TEST(ShapleyTest, ClosedForms) {
    EXPECT_EQ(shapley_g1(make_graph(1, {})).score, (std::vector<double>{1.0}));
    for (double s : shapley_g1(complete(3)).score) EXPECT_NEAR(s, 1.0, 1e-15);
    const auto s = shapley_g1(star(4));
    EXPECT_NEAR(s[0], 2.2, 1e-12);
    for (NodeId leaf = 1; leaf <= 4; ++leaf) EXPECT_NEAR(s[leaf], 0.7, 1e-12);
    EXPECT_NEAR(sum(s.score), 5.0, 1e-12);
}

TEST(ShapleyTest, MatchesPermutationSampling) {
    const auto s = shapley_g1(star(4));
    const auto mc = testing::shapley_g1_monte_carlo(star(4), 100000, 1);
    for (NodeId u = 0; u < 5; ++u) EXPECT_NEAR(s[u], mc[u], 0.02);
    const auto g = coin_graph(9, 0.35, 4);
    const auto s2 = shapley_g1(g);
    const auto mc2 = testing::shapley_g1_monte_carlo(g, 100000, 2);
    for (NodeId u = 0; u < 9; ++u) EXPECT_NEAR(s2[u], mc2[u], 0.02);
}

TEST(ShapleyTest, EfficiencySum) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = coin_graph(150, 0.03, seed);
        EXPECT_NEAR(sum(shapley_g1(g).score), 150.0, 1e-6);
    }
}

TEST(GddTest, FirstPickIsMaximumDegree) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = coin_graph(50, 0.1, seed);
        const auto order = gdd_rank(g, {0.05, 1});
        EXPECT_EQ(g.degree(order[0]), g.max_degree());
    }
}

TEST(GddTest, StarSecondPickIsSmallestLeaf) {
    const auto g = star(4);
    EXPECT_DOUBLE_EQ(gdd_score(1, 1, 0, 0.05, GddVariant::generalized), -1.0);
    EXPECT_EQ(gdd_rank(g, {0.05, 2}), (std::vector<NodeId>{0, 1}));
}

TEST(GddTest, FullRunIsPermutation) {
    const auto g = coin_graph(40, 0.1, 3);
    auto order = gdd_rank(g, {0.05, 40});
    std::sort(order.begin(), order.end());
    std::vector<NodeId> all(40);
    std::iota(all.begin(), all.end(), NodeId{0});
    EXPECT_EQ(order, all);
}

TEST(GddTest, DiscountVariantsOnHandCase) {
    // Star 0-{1,2,3} with tail 3-4-5.
    const auto g = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}});
    const std::vector<NodeId> expected{0, 4, 1, 2, 5, 3};
    EXPECT_EQ(gdd_rank(g, {0.05, 6, GddVariant::discount_only}), expected);
    EXPECT_EQ(gdd_rank(g, {0.05, 6, GddVariant::degree_discount}), expected);
}

TEST(GddTest, IncrementalUpdatesMatchRecomputation) {
    for (auto variant : {GddVariant::generalized, GddVariant::degree_discount, GddVariant::discount_only}) {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const auto g = coin_graph(30, 0.15, seed + 50);
            const double p = 0.05 + 0.1 * static_cast<double>(seed % 3);
            const auto expected = testing::greedy_discount_oracle(
                g, 30, [&](double d, double t, double t_out) { return gdd_score(d, t, t_out, p, variant); });
            EXPECT_EQ(gdd_rank(g, {p, 30, variant}), expected) << "seed " << seed;
        }
    }
}

TEST(GddTest, Errors) {
    EXPECT_THROW(gdd_rank(path(3), {0.05, 4}), ArgumentError);
    EXPECT_THROW(gdd_rank(path(3), {0.0, 1}), ArgumentError);
}

TEST(LtcTest, HandCases) {
    for (double s : ltc(complete(3)).score) EXPECT_DOUBLE_EQ(s, 1.0);
    EXPECT_DOUBLE_EQ(ltc(path(4))[0], 0.5);
    const auto s = ltc(star(4));
    for (NodeId leaf = 1; leaf <= 4; ++leaf) EXPECT_DOUBLE_EQ(s[leaf], 1.0);
}

TEST(LtcTest, Bounds) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = coin_graph(80, 0.06, seed);
        const auto s = ltc(g);
        for (NodeId u = 0; u < 80; ++u) {
            EXPECT_GE(s[u] + 1e-12, (1.0 + static_cast<double>(g.degree(u))) / 80.0);
            EXPECT_LE(s[u], 1.0);
        }
    }
}

TEST(DeterminismTest, ParallelMatchesSerialBitForBit) {
    const auto g = preferential_attachment(3000, 4, 17);
    set_workers(1);
    const auto h1 = harmonic(g, {100, 5});
    const auto p1 = pagerank(g);
    const auto l1 = ltc(g);
    set_workers(4);
    const auto h4 = harmonic(g, {100, 5});
    const auto p4 = pagerank(g);
    const auto l4 = ltc(g);
    EXPECT_EQ(h1.score, h4.score);
    EXPECT_EQ(p1.score, p4.score);
    EXPECT_EQ(l1.score, l4.score);
}

} // namespace
} // namespace tcrank
