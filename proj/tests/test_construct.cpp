#include <gtest/gtest.h>

#include <treedepth/construct.hpp>
#include <treedepth/oracle.hpp>

using namespace treedepth;

namespace {

std::optional<RootedForest> construct_exact(const Graph& g, int d) {
    return construct_elim_forest(g, dfs_elimination_forest(g), d, ExactRing{});
}

}  // namespace

TEST(Construct, Examples) {
    EXPECT_FALSE(construct_exact(oracle::clique(2), 1));

    auto star = construct_exact(oracle::path(3), 2);
    ASSERT_TRUE(star);
    EXPECT_EQ(*star, RootedForest({1, -1, 1}));

    auto chain = construct_exact(oracle::clique(3), 3);
    ASSERT_TRUE(chain);
    EXPECT_EQ(chain->max_depth(), 3);
    EXPECT_EQ(chain->roots().size(), 1u);

    auto single = construct_exact(Graph(1), 1);
    ASSERT_TRUE(single);
    EXPECT_EQ(*single, RootedForest({-1}));

    auto p7 = construct_exact(oracle::path(7), 3);
    ASSERT_TRUE(p7);
    EXPECT_TRUE(validate_elimination_forest(oracle::path(7), *p7, 3));

    EXPECT_FALSE(construct_exact(oracle::clique(4), 3));
}

TEST(Construct, RejectsAReferenceForestThatIsNotAnEliminationForest) {
    EXPECT_THROW(construct_elim_forest(oracle::path(3), RootedForest({-1, -1, -1}), 3, ExactRing{}),
                 std::invalid_argument);
}

TEST(Construct, AgreesWithBruteForce) {
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : oracle::connected_graph_catalog(n)) {
            const int td = oracle::brute_td(g);
            for (int d = 1; d <= 5; ++d) {
                auto f = construct_exact(g, d);
                EXPECT_EQ(f.has_value(), td <= d);
                if (f) {
                    EXPECT_TRUE(validate_elimination_forest(g, *f, d));
                }
            }
        }
}

TEST(Construct, ModularRingNeverReturnsAnInvalidForest) {
    // small moduli make false zeros likely; outputs must still be valid
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = oracle::random_gnm(7, 5 + seed % 9, seed);
        const int td = oracle::brute_td(g);
        for (std::uint64_t p : {2ull, 3ull, 5ull, 1000000007ull}) {
            auto f = construct_elim_forest(g, dfs_elimination_forest(g), td, ModRing64(p));
            if (f) {
                EXPECT_TRUE(validate_elimination_forest(g, *f, td));
            }
            EXPECT_FALSE(construct_elim_forest(g, dfs_elimination_forest(g), td - 1, ModRing64(p)));
        }
    }
}

TEST(Deterministic, Examples) {
    EXPECT_TRUE(solve_deterministic(Graph(0), 0).feasible());
    auto k4 = solve_deterministic(oracle::clique(4), 3);
    EXPECT_FALSE(k4.feasible());
    EXPECT_TRUE(k4.certified);
    auto p3 = solve_deterministic(oracle::path(3), 2);
    ASSERT_TRUE(p3.feasible());
    EXPECT_EQ(*p3.forest, RootedForest({1, -1, 1}));
}

TEST(Deterministic, AgreesWithBruteForceOnConnectedAndDisconnectedGraphs) {
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : oracle::connected_graph_catalog(n)) {
            const int td = oracle::brute_td(g);
            for (int d = std::max(1, td - 1); d <= td + 1; ++d) {
                auto out = solve_deterministic(g, d);
                ASSERT_EQ(out.feasible(), td <= d);
                if (out.feasible()) {
                    EXPECT_TRUE(validate_elimination_forest(g, *out.forest, d));
                } else {
                    EXPECT_TRUE(out.certified);
                }
            }
        }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = oracle::random_gnm(10, 6 + seed % 8, seed);
        const int td = oracle::brute_td(g);
        for (int d = std::max(1, td - 1); d <= td; ++d) EXPECT_EQ(solve_deterministic(g, d).feasible(), td <= d);
    }
}

TEST(Deterministic, WorkBudgetGivesUncertifiedRejection) {
    std::atomic<std::uint64_t> work{0};
    CountOptions opts;
    opts.work_counter = &work;
    opts.work_limit = 5;
    auto out = solve_deterministic(oracle::path(12), 4, opts);
    EXPECT_FALSE(out.feasible());
    EXPECT_FALSE(out.certified);
}

TEST(MergeComponents, PlacesLocalForests) {
    Graph g(4, {{0, 2}, {1, 3}});
    auto comps = connected_components(g);
    RootedForest f = merge_component_forests(4, comps, {RootedForest({-1, 0}), RootedForest({1, -1})});
    EXPECT_EQ(f, RootedForest({-1, 3, 0, -1}));
}
