#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace morseprof;

TEST(Collapse, RandomCollapsibleComplexesCollapse)
{
    std::mt19937_64 rng(301);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = oracle::random_collapsible(rng, 30);
        const auto cert = collapse_search(k);
        ASSERT_EQ(cert.status, CollapseStatus::Collapsible) << "trial " << trial;
        EXPECT_EQ(cert.sequence.size() * 2 + 1, k.size());
        EXPECT_TRUE(replay_collapse(k, cert.sequence));
        const auto m = matching_from_collapse(k, cert.sequence);
        EXPECT_TRUE(is_acyclic(k, m));
        EXPECT_EQ(critical_counts(k, m).total(), 1U);
        EXPECT_LE(cert.states_visited, cert.node_budget);
    }
}

TEST(Collapse, ReplayRejectsBadSequences)
{
    SimplicialComplex k;
    k.add_simplex({0, 1, 2}, Closure::Auto);
    const auto cert = collapse_search(k);
    ASSERT_EQ(cert.status, CollapseStatus::Collapsible);
    auto truncated = cert.sequence;
    truncated.pop_back();
    EXPECT_FALSE(replay_collapse(k, truncated));
    // edge {0,1} is not free before the triangle is gone
    const auto e = *k.find(std::vector<VertexId>{0, 1});
    const auto v = *k.find(std::vector<VertexId>{0});
    EXPECT_FALSE(replay_collapse(k, {{v, e}}));
}

TEST(Collapse, NonCollapsibleComplexes)
{
    EXPECT_EQ(collapse_search(catalog::circle()).status, CollapseStatus::NotCollapsible);

    SimplicialComplex two_points;
    two_points.add_simplex({0});
    two_points.add_simplex({1});
    EXPECT_EQ(collapse_search(two_points).status, CollapseStatus::NotCollapsible);

    SimplicialComplex hollow;
    for (auto t : {std::vector<VertexId>{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}) hollow.add_simplex(t, Closure::Auto);
    EXPECT_EQ(collapse_search(hollow).status, CollapseStatus::NotCollapsible);
}

TEST(Collapse, DunceHatRefutedDefinitely)
{
    const auto cert = collapse_search(catalog::dunce_hat());
    EXPECT_EQ(cert.status, CollapseStatus::NotCollapsible);
    EXPECT_TRUE(cert.sequence.empty());
    EXPECT_LT(cert.states_visited, cert.node_budget);
}

TEST(Collapse, ConeOverDunceHatCollapses)
{
    const auto k = cone(catalog::dunce_hat());
    const auto cert = collapse_search(k);
    ASSERT_EQ(cert.status, CollapseStatus::Collapsible);
    EXPECT_TRUE(replay_collapse(k, cert.sequence));
}

TEST(Collapse, BudgetExhaustionIsInconclusive)
{
    const auto k = cone(catalog::dunce_hat());
    const auto cert = collapse_search(k, 3);
    EXPECT_EQ(cert.status, CollapseStatus::Inconclusive);
    EXPECT_LE(cert.states_visited, 3U);
}

TEST(Collapse, EmptyComplexThrows)
{
    try {
        (void)collapse_search(SimplicialComplex{});
        FAIL() << "expected EmptyComplex";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyComplex);
    }
}

TEST(Collapse, SequenceFromSingleCriticalMatching)
{
    std::mt19937_64 rng(307);
    std::size_t converted = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = oracle::random_collapsible(rng, 30);
        const auto g = greedy_incremental(Filtration::constant(k));
        const auto seq = collapse_from_matching(k, g.matching);
        if (g.per_level.back().total() == 1) {
            ASSERT_TRUE(seq.has_value());
            EXPECT_TRUE(replay_collapse(k, *seq));
            // same pairs as the matching
            EXPECT_EQ(matching_from_collapse(k, *seq).partners(), g.matching.partners());
            ++converted;
        } else {
            EXPECT_FALSE(seq.has_value());
        }
    }
    EXPECT_GT(converted, 0U);
}

TEST(Collapse, CollapseSucceedsIffExactMorseIsOne)
{
    std::mt19937_64 rng(311);
    ExactOptions independent;
    independent.use_collapse_bounds = false;
    independent.per_dimension = false;
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = trial % 2 ? oracle::random_complex(rng, 20) : oracle::random_collapsible(rng, 20);
        const bool collapses = collapse_search(k).status == CollapseStatus::Collapsible;
        EXPECT_EQ(collapses, exact_min_morse(k, independent).total == 1) << "trial " << trial;
    }
}
