#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace morseprof;

namespace {

std::vector<std::optional<std::size_t>> oracle_partners(const MorseMatching& m)
{
    std::vector<std::optional<std::size_t>> out(m.size());
    for (SimplexId i = 0; i < m.size(); ++i) {
        if (!m.is_critical(i)) out[i] = m.partner(i);
    }
    return out;
}

/// Random (not necessarily acyclic) matching.
MorseMatching random_matching(const SimplicialComplex& k, std::mt19937_64& rng)
{
    MorseMatching m(k.size());
    std::vector<std::pair<SimplexId, SimplexId>> edges;
    for (SimplexId t = 0; t < k.size(); ++t) {
        for (SimplexId f : k.faces(t)) edges.emplace_back(f, t);
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    std::bernoulli_distribution take(0.6);
    for (auto [f, t] : edges) {
        if (m.is_critical(f) && m.is_critical(t) && take(rng)) m.set_pair(f, t);
    }
    return m;
}

Filtration random_rips(std::mt19937_64& rng, std::size_t max_points, int max_dim)
{
    std::uniform_int_distribution<std::size_t> n(2, max_points);
    return vietoris_rips(DistanceMatrix::from_points(oracle::random_points(rng, n(rng))), max_dim, std::nullopt);
}

SimplicialComplex circle_complex()
{
    SimplicialComplex k;
    k.add_simplex({0, 1}, Closure::Auto);
    k.add_simplex({1, 2}, Closure::Auto);
    k.add_simplex({0, 2}, Closure::Auto);
    return k;
}

SimplexId id_of(const SimplicialComplex& k, std::vector<VertexId> v) { return *k.find(v); }

} // namespace

TEST(Matching, AcyclicityAgreesWithOracle)
{
    std::mt19937_64 rng(201);
    std::size_t cyclic = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto k = oracle::random_complex(rng, 40);
        const auto m = random_matching(k, rng);
        const bool expected = oracle::acyclic(oracle::simplices_of(k), oracle_partners(m));
        EXPECT_EQ(is_acyclic(k, m), expected);
        cyclic += !expected;
    }
    EXPECT_GT(cyclic, 0U); // the sample exercises both outcomes
}

TEST(Matching, CycleRejectedOnCircle)
{
    const auto k = circle_complex();
    IncrementalMatcher matcher(k);
    EXPECT_TRUE(matcher.try_add_pair(id_of(k, {0}), id_of(k, {0, 1})));
    EXPECT_TRUE(matcher.try_add_pair(id_of(k, {1}), id_of(k, {1, 2})));
    EXPECT_TRUE(matcher.would_close_cycle(id_of(k, {2}), id_of(k, {0, 2})));
    EXPECT_FALSE(matcher.try_add_pair(id_of(k, {2}), id_of(k, {0, 2})));
    // already matched
    EXPECT_FALSE(matcher.try_add_pair(id_of(k, {0}), id_of(k, {0, 2})));
    EXPECT_TRUE(is_acyclic(k, matcher.matching()));
}

TEST(Matching, NonIncidentPairThrows)
{
    const auto k = circle_complex();
    IncrementalMatcher matcher(k);
    try {
        matcher.try_add_pair(id_of(k, {2}), id_of(k, {0, 1}));
        FAIL() << "expected NotIncident";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotIncident);
    }
}

TEST(Matching, FromPairsValidates)
{
    const auto k = circle_complex();
    EXPECT_THROW((void)MorseMatching::from_pairs(k, {{id_of(k, {2}), id_of(k, {0, 1})}}), Error);
    EXPECT_THROW((void)MorseMatching::from_pairs(k, {{0, 99}}), Error);
    EXPECT_THROW((void)MorseMatching::from_pairs(
                     k, {{id_of(k, {0}), id_of(k, {0, 1})}, {id_of(k, {0}), id_of(k, {0, 2})}}),
                 Error);
    const auto m = MorseMatching::from_pairs(k, {{id_of(k, {0}), id_of(k, {0, 1})}});
    EXPECT_EQ(critical_counts(k, m).by_dim, (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(m.critical().size(), 4U);
}

TEST(Greedy, PerLevelCountsMatchPrefixMatchings)
{
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 80; ++trial) {
        const auto f = random_rips(rng, 9, 3);
        const auto g = greedy_incremental(f);
        ASSERT_EQ(g.per_level.size(), f.num_levels());
        for (std::size_t l = 0; l < f.num_levels(); ++l) {
            const auto n = f.level_size(l);
            const auto k = f.complex().prefix(n);
            const auto m = g.matching.prefix(n);
            EXPECT_EQ(critical_counts(k, m), g.per_level[l]);
            EXPECT_TRUE(is_acyclic(k, m));
            EXPECT_TRUE(oracle::acyclic(oracle::simplices_of(k), oracle_partners(m)));
        }
    }
}

TEST(Greedy, WeakMorseInequalitiesAndEuler)
{
    std::mt19937_64 rng(223);
    for (int trial = 0; trial < 80; ++trial) {
        const auto f = random_rips(rng, 10, 2);
        const auto g = greedy_incremental(f);
        const auto pairing = reduce(f);
        for (std::size_t l = 0; l < f.num_levels(); ++l) {
            const auto k = f.complex().prefix(f.level_size(l));
            const auto b = betti_at(pairing, f.levels()[l]);
            const auto& c = g.per_level[l];
            for (std::size_t p = 0; p < b.size(); ++p) EXPECT_GE(c[p], b[p]);
            EXPECT_EQ(c.alternating_sum(), k.euler_characteristic());
        }
    }
}

TEST(Greedy, DunceHatFiltration)
{
    const auto g = greedy_incremental(catalog::dunce_hat_filtration());
    ASSERT_EQ(g.per_level.size(), 3U);
    EXPECT_EQ(g.per_level[0].total(), 1U);
    EXPECT_GE(g.per_level[1].total(), 2U);
    EXPECT_EQ(g.per_level[1].alternating_sum(), 1);
    EXPECT_EQ(g.per_level[2].total(), 1U);
}

TEST(Greedy, Pentagon)
{
    const auto g = greedy_incremental(catalog::pentagon_rips());
    ASSERT_EQ(g.per_level.size(), 3U);
    EXPECT_EQ(g.per_level[0].by_dim, (std::vector<std::size_t>{5}));
    EXPECT_EQ(g.per_level[1].by_dim, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(g.per_level[2].total(), 1U);
}

TEST(Greedy, CollapsibleInsertionOrderGivesOneCritical)
{
    // a full simplex inserted face-first collapses completely
    SimplicialComplex k;
    k.add_simplex({0, 1, 2, 3, 4}, Closure::Auto);
    const auto g = greedy_incremental(Filtration::constant(k));
    EXPECT_EQ(g.per_level.back().total(), 1U);
}
