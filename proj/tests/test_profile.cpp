#include <gtest/gtest.h>

#include <random>

#include <morseprof/io.hpp>

#include "oracles.hpp"

using namespace morseprof;

TEST(Profile, DunceHatFiltrationExact)
{
    const auto f = catalog::dunce_hat_filtration();
    const auto pairing = reduce(f);
    const auto profile = morse_complexity_profile(f, pairing, greedy_incremental(f), {.exact_cap = f.size()});
    ASSERT_EQ(profile.levels.size(), 3U);
    std::vector<std::size_t> m;
    for (const auto& lp : profile.levels) {
        ASSERT_TRUE(lp.exact());
        m.push_back(*lp.exact_total);
    }
    EXPECT_EQ(m, (std::vector<std::size_t>{1, 3, 1}));
    EXPECT_EQ(*profile.levels[1].exact_per_dim, (std::vector<std::size_t>{1, 1, 1}));
    EXPECT_EQ(profile.levels[1].num_simplices, 49U);

    const auto spikes = detect_spikes(profile, pairing);
    ASSERT_EQ(spikes.spikes.size(), 1U);
    EXPECT_EQ(spikes.spikes[0].level, 1U);
    EXPECT_EQ(spikes.spikes[0].confidence, Confidence::Exact);
    EXPECT_EQ(spikes.spikes[0].at, 3U);
    EXPECT_TRUE(spikes.spikes[0].homology_iso);
}

TEST(Profile, DunceHatFiltrationDefaultCapIsHeuristic)
{
    const auto f = catalog::dunce_hat_filtration();
    const auto pairing = reduce(f);
    const auto profile = morse_complexity_profile(f);
    EXPECT_TRUE(profile.levels[0].exact());
    EXPECT_FALSE(profile.levels[1].exact());
    const auto spikes = detect_spikes(profile, pairing);
    ASSERT_EQ(spikes.spikes.size(), 1U);
    EXPECT_EQ(spikes.spikes[0].level, 1U);
    EXPECT_EQ(spikes.spikes[0].confidence, Confidence::Heuristic);
}

TEST(Profile, PentagonHasNoSpikes)
{
    const auto f = catalog::pentagon_rips();
    const auto pairing = reduce(f);
    const auto profile = morse_complexity_profile(f, pairing, greedy_incremental(f), {.exact_cap = f.size()});
    std::vector<std::size_t> c;
    for (const auto& lp : profile.levels) c.push_back(lp.greedy.total());
    EXPECT_EQ(c, (std::vector<std::size_t>{5, 2, 1}));
    for (const auto& lp : profile.levels) EXPECT_EQ(*lp.exact_total, lp.greedy.total());
    EXPECT_TRUE(detect_spikes(profile, pairing).spikes.empty());
}

TEST(Profile, ExactBetweenBettiAndGreedy)
{
    std::mt19937_64 rng(501);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::size_t> n(3, 6);
        const auto f = vietoris_rips(DistanceMatrix::from_points(oracle::random_points(rng, n(rng))), 2, std::nullopt);
        const auto pairing = reduce(f);
        const auto profile = morse_complexity_profile(f, pairing, greedy_incremental(f), {.exact_cap = 25});
        for (const auto& lp : profile.levels) {
            std::size_t betti_sum = 0;
            for (auto b : lp.betti) betti_sum += b;
            EXPECT_GE(lp.greedy.total(), betti_sum);
            if (!lp.exact()) continue;
            EXPECT_LE(*lp.exact_total, lp.greedy.total());
            EXPECT_GE(*lp.exact_total, betti_sum);
        }
        for (const auto& s : detect_spikes(profile, pairing).spikes) {
            ASSERT_GT(s.level, 0U);
            ASSERT_LT(s.level + 1, profile.levels.size());
            EXPECT_TRUE(is_iso_window(pairing, f.levels()[s.level - 1], f.levels()[s.level + 1]));
            EXPECT_GT(s.at, s.before);
            EXPECT_GT(s.at, s.after);
        }
    }
}

TEST(Profile, MismatchedInputsThrow)
{
    const auto a = catalog::dunce_hat_filtration();
    const auto b = catalog::pentagon_rips();
    const auto profile = morse_complexity_profile(a);
    try {
        (void)detect_spikes(profile, reduce(b));
        FAIL() << "expected MismatchedInputs";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MismatchedInputs);
    }
}

TEST(Profile, JsonShape)
{
    const auto f = catalog::dunce_hat_filtration();
    const auto pairing = reduce(f);
    const auto profile = morse_complexity_profile(f, pairing, greedy_incremental(f), {.exact_cap = f.size()});
    const auto j = io::profile_json(profile, detect_spikes(profile, pairing));
    ASSERT_EQ(j["levels"].size(), 3U);
    EXPECT_EQ(j["levels"][1]["exact_total"], 3);
    EXPECT_EQ(j["levels"][1]["greedy_total"], 3);
    EXPECT_EQ(j["spikes"][0]["confidence"], "exact");
    const auto bars = io::barcode_json(pairing);
    ASSERT_EQ(bars.size(), 1U);
    EXPECT_TRUE(bars[0]["death"].is_null());
    EXPECT_EQ(io::barcode_csv(pairing), "dim,birth,death\n0,0,\n");
}
