#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact_morse.hpp"
#include "filtration.hpp"
#include "matching.hpp"
#include "persistence.hpp"

namespace morseprof {

/// One filtration level of a Morse complexity profile.
struct LevelProfile {
    double grade = 0.0;
    std::size_t num_simplices = 0;
    BettiVector betti;
    CriticalCounts greedy;                     ///< C(K_t) from the greedy matching
    std::optional<std::size_t> exact_total;    ///< M(K_t), when computed
    std::optional<std::vector<std::size_t>> exact_per_dim;

    bool exact() const noexcept { return exact_total.has_value(); }
};

struct MorseProfile {
    std::vector<LevelProfile> levels;
};

struct ProfileOptions {
    /// Levels whose sublevel complex has at most this many simplices also get
    /// the exact minimal Morse number.
    std::size_t exact_cap = kDefaultExactCap;
    std::size_t node_budget = kDefaultNodeBudget;
};

/// Greedy profile, Betti numbers from `pairing`, and exact values on small
/// levels.
inline MorseProfile morse_complexity_profile(const Filtration& filtration, const PersistencePairing& pairing,
                                             const GreedyProfile& greedy, const ProfileOptions& options = {})
{
    MorseProfile out;
    for (std::size_t level = 0; level < filtration.num_levels(); ++level) {
        LevelProfile lp;
        lp.grade = filtration.levels()[level];
        lp.num_simplices = filtration.level_size(level);
        lp.betti = betti_at(pairing, lp.grade);
        lp.greedy = greedy.per_level.at(level);
        // trailing dimensions absent at this level
        lp.betti.resize(lp.greedy.by_dim.size());
        if (lp.num_simplices <= options.exact_cap) {
            ExactOptions eo;
            eo.simplex_cap = options.exact_cap;
            eo.node_budget = options.node_budget;
            const auto exact = exact_min_morse(filtration.complex().prefix(lp.num_simplices), eo);
            lp.exact_total = exact.total;
            lp.exact_per_dim = exact.per_dim_min;
        }
        out.levels.push_back(std::move(lp));
    }
    return out;
}

inline MorseProfile morse_complexity_profile(const Filtration& filtration, const ProfileOptions& options = {})
{
    return morse_complexity_profile(filtration, reduce(filtration), greedy_incremental(filtration), options);
}

enum class Confidence { Exact, Heuristic };

inline std::string_view to_string(Confidence c)
{
    return c == Confidence::Exact ? "exact" : "heuristic";
}

struct Spike {
    std::size_t level = 0;
    Confidence confidence = Confidence::Heuristic;
    /// Values at levels t-1, t, t+1 used for the decision: exact M where
    /// known, greedy C otherwise.
    std::size_t before = 0;
    std::size_t at = 0;
    std::size_t after = 0;
    bool homology_iso = true;
};

struct SpikeReport {
    std::vector<Spike> spikes;
};

/// Morse spikes: interior levels t where homology is unchanged across
/// t-1 .. t+1 and the Morse number at t strictly exceeds both neighbours.
///
/// A spike is `exact` when M(K_t) is known and strictly exceeds an upper
/// bound on each neighbour (its exact M, or its greedy C, which is never
/// below M). Otherwise the strict inequalities are checked on the greedy C
/// values alone and the spike is labelled `heuristic`.
inline SpikeReport detect_spikes(const MorseProfile& profile, const PersistencePairing& pairing)
{
    const auto& levels = pairing.levels();
    if (levels.size() != profile.levels.size()) {
        throw Error(ErrorCode::MismatchedInputs, "profile and pairing have different level counts");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] != profile.levels[i].grade) {
            throw Error(ErrorCode::MismatchedInputs, "profile and pairing disagree on level grades");
        }
    }
    SpikeReport report;
    for (std::size_t t = 1; t + 1 < profile.levels.size(); ++t) {
        if (!is_iso_window(pairing, levels[t - 1], levels[t + 1])) continue;
        const auto& prev = profile.levels[t - 1];
        const auto& cur = profile.levels[t];
        const auto& next = profile.levels[t + 1];
        auto upper = [](const LevelProfile& lp) { return lp.exact() ? *lp.exact_total : lp.greedy.total(); };
        if (cur.exact() && *cur.exact_total > upper(prev) && *cur.exact_total > upper(next)) {
            report.spikes.push_back({t, Confidence::Exact, upper(prev), *cur.exact_total, upper(next), true});
            continue;
        }
        const auto c_prev = prev.greedy.total();
        const auto c_cur = cur.greedy.total();
        const auto c_next = next.greedy.total();
        if (c_cur > c_prev && c_cur > c_next) {
            report.spikes.push_back({t, Confidence::Heuristic, c_prev, c_cur, c_next, true});
        }
    }
    return report;
}

} // namespace morseprof
