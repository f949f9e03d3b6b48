#pragma once

// JSON and CSV renderings of the library's results.

#include <string>
#include <vector>

#include <json.hpp>

#include "collapse.hpp"
#include "exact_morse.hpp"
#include "filtration.hpp"
#include "matching.hpp"
#include "persistence.hpp"
#include "profile.hpp"

namespace morseprof::io {

using nlohmann::json;

/// Bars of positive length (zero-length pairs carry no homology at any level).
inline json barcode_json(const PersistencePairing& pairing)
{
    json out = json::array();
    for (const Bar& bar : pairing.bars()) {
        if (bar.zero_length()) continue;
        json entry = {{"dim", bar.dim}, {"birth", bar.birth_grade}};
        entry["death"] = bar.essential() ? json(nullptr) : json(bar.death_grade);
        out.push_back(std::move(entry));
    }
    return out;
}

inline std::string barcode_csv(const PersistencePairing& pairing)
{
    std::string out = "dim,birth,death\n";
    for (const Bar& bar : pairing.bars()) {
        if (bar.zero_length()) continue;
        out += std::to_string(bar.dim) + "," + format_grade(bar.birth_grade) + ",";
        if (!bar.essential()) out += format_grade(bar.death_grade);
        out += "\n";
    }
    return out;
}

inline json spikes_json(const SpikeReport& report)
{
    json out = json::array();
    for (const Spike& s : report.spikes) {
        out.push_back({{"level", s.level},
                       {"confidence", std::string(to_string(s.confidence))},
                       {"values", {s.before, s.at, s.after}},
                       {"homology_iso", s.homology_iso}});
    }
    return out;
}

inline json profile_json(const MorseProfile& profile, const SpikeReport& spikes)
{
    json levels = json::array();
    for (const LevelProfile& lp : profile.levels) {
        json entry = {{"grade", lp.grade},
                      {"simplices", lp.num_simplices},
                      {"betti", lp.betti},
                      {"greedy_c", lp.greedy.by_dim},
                      {"greedy_total", lp.greedy.total()}};
        entry["exact_m"] = lp.exact_per_dim ? json(*lp.exact_per_dim) : json(nullptr);
        entry["exact_total"] = lp.exact_total ? json(*lp.exact_total) : json(nullptr);
        levels.push_back(std::move(entry));
    }
    return {{"levels", std::move(levels)}, {"spikes", spikes_json(spikes)}};
}

namespace detail {
inline std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(v[i]);
    }
    return s;
}
} // namespace detail

/// One row per level; vector-valued cells are ';'-separated.
inline std::string profile_csv(const MorseProfile& profile, const SpikeReport& spikes)
{
    std::string out = "level,grade,simplices,betti,greedy_c,greedy_total,exact_m,exact_total,spike\n";
    for (std::size_t i = 0; i < profile.levels.size(); ++i) {
        const auto& lp = profile.levels[i];
        std::string spike;
        for (const auto& s : spikes.spikes) {
            if (s.level == i) spike = std::string(to_string(s.confidence));
        }
        out += std::to_string(i) + "," + format_grade(lp.grade) + "," + std::to_string(lp.num_simplices) + "," +
               detail::join(lp.betti) + "," + detail::join(lp.greedy.by_dim) + "," +
               std::to_string(lp.greedy.total()) + "," + (lp.exact_per_dim ? detail::join(*lp.exact_per_dim) : "") +
               "," + (lp.exact_total ? std::to_string(*lp.exact_total) : "") + "," + spike + "\n";
    }
    return out;
}

inline json matching_json(const MorseMatching& matching)
{
    json pairs = json::array();
    for (auto [sigma, tau] : matching.pairs()) pairs.push_back({sigma, tau});
    return {{"pairs", std::move(pairs)}, {"critical", matching.critical()}};
}

inline std::string to_string(CollapseStatus status)
{
    switch (status) {
    case CollapseStatus::Collapsible: return "collapsible";
    case CollapseStatus::NotCollapsible: return "not-collapsible";
    case CollapseStatus::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

inline json certificate_json(const CollapseCertificate& cert)
{
    json seq = json::array();
    for (auto [sigma, tau] : cert.sequence) seq.push_back({sigma, tau});
    return {{"status", to_string(cert.status)},
            {"sequence", std::move(seq)},
            {"states_visited", cert.states_visited},
            {"node_budget", cert.node_budget}};
}

inline json exact_json(const ExactMorse& exact)
{
    return {{"M", exact.total},
            {"m", exact.per_dim_min},
            {"witness_counts", exact.witness_counts.by_dim},
            {"witness", matching_json(exact.witness)}};
}

} // namespace morseprof::io
