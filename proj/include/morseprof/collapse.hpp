#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "matching.hpp"
#include "simplicial_complex.hpp"

namespace morseprof {

enum class CollapseStatus {
    Collapsible,    ///< certificate found
    NotCollapsible, ///< search space exhausted without reaching a vertex
    Inconclusive,   ///< state budget hit first
};

/// Outcome of an exhaustive collapse search.
struct CollapseCertificate {
    CollapseStatus status = CollapseStatus::Inconclusive;
    /// Elementary collapses (free face, coface) in the order they are applied.
    std::vector<std::pair<SimplexId, SimplexId>> sequence;
    /// Distinct residual complexes expanded by the search.
    std::size_t states_visited = 0;
    std::size_t node_budget = 0;
};

namespace detail {

/// Residual subcomplex as a bitset over simplex ids.
struct Residual {
    std::vector<std::uint64_t> bits;

    bool test(SimplexId i) const { return (bits[i >> 6] >> (i & 63)) & 1U; }
    void reset(SimplexId i) { bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void set(SimplexId i) { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }

    friend bool operator==(const Residual&, const Residual&) = default;
};

struct ResidualHash {
    std::size_t operator()(const Residual& r) const noexcept
    {
        std::size_t h = 0x84222325cbf29ce4ULL;
        for (auto w : r.bits) h = (h ^ static_cast<std::size_t>(w)) * 0x100000001b3ULL;
        return h;
    }
};

class CollapseSearch {
public:
    CollapseSearch(const SimplicialComplex& complex, std::size_t budget)
        : k_(complex), budget_(budget), alive_coface_count_(complex.size(), 0)
    {
        state_.bits.assign((complex.size() + 63) / 64, 0);
        for (SimplexId i = 0; i < complex.size(); ++i) {
            state_.set(i);
            alive_coface_count_[i] = static_cast<std::uint32_t>(complex.cofaces(i).size());
        }
        remaining_ = complex.size();
    }

    CollapseCertificate run()
    {
        CollapseCertificate out;
        out.node_budget = budget_;
        const bool found = search();
        out.states_visited = expanded_;
        if (found) {
            out.status = CollapseStatus::Collapsible;
            out.sequence = path_;
        } else {
            out.status = exhausted_ ? CollapseStatus::Inconclusive : CollapseStatus::NotCollapsible;
        }
        return out;
    }

private:
    SimplexId live_coface(SimplexId sigma) const
    {
        for (SimplexId c : k_.cofaces(sigma)) {
            if (state_.test(c)) return c;
        }
        return kNoSimplex;
    }

    void remove(SimplexId s)
    {
        state_.reset(s);
        for (SimplexId f : k_.faces(s)) --alive_coface_count_[f];
        --remaining_;
    }

    void restore(SimplexId s)
    {
        state_.set(s);
        for (SimplexId f : k_.faces(s)) ++alive_coface_count_[f];
        ++remaining_;
    }

    bool search()
    {
        if (remaining_ == 1) return true;
        if (failed_.count(state_)) return false;
        if (expanded_ >= budget_) {
            exhausted_ = true;
            return false;
        }
        ++expanded_;

        // Free pairs, highest coface dimension first, then by face id.
        std::vector<std::pair<SimplexId, SimplexId>> moves;
        for (SimplexId s = 0; s < k_.size(); ++s) {
            if (state_.test(s) && alive_coface_count_[s] == 1) moves.emplace_back(s, live_coface(s));
        }
        std::stable_sort(moves.begin(), moves.end(), [&](const auto& a, const auto& b) {
            return k_.dim(a.second) > k_.dim(b.second);
        });

        for (auto [sigma, tau] : moves) {
            remove(tau);
            remove(sigma);
            path_.emplace_back(sigma, tau);
            if (search()) return true;
            path_.pop_back();
            restore(sigma);
            restore(tau);
            if (exhausted_) return false;
        }
        failed_.insert(state_);
        return false;
    }

    const SimplicialComplex& k_;
    std::size_t budget_;
    std::vector<std::uint32_t> alive_coface_count_;
    Residual state_;
    std::size_t remaining_ = 0;
    std::size_t expanded_ = 0;
    bool exhausted_ = false;
    std::vector<std::pair<SimplexId, SimplexId>> path_;
    std::unordered_set<Residual, ResidualHash> failed_;
};

inline bool is_connected(const SimplicialComplex& complex)
{
    if (complex.empty()) return false;
    std::vector<SimplexId> parent(complex.size());
    for (SimplexId i = 0; i < complex.size(); ++i) parent[i] = i;
    auto root = [&](SimplexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t vertices = 0;
    std::size_t merges = 0;
    for (SimplexId i = 0; i < complex.size(); ++i) {
        if (complex.dim(i) == 0) ++vertices;
        if (complex.dim(i) != 1) continue;
        auto fs = complex.faces(i);
        const SimplexId a = root(fs[0]);
        const SimplexId b = root(fs[1]);
        if (a != b) {
            parent[a] = b;
            ++merges;
        }
    }
    return merges + 1 == vertices;
}

} // namespace detail

inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

/// Decides whether `complex` collapses to a single vertex.
///
/// Backtracks over the choice of free pair at every step. Residual complexes
/// already shown to be dead ends are remembered, so each distinct residual
/// complex is expanded at most once.
inline CollapseCertificate collapse_search(const SimplicialComplex& complex,
                                           std::size_t node_budget = kDefaultNodeBudget)
{
    if (complex.empty()) throw Error(ErrorCode::EmptyComplex, "cannot collapse the empty complex");
    if (!detail::is_connected(complex)) {
        CollapseCertificate out;
        out.status = CollapseStatus::NotCollapsible;
        out.node_budget = node_budget;
        return out;
    }
    return detail::CollapseSearch(complex, node_budget).run();
}

/// Replays `sequence` from the full complex; true iff every step removes a
/// free face together with its unique coface and a single vertex remains.
inline bool replay_collapse(const SimplicialComplex& complex,
                            const std::vector<std::pair<SimplexId, SimplexId>>& sequence)
{
    std::vector<bool> alive(complex.size(), true);
    std::size_t remaining = complex.size();
    for (auto [sigma, tau] : sequence) {
        if (sigma >= complex.size() || tau >= complex.size()) return false;
        if (!alive[sigma] || !alive[tau]) return false;
        std::size_t live = 0;
        SimplexId only = kNoSimplex;
        for (SimplexId c : complex.cofaces(sigma)) {
            if (alive[c]) {
                ++live;
                only = c;
            }
        }
        if (live != 1 || only != tau) return false;
        alive[sigma] = false;
        alive[tau] = false;
        remaining -= 2;
    }
    if (remaining != 1) return false;
    for (SimplexId i = 0; i < complex.size(); ++i) {
        if (alive[i]) return complex.dim(i) == 0;
    }
    return false;
}

/// The gradient field of a collapse: every collapsed pair is matched, the
/// surviving vertex is the only critical simplex.
inline MorseMatching matching_from_collapse(const SimplicialComplex& complex,
                                            const std::vector<std::pair<SimplexId, SimplexId>>& sequence)
{
    return MorseMatching::from_pairs(complex, sequence);
}

/// Turns an acyclic matching with exactly one critical simplex (a vertex)
/// into an explicit collapse sequence. Returns an empty optional when the
/// matching has more critical simplices or is not acyclic.
inline std::optional<std::vector<std::pair<SimplexId, SimplexId>>>
collapse_from_matching(const SimplicialComplex& complex, const MorseMatching& matching)
{
    if (matching.critical().size() != 1) return std::nullopt;
    std::vector<bool> alive(complex.size(), true);
    std::vector<std::uint32_t> live_cofaces(complex.size());
    for (SimplexId i = 0; i < complex.size(); ++i) {
        live_cofaces[i] = static_cast<std::uint32_t>(complex.cofaces(i).size());
    }
    std::vector<std::pair<SimplexId, SimplexId>> seq;
    std::vector<SimplexId> ready;
    auto consider = [&](SimplexId s) {
        const SimplexId p = matching.partner(s);
        if (!alive[s] || p == kNoSimplex || complex.dim(p) != complex.dim(s) + 1) return;
        if (alive[p] && live_cofaces[s] == 1 && live_cofaces[p] == 0) ready.push_back(s);
    };
    for (SimplexId i = 0; i < complex.size(); ++i) consider(i);
    while (!ready.empty()) {
        const SimplexId sigma = ready.back();
        ready.pop_back();
        const SimplexId tau = matching.partner(sigma);
        if (!alive[sigma] || !alive[tau] || live_cofaces[sigma] != 1 || live_cofaces[tau] != 0) continue;
        seq.emplace_back(sigma, tau);
        alive[sigma] = alive[tau] = false;
        for (SimplexId s : {tau, sigma}) {
            for (SimplexId f : complex.faces(s)) {
                --live_cofaces[f];
                consider(f);
                // the coface partner of f may have become removable
                if (matching.partner(f) != kNoSimplex && complex.dim(matching.partner(f)) < complex.dim(f)) {
                    consider(matching.partner(f));
                }
            }
        }
    }
    if (seq.size() * 2 + 1 != complex.size()) return std::nullopt;
    return seq;
}

} // namespace morseprof
