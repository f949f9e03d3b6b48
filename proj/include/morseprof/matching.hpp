#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "filtration.hpp"
#include "simplicial_complex.hpp"

namespace morseprof {

/// Number of critical simplices per dimension.
struct CriticalCounts {
    std::vector<std::size_t> by_dim;

    std::size_t total() const { return std::accumulate(by_dim.begin(), by_dim.end(), std::size_t{0}); }

    /// Alternating sum c_0 - c_1 + c_2 - ...
    long long alternating_sum() const
    {
        long long s = 0;
        for (std::size_t p = 0; p < by_dim.size(); ++p) {
            s += (p % 2 == 0) ? static_cast<long long>(by_dim[p]) : -static_cast<long long>(by_dim[p]);
        }
        return s;
    }

    std::size_t operator[](std::size_t p) const { return p < by_dim.size() ? by_dim[p] : 0; }

    friend bool operator==(const CriticalCounts&, const CriticalCounts&) = default;
};

/// A discrete vector field: a partial matching on the Hasse diagram pairing
/// simplices with codimension-one cofaces.
class MorseMatching {
public:
    MorseMatching() = default;
    explicit MorseMatching(std::size_t num_simplices) : partner_(num_simplices, kNoSimplex) {}

    /// Builds a matching from explicit (face, coface) pairs, rejecting pairs
    /// that are not codimension-one incidences or reuse a simplex.
    static MorseMatching from_pairs(const SimplicialComplex& complex,
                                    const std::vector<std::pair<SimplexId, SimplexId>>& pairs)
    {
        MorseMatching m(complex.size());
        for (auto [sigma, tau] : pairs) {
            if (sigma >= complex.size() || tau >= complex.size()) {
                throw Error(ErrorCode::InvalidPair, "pair references an unknown simplex");
            }
            auto fs = complex.faces(tau);
            if (complex.dim(tau) != complex.dim(sigma) + 1 ||
                std::find(fs.begin(), fs.end(), sigma) == fs.end()) {
                throw Error(ErrorCode::InvalidPair, "(" + std::to_string(sigma) + ", " +
                                                        std::to_string(tau) +
                                                        ") is not a codimension-one incidence");
            }
            if (m.partner_[sigma] != kNoSimplex || m.partner_[tau] != kNoSimplex) {
                throw Error(ErrorCode::InvalidPair, "simplex matched twice");
            }
            m.partner_[sigma] = tau;
            m.partner_[tau] = sigma;
        }
        return m;
    }

    std::size_t size() const noexcept { return partner_.size(); }
    SimplexId partner(SimplexId id) const { return partner_.at(id); }
    bool is_critical(SimplexId id) const { return partner_.at(id) == kNoSimplex; }
    const std::vector<SimplexId>& partners() const noexcept { return partner_; }

    /// Pairs as (face, coface), ordered by face id.
    std::vector<std::pair<SimplexId, SimplexId>> pairs() const
    {
        std::vector<std::pair<SimplexId, SimplexId>> out;
        for (SimplexId i = 0; i < partner_.size(); ++i) {
            if (partner_[i] != kNoSimplex && partner_[i] > i) out.emplace_back(i, partner_[i]);
        }
        return out;
    }

    std::vector<SimplexId> critical() const
    {
        std::vector<SimplexId> out;
        for (SimplexId i = 0; i < partner_.size(); ++i) {
            if (partner_[i] == kNoSimplex) out.push_back(i);
        }
        return out;
    }

    /// Restriction to the first `count` simplices. Only meaningful when no
    /// pair straddles the cut (true for matchings built along a filtration).
    MorseMatching prefix(std::size_t count) const
    {
        MorseMatching m(std::min(count, size()));
        for (SimplexId i = 0; i < m.size(); ++i) {
            if (partner_[i] < m.size()) m.partner_[i] = partner_[i];
        }
        return m;
    }

    void set_pair(SimplexId sigma, SimplexId tau)
    {
        partner_[sigma] = tau;
        partner_[tau] = sigma;
    }
    void clear_pair(SimplexId sigma, SimplexId tau)
    {
        partner_[sigma] = kNoSimplex;
        partner_[tau] = kNoSimplex;
    }

private:
    std::vector<SimplexId> partner_;
};

inline CriticalCounts critical_counts(const SimplicialComplex& complex, const MorseMatching& matching)
{
    CriticalCounts c;
    c.by_dim.assign(static_cast<std::size_t>(std::max(complex.dim(), 0) + 1), 0);
    if (complex.empty()) {
        c.by_dim.clear();
        return c;
    }
    for (SimplexId i = 0; i < complex.size(); ++i) {
        if (matching.is_critical(i)) ++c.by_dim[static_cast<std::size_t>(complex.dim(i))];
    }
    return c;
}

/// Checks that a matching is structurally a discrete vector field on
/// `complex` (codimension-one incidences, symmetric, no reuse).
inline void validate_matching(const SimplicialComplex& complex, const MorseMatching& matching)
{
    if (matching.size() != complex.size()) {
        throw Error(ErrorCode::InvalidPair, "matching size differs from complex size");
    }
    for (SimplexId i = 0; i < complex.size(); ++i) {
        const SimplexId p = matching.partner(i);
        if (p == kNoSimplex) continue;
        if (p >= complex.size() || matching.partner(p) != i) {
            throw Error(ErrorCode::InvalidPair, "matching is not symmetric at " + std::to_string(i));
        }
        const SimplexId lo = complex.dim(i) < complex.dim(p) ? i : p;
        const SimplexId hi = lo == i ? p : i;
        auto fs = complex.faces(hi);
        if (complex.dim(hi) != complex.dim(lo) + 1 || std::find(fs.begin(), fs.end(), lo) == fs.end()) {
            throw Error(ErrorCode::InvalidPair, "(" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                    ") is not a codimension-one incidence");
        }
    }
}

/// Whole-diagram acyclicity test: reverses matched edges of the Hasse diagram
/// and looks for a directed cycle with an iterative three-colour DFS.
inline bool is_acyclic(const SimplicialComplex& complex, const MorseMatching& matching)
{
    validate_matching(complex, matching);
    const std::size_t n = complex.size();
    // Successors in the modified diagram: a matched face points up to its
    // partner; every other Hasse edge keeps pointing down.
    auto for_each_successor = [&](SimplexId v, auto&& fn) {
        const SimplexId p = matching.partner(v);
        if (p != kNoSimplex && complex.dim(p) > complex.dim(v)) fn(p);
        for (SimplexId f : complex.faces(v)) {
            if (f != p) fn(f);
        }
    };

    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(n, White);
    std::vector<std::pair<SimplexId, std::vector<SimplexId>>> stack;
    for (SimplexId root = 0; root < n; ++root) {
        if (colour[root] != White) continue;
        auto successors = [&](SimplexId v) {
            std::vector<SimplexId> s;
            for_each_successor(v, [&](SimplexId w) { s.push_back(w); });
            return s;
        };
        stack.emplace_back(root, successors(root));
        colour[root] = Grey;
        while (!stack.empty()) {
            auto& [v, pending] = stack.back();
            if (pending.empty()) {
                colour[v] = Black;
                stack.pop_back();
                continue;
            }
            const SimplexId w = pending.back();
            pending.pop_back();
            if (colour[w] == Grey) return false;
            if (colour[w] == White) {
                colour[w] = Grey;
                stack.emplace_back(w, successors(w));
            }
        }
    }
    return true;
}

namespace detail {

/// Depth-first search for a V-path from tau back to sigma, confined to the
/// layer (dim sigma, dim tau). Visit marks use an epoch counter so the
/// scratch space is never cleared.
class CycleProbe {
public:
    explicit CycleProbe(std::size_t n) : stamp_(n, 0) {}

    bool closes_cycle(const SimplicialComplex& k, const std::vector<SimplexId>& partner,
                      SimplexId sigma, SimplexId tau)
    {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        stack_.clear();
        stack_.push_back(tau);
        stamp_[tau] = epoch_;
        while (!stack_.empty()) {
            const SimplexId t = stack_.back();
            stack_.pop_back();
            // tau counts as already paired with sigma
            const SimplexId t_partner = t == tau ? sigma : partner[t];
            for (SimplexId f : k.faces(t)) {
                if (f == t_partner) continue;
                if (f == sigma) return true;
                const SimplexId up = partner[f];
                // only faces matched upwards continue the path
                if (up == kNoSimplex || k.dim(up) < k.dim(f)) continue;
                if (stamp_[up] != epoch_) {
                    stamp_[up] = epoch_;
                    stack_.push_back(up);
                }
            }
        }
        return false;
    }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<SimplexId> stack_;
};

} // namespace detail

/// Incremental acyclic matching along a fixed complex.
///
/// Keeps the current partner map and answers whether a candidate pair
/// (sigma, tau) would close a V-path. Only the layer (dim sigma, dim tau) is
/// searched; no cycle can leave it.
class IncrementalMatcher {
public:
    explicit IncrementalMatcher(const SimplicialComplex& complex)
        : complex_(&complex), matching_(complex.size()), probe_(complex.size())
    {
    }

    const MorseMatching& matching() const noexcept { return matching_; }
    std::size_t inserted() const noexcept { return inserted_; }

    /// True iff adding (sigma, tau) would create a closed V-path.
    bool would_close_cycle(SimplexId sigma, SimplexId tau)
    {
        return probe_.closes_cycle(*complex_, matching_.partners(), sigma, tau);
    }

    /// Adds (sigma, tau) if it keeps the matching acyclic. Leaves the state
    /// unchanged and returns false otherwise.
    bool try_add_pair(SimplexId sigma, SimplexId tau)
    {
        auto fs = complex_->faces(tau);
        if (std::find(fs.begin(), fs.end(), sigma) == fs.end()) {
            throw Error(ErrorCode::NotIncident, std::to_string(sigma) + " is not a codimension-one face of " +
                                                    std::to_string(tau));
        }
        if (!matching_.is_critical(sigma) || !matching_.is_critical(tau)) return false;
        if (would_close_cycle(sigma, tau)) return false;
        matching_.set_pair(sigma, tau);
        return true;
    }

    /// Processes the next simplex in id order: it is matched with one of its
    /// unmatched faces when that keeps the field acyclic, otherwise it stays
    /// critical.
    ///
    /// Free faces (tau is their only coface inserted so far) go first and
    /// need no cycle search, since no V-path can enter them; the remaining
    /// unmatched faces follow in ascending id order.
    /// Returns the face tau was matched with, or kNoSimplex.
    SimplexId insert_next()
    {
        const auto tau = static_cast<SimplexId>(inserted_++);
        auto fs = complex_->faces(tau);
        SimplexId best_free = kNoSimplex;
        for (SimplexId f : fs) {
            if (matching_.is_critical(f) && complex_->cofaces(f).front() == tau) {
                best_free = std::min(best_free, f);
            }
        }
        if (best_free != kNoSimplex) {
            matching_.set_pair(best_free, tau);
            return best_free;
        }
        candidates_.assign(fs.begin(), fs.end());
        std::sort(candidates_.begin(), candidates_.end());
        for (SimplexId f : candidates_) {
            if (!matching_.is_critical(f)) continue;
            if (!would_close_cycle(f, tau)) {
                matching_.set_pair(f, tau);
                return f;
            }
        }
        return kNoSimplex;
    }

private:
    const SimplicialComplex* complex_;
    MorseMatching matching_;
    detail::CycleProbe probe_;
    std::vector<SimplexId> candidates_;
    std::size_t inserted_ = 0;
};

/// Result of running the greedy matcher along a filtration.
struct GreedyProfile {
    MorseMatching matching;                  ///< final matching on the whole complex
    std::vector<CriticalCounts> per_level;   ///< C(K_t) for every level t
};

/// Greedy acyclic matching maintained while simplices are inserted in
/// filtration order. A simplex is only ever paired at its own insertion, so
/// the matching on K_t is the restriction of the final one.
inline GreedyProfile greedy_incremental(const Filtration& filtration)
{
    const SimplicialComplex& k = filtration.complex();
    IncrementalMatcher matcher(k);
    GreedyProfile out;
    std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(k.dim(), 0) + 1), 0);
    int top = -1;
    for (std::size_t level = 0; level < filtration.num_levels(); ++level) {
        const std::size_t end = filtration.level_size(level);
        while (matcher.inserted() < end) {
            const SimplexId face = matcher.insert_next();
            const auto tau = static_cast<SimplexId>(matcher.inserted() - 1);
            top = std::max(top, k.dim(tau));
            if (face == kNoSimplex) {
                ++counts[static_cast<std::size_t>(k.dim(tau))];
            } else {
                --counts[static_cast<std::size_t>(k.dim(face))];
            }
        }
        CriticalCounts c;
        c.by_dim.assign(counts.begin(), counts.begin() + (top + 1));
        out.per_level.push_back(std::move(c));
    }
    out.matching = matcher.matching();
    return out;
}

} // namespace morseprof
