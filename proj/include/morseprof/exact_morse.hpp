#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collapse.hpp"
#include "error.hpp"
#include "matching.hpp"
#include "persistence.hpp"
#include "simplicial_complex.hpp"

namespace morseprof {

inline constexpr std::size_t kDefaultExactCap = 25;

struct ExactOptions {
    std::size_t simplex_cap = kDefaultExactCap;
    /// Run collapse_search first: a certificate settles M = 1 outright and a
    /// definite refutation raises the lower bound on M to 2.
    bool use_collapse_bounds = true;
    std::size_t node_budget = kDefaultNodeBudget;
    /// Also compute the per-dimension minima m_k.
    bool per_dimension = true;
};

/// Exact minimal Morse number of a complex.
struct ExactMorse {
    std::size_t total = 0;                ///< M(K)
    std::vector<std::size_t> per_dim_min; ///< m_k(K), each minimised on its own
    MorseMatching witness;                ///< an acyclic matching achieving M(K)
    CriticalCounts witness_counts;
    std::size_t nodes = 0;                ///< branch-and-bound nodes expanded
};

namespace detail {

/// Critical-count vectors are indexed by dimension; the objective is either
/// the total or a single coordinate.
struct Objective {
    int dim = -1; ///< -1: total number of critical simplices

    std::size_t value(const std::vector<std::size_t>& counts) const
    {
        if (dim < 0) {
            std::size_t s = 0;
            for (auto c : counts) s += c;
            return s;
        }
        return counts[static_cast<std::size_t>(dim)];
    }
};

/// Witness matchings built without search, used as initial upper bounds.
///
/// Removes free pairs while any exist; when stuck, declares one maximal
/// simplex of the highest available dimension critical and removes it. The
/// reverse of this removal order is a linear extension of the resulting
/// field, so it is acyclic. `rotation` picks which stuck-state candidate is
/// taken, giving a family of different witnesses.
inline MorseMatching collapse_and_remove(const SimplicialComplex& k, std::size_t rotation)
{
    const std::size_t n = k.size();
    MorseMatching m(n);
    std::vector<bool> alive(n, true);
    std::vector<std::uint32_t> live(n);
    for (SimplexId i = 0; i < n; ++i) live[i] = static_cast<std::uint32_t>(k.cofaces(i).size());
    std::size_t remaining = n;
    auto drop = [&](SimplexId s) {
        alive[s] = false;
        --remaining;
        for (SimplexId f : k.faces(s)) --live[f];
    };
    while (remaining > 0) {
        SimplexId free_face = kNoSimplex;
        int best_dim = -1;
        for (SimplexId s = 0; s < n; ++s) {
            if (!alive[s] || live[s] != 1) continue;
            if (k.dim(s) > best_dim) {
                best_dim = k.dim(s);
                free_face = s;
            }
        }
        if (free_face != kNoSimplex) {
            SimplexId tau = kNoSimplex;
            for (SimplexId c : k.cofaces(free_face)) {
                if (alive[c]) tau = c;
            }
            m.set_pair(free_face, tau);
            drop(tau);
            drop(free_face);
            continue;
        }
        std::vector<SimplexId> maximal;
        int top = -1;
        for (SimplexId s = 0; s < n; ++s) {
            if (!alive[s] || live[s] != 0) continue;
            if (k.dim(s) > top) {
                top = k.dim(s);
                maximal.clear();
            }
            if (k.dim(s) == top) maximal.push_back(s);
        }
        drop(maximal[rotation % maximal.size()]);
        rotation /= maximal.size();
    }
    return m;
}

/// Branch and bound over acyclic matchings of the Hasse diagram.
///
/// Simplices are visited by descending dimension (then descending id). A
/// simplex not already matched with a coface is either paired with one of
/// its unmatched faces (when that keeps its layer acyclic) or declared
/// critical. Vertices have no choice left, so reaching them closes a leaf.
///
/// Bounds: each c_p is at least b_p (weak Morse inequalities), the
/// alternating sum of the c_p is fixed to chi, and the total is at least a
/// known lower bound on M. When no further critical simplex of the current
/// dimension fits under the incumbent, every remaining simplex of that
/// dimension must be matched downwards; a necessary condition for that is
/// that they can be peeled off one at a time through a face no other
/// remaining one contains, which is checked directly.
class MatchingSearch {
public:
    MatchingSearch(const SimplicialComplex& k, std::vector<std::size_t> betti, long long chi,
                   Objective objective, std::size_t total_lower_bound)
        : k_(k), betti_(std::move(betti)), chi_(chi), objective_(objective),
          total_lb_(total_lower_bound), partner_(k.size(), kNoSimplex), probe_(k.size())
    {
        top_ = std::max(k.dim(), 0);
        betti_.resize(static_cast<std::size_t>(top_ + 1), 0);
        counts_.assign(static_cast<std::size_t>(top_ + 1), 0);
        for (SimplexId i = 0; i < k.size(); ++i) order_.push_back(i);
        std::sort(order_.begin(), order_.end(), [&](SimplexId a, SimplexId b) {
            if (k.dim(a) != k.dim(b)) return k.dim(a) > k.dim(b);
            return a > b;
        });
        in_layer_.assign(k.size(), false);
        face_uses_.assign(k.size(), 0);
    }

    /// Searches for a matching with objective strictly below `incumbent`.
    /// Returns the best value found (or `incumbent` if nothing better).
    std::size_t run(std::size_t incumbent, const MorseMatching& incumbent_matching)
    {
        best_ = incumbent;
        best_matching_ = incumbent_matching;
        root_bound_ = bound(top_, 0);
        if (best_ > root_bound_) descend(0);
        return best_;
    }

    std::size_t root_bound() const noexcept { return root_bound_; }
    const MorseMatching& best_matching() const noexcept { return best_matching_; }
    std::size_t nodes() const noexcept { return nodes_; }

private:
    static constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max();

    /// Lower bound on the objective given that dimensions above `r` are
    /// settled, `extra` more critical r-simplices are about to be added, and
    /// nothing below r has been decided.
    std::size_t bound(int r, std::size_t extra) const
    {
        std::vector<std::size_t> lb(static_cast<std::size_t>(top_ + 1), 0);
        long long fixed_alt = 0;
        std::size_t fixed_total = 0;
        for (int p = top_; p > r; --p) {
            const auto c = counts_[static_cast<std::size_t>(p)];
            lb[static_cast<std::size_t>(p)] = c;
            fixed_alt += (p % 2 == 0) ? static_cast<long long>(c) : -static_cast<long long>(c);
            fixed_total += c;
        }
        long long lb_even = 0;
        long long lb_odd = 0;
        for (int p = r; p >= 0; --p) {
            auto c = p == r ? counts_[static_cast<std::size_t>(p)] + extra : 0;
            lb[static_cast<std::size_t>(p)] = std::max(c, betti_[static_cast<std::size_t>(p)]);
            (p % 2 == 0 ? lb_even : lb_odd) += static_cast<long long>(lb[static_cast<std::size_t>(p)]);
        }
        // Remaining dimensions must realise this alternating sum.
        const long long target = chi_ - fixed_alt;
        const bool has_odd = r >= 1;
        long long even_sum = 0;
        long long odd_sum = 0;
        if (!has_odd) {
            if (target < lb_even) return kInfeasible;
            even_sum = target;
        } else {
            const long long need = static_cast<long long>(total_lb_) - static_cast<long long>(fixed_total);
            even_sum = std::max({lb_even, lb_odd + target, (need + target + 1) / 2});
            odd_sum = even_sum - target;
        }
        if (objective_.dim < 0) return fixed_total + static_cast<std::size_t>(even_sum + odd_sum);
        const int d = objective_.dim;
        if (d > r) return lb[static_cast<std::size_t>(d)];
        // d is pinned by the class sums when it is the only remaining
        // dimension of its parity.
        const bool alone = (d % 2 == 0) ? r < 2 : r < 3;
        if (alone) return static_cast<std::size_t>(d % 2 == 0 ? even_sum : odd_sum);
        return lb[static_cast<std::size_t>(d)];
    }

    void leaf()
    {
        std::vector<std::size_t> final_counts = counts_;
        for (SimplexId i = 0; i < k_.size(); ++i) {
            if (k_.dim(i) == 0 && partner_[i] == kNoSimplex) ++final_counts[0];
        }
        const std::size_t value = objective_.value(final_counts);
        if (value < best_) {
            best_ = value;
            MorseMatching m(k_.size());
            for (SimplexId i = 0; i < k_.size(); ++i) {
                if (partner_[i] != kNoSimplex && partner_[i] > i) m.set_pair(i, partner_[i]);
            }
            best_matching_ = std::move(m);
        }
    }

    /// Can the still-open r-simplices (positions >= pos) plus those already
    /// matched downwards all be matched downwards acyclically? Necessary
    /// condition only.
    bool peelable(std::size_t pos, int r)
    {
        layer_.clear();
        for (std::size_t q = 0; q < order_.size(); ++q) {
            const SimplexId t = order_[q];
            if (k_.dim(t) != r) continue;
            const SimplexId p = partner_[t];
            const bool matched_down = p != kNoSimplex && k_.dim(p) < r;
            const bool open = q >= pos && p == kNoSimplex;
            if (matched_down || open) layer_.push_back(t);
        }
        for (SimplexId t : layer_) {
            in_layer_[t] = true;
            for (SimplexId f : k_.faces(t)) ++face_uses_[f];
        }
        std::size_t left = layer_.size();
        bool progress = true;
        while (progress && left > 0) {
            progress = false;
            for (SimplexId t : layer_) {
                if (!in_layer_[t]) continue;
                bool ok = false;
                const SimplexId p = partner_[t];
                if (p != kNoSimplex) {
                    ok = face_uses_[p] == 1;
                } else {
                    for (SimplexId f : k_.faces(t)) {
                        if (face_uses_[f] == 1 && partner_[f] == kNoSimplex) {
                            ok = true;
                            break;
                        }
                    }
                }
                if (ok) {
                    in_layer_[t] = false;
                    for (SimplexId f : k_.faces(t)) --face_uses_[f];
                    --left;
                    progress = true;
                }
            }
        }
        for (SimplexId t : layer_) {
            if (in_layer_[t]) {
                in_layer_[t] = false;
                for (SimplexId f : k_.faces(t)) --face_uses_[f];
            }
        }
        return left == 0;
    }

    void descend(std::size_t pos)
    {
        ++nodes_;
        if (best_ <= root_bound_) return; // provably optimal already
        while (pos < order_.size() && k_.dim(order_[pos]) > 0 && partner_[order_[pos]] != kNoSimplex) ++pos;
        if (pos == order_.size() || k_.dim(order_[pos]) == 0) {
            leaf();
            return;
        }
        const SimplexId tau = order_[pos];
        const int r = k_.dim(tau);
        if (bound(r, 0) >= best_) return;

        const bool critical_fits = bound(r, 1) < best_;
        if (!critical_fits && !peelable(pos, r)) return;

        for (SimplexId sigma : k_.faces(tau)) {
            if (partner_[sigma] != kNoSimplex) continue;
            if (probe_.closes_cycle(k_, partner_, sigma, tau)) continue;
            partner_[sigma] = tau;
            partner_[tau] = sigma;
            descend(pos + 1);
            partner_[sigma] = kNoSimplex;
            partner_[tau] = kNoSimplex;
            if (best_ <= root_bound_) return;
        }
        if (critical_fits && bound(r, 1) < best_) {
            ++counts_[static_cast<std::size_t>(r)];
            descend(pos + 1);
            --counts_[static_cast<std::size_t>(r)];
        }
    }

    const SimplicialComplex& k_;
    std::vector<std::size_t> betti_;
    long long chi_;
    Objective objective_;
    std::size_t total_lb_;
    int top_ = 0;
    std::vector<SimplexId> order_;
    std::vector<SimplexId> partner_;
    std::vector<std::size_t> counts_;
    CycleProbe probe_;
    std::size_t best_ = 0;
    std::size_t root_bound_ = 0;
    MorseMatching best_matching_;
    std::size_t nodes_ = 0;
    std::vector<SimplexId> layer_;
    std::vector<bool> in_layer_;
    std::vector<std::uint32_t> face_uses_;
};

inline std::vector<MorseMatching> heuristic_witnesses(const SimplicialComplex& k)
{
    std::vector<MorseMatching> out;
    IncrementalMatcher greedy(k);
    while (greedy.inserted() < k.size()) greedy.insert_next();
    out.push_back(greedy.matching());
    for (std::size_t rotation = 0; rotation < 24; ++rotation) {
        out.push_back(collapse_and_remove(k, rotation));
    }
    return out;
}

} // namespace detail

/// Exact minimal Morse number M(K) and per-dimension minima m_k(K).
///
/// Throws CapExceeded when the complex has more than `options.simplex_cap`
/// simplices: the underlying problem is NP-hard and the search is exponential
/// in the worst case.
inline ExactMorse exact_min_morse(const SimplicialComplex& complex, const ExactOptions& options = {})
{
    if (complex.size() > options.simplex_cap) {
        throw Error(ErrorCode::CapExceeded, std::to_string(complex.size()) + " simplices exceed the cap of " +
                                                std::to_string(options.simplex_cap));
    }
    ExactMorse out;
    if (complex.empty()) {
        out.witness = MorseMatching(0);
        return out;
    }
    const auto betti = betti_numbers(complex);
    const long long chi = complex.euler_characteristic();
    const auto dims = static_cast<std::size_t>(complex.dim() + 1);

    std::size_t total_lb = 1;
    std::vector<MorseMatching> candidates = detail::heuristic_witnesses(complex);
    if (options.use_collapse_bounds && detail::is_connected(complex)) {
        const auto cert = collapse_search(complex, options.node_budget);
        if (cert.status == CollapseStatus::Collapsible) {
            candidates.insert(candidates.begin(), matching_from_collapse(complex, cert.sequence));
        } else if (cert.status == CollapseStatus::NotCollapsible) {
            total_lb = 2;
        }
    }

    auto counts_of = [&](const MorseMatching& m) { return critical_counts(complex, m).by_dim; };

    // Total.
    std::size_t best_index = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (detail::Objective{}.value(counts_of(candidates[i])) <
            detail::Objective{}.value(counts_of(candidates[best_index]))) {
            best_index = i;
        }
    }
    detail::MatchingSearch total_search(complex, betti, chi, detail::Objective{}, total_lb);
    out.total = total_search.run(detail::Objective{}.value(counts_of(candidates[best_index])),
                                 candidates[best_index]);
    out.witness = total_search.best_matching();
    out.witness_counts = critical_counts(complex, out.witness);
    out.nodes = total_search.nodes();
    candidates.push_back(out.witness);

    if (!options.per_dimension) return out;

    // Each m_k on its own, using M as a lower bound on every total.
    out.per_dim_min.assign(dims, 0);
    for (std::size_t d = 0; d < dims; ++d) {
        const detail::Objective objective{static_cast<int>(d)};
        std::size_t best = std::numeric_limits<std::size_t>::max();
        const MorseMatching* best_m = nullptr;
        for (const auto& m : candidates) {
            const auto v = objective.value(counts_of(m));
            if (v < best) {
                best = v;
                best_m = &m;
            }
        }
        detail::MatchingSearch search(complex, betti, chi, objective, out.total);
        out.per_dim_min[d] = search.run(best, *best_m);
        out.nodes += search.nodes();
    }
    return out;
}

} // namespace morseprof
