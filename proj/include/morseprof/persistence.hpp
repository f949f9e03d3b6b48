#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "filtration.hpp"
#include "simplicial_complex.hpp"

namespace morseprof {

/// A homology class: created by `birth`, destroyed by `death` (if any).
struct Bar {
    int dim = 0;
    SimplexId birth = kNoSimplex;
    std::optional<SimplexId> death;
    double birth_grade = 0.0;
    double death_grade = std::numeric_limits<double>::infinity();

    bool essential() const noexcept { return !death.has_value(); }
    /// True when birth and death happen at the same grade; such classes never
    /// show up in the homology of any sublevel complex.
    bool zero_length() const noexcept { return death && death_grade == birth_grade; }
};

using BettiVector = std::vector<std::size_t>;

/// Persistence pairing of a filtration over F2.
class PersistencePairing {
public:
    PersistencePairing() = default;
    PersistencePairing(std::vector<Bar> bars, std::vector<double> levels, int max_dim)
        : bars_(std::move(bars)), levels_(std::move(levels)), max_dim_(max_dim)
    {
    }

    const std::vector<Bar>& bars() const noexcept { return bars_; }
    const std::vector<double>& levels() const noexcept { return levels_; }
    int max_dim() const noexcept { return max_dim_; }

    std::size_t num_pairs() const
    {
        return static_cast<std::size_t>(
            std::count_if(bars_.begin(), bars_.end(), [](const Bar& b) { return !b.essential(); }));
    }
    std::size_t num_essentials() const { return bars_.size() - num_pairs(); }

private:
    std::vector<Bar> bars_;
    std::vector<double> levels_;
    int max_dim_ = -1;
};

/// Standard column reduction over F2 ("add the column owning the current
/// lowest one until it is new"), with clearing: dimensions are processed from
/// the top so that columns already known to be positive are skipped.
inline PersistencePairing reduce(const Filtration& filtration)
{
    const SimplicialComplex& k = filtration.complex();
    const std::size_t n = k.size();
    const int top = k.dim();

    std::vector<std::vector<SimplexId>> columns(n);
    std::vector<SimplexId> owner_of_low(n, kNoSimplex);
    std::vector<SimplexId> partner(n, kNoSimplex);
    std::vector<bool> cleared(n, false);
    std::vector<SimplexId> scratch;

    for (int d = top; d >= 1; --d) {
        for (SimplexId j = 0; j < n; ++j) {
            if (k.dim(j) != d || cleared[j]) continue;
            auto& col = columns[j];
            auto fs = k.faces(j);
            col.assign(fs.begin(), fs.end());
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                const SimplexId low = col.back();
                const SimplexId other = owner_of_low[low];
                if (other == kNoSimplex) break;
                const auto& add = columns[other];
                scratch.clear();
                std::set_symmetric_difference(col.begin(), col.end(), add.begin(), add.end(),
                                              std::back_inserter(scratch));
                col.swap(scratch);
            }
            if (!col.empty()) {
                const SimplexId low = col.back();
                owner_of_low[low] = j;
                partner[low] = j;
                partner[j] = low;
                cleared[low] = true;
            } else {
                col.shrink_to_fit();
            }
        }
    }

    std::vector<Bar> bars;
    for (SimplexId i = 0; i < n; ++i) {
        if (partner[i] == kNoSimplex) {
            bars.push_back({k.dim(i), i, std::nullopt, filtration.grade(i),
                            std::numeric_limits<double>::infinity()});
        } else if (partner[i] > i) {
            bars.push_back({k.dim(i), i, partner[i], filtration.grade(i),
                            filtration.grade(partner[i])});
        }
    }
    return PersistencePairing(std::move(bars), filtration.levels(), top);
}

/// Betti numbers of the sublevel complex K_t.
inline BettiVector betti_at(const PersistencePairing& pairing, double t)
{
    BettiVector b(static_cast<std::size_t>(std::max(pairing.max_dim(), 0) + 1), 0);
    for (const Bar& bar : pairing.bars()) {
        if (bar.birth_grade <= t && bar.death_grade > t) ++b[static_cast<std::size_t>(bar.dim)];
    }
    return b;
}

/// Rank of H_k(K_i) -> H_k(K_{i+p}).
inline std::size_t persistent_betti(const PersistencePairing& pairing, double i, double p, int k)
{
    if (p < 0.0) throw Error(ErrorCode::InvalidArgument, "persistent_betti needs p >= 0");
    std::size_t count = 0;
    for (const Bar& bar : pairing.bars()) {
        if (bar.dim == k && bar.birth_grade <= i && bar.death_grade > i + p) ++count;
    }
    return count;
}

/// True iff every inclusion K_s -> K_u with a <= s <= u <= b induces
/// isomorphisms on homology in all dimensions, i.e. no class of positive
/// length is born or dies at a grade in (a, b].
inline bool is_iso_window(const PersistencePairing& pairing, double a, double b)
{
    if (a > b) throw Error(ErrorCode::InvalidArgument, "is_iso_window needs a <= b");
    for (const Bar& bar : pairing.bars()) {
        if (bar.zero_length()) continue;
        if (bar.birth_grade > a && bar.birth_grade <= b) return false;
        if (!bar.essential() && bar.death_grade > a && bar.death_grade <= b) return false;
    }
    return true;
}

struct GradeInterval {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t first_level = 0;
    std::size_t last_level = 0;

    friend bool operator==(const GradeInterval&, const GradeInterval&) = default;
};

/// Maximal runs of consecutive levels over which homology is unchanged.
///
/// This is only the homological shadow of a window on which all inclusions
/// are homotopy equivalences: necessary, not sufficient.
inline std::vector<GradeInterval> homology_stable_windows(const PersistencePairing& pairing)
{
    const auto& levels = pairing.levels();
    std::vector<GradeInterval> out;
    if (levels.empty()) return out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= levels.size(); ++i) {
        if (i == levels.size() || !is_iso_window(pairing, levels[i - 1], levels[i])) {
            out.push_back({levels[start], levels[i - 1], start, i - 1});
            start = i;
        }
    }
    return out;
}

/// Betti numbers of a whole complex.
inline BettiVector betti_numbers(const SimplicialComplex& complex)
{
    if (complex.empty()) return {};
    return betti_at(reduce(Filtration::constant(complex)), 0.0);
}

} // namespace morseprof
