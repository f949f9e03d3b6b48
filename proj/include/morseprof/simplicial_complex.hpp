#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace morseprof {

using VertexId = std::uint32_t;
using SimplexId = std::uint32_t;

inline constexpr SimplexId kNoSimplex = static_cast<SimplexId>(-1);

enum class Closure {
    Strict, ///< every codim-1 face must already be present
    Auto,   ///< missing faces are inserted first, recursively
};

/// Sparse matrix over F2 stored column-wise; each column is a sorted list of
/// row indices holding a 1.
struct F2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::uint32_t>> columns;

    bool at(std::size_t row, std::size_t col) const
    {
        const auto& c = columns[col];
        return std::binary_search(c.begin(), c.end(), static_cast<std::uint32_t>(row));
    }
};

namespace detail {

struct VertexListHash {
    std::size_t operator()(const std::vector<VertexId>& v) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (VertexId x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline std::string format_vertices(std::span<const VertexId> vs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(vs[i]);
    }
    return out + "}";
}

} // namespace detail

/// A finite abstract simplicial complex together with its Hasse diagram
/// restricted to codimension-one incidences.
///
/// Simplices are identified by insertion order. Faces are always inserted
/// before their cofaces, so `faces(s)` only ever holds ids smaller than `s`,
/// and every prefix `[0, n)` of the id range is itself a subcomplex.
class SimplicialComplex {
public:
    SimplicialComplex() { offsets_.push_back(0); }

    std::size_t size() const noexcept { return dims_.size(); }
    bool empty() const noexcept { return dims_.empty(); }

    /// Largest simplex dimension, or -1 for the empty complex.
    int dim() const noexcept { return max_dim_; }

    int dim(SimplexId id) const { return dims_[check(id)]; }

    std::span<const VertexId> vertices(SimplexId id) const
    {
        check(id);
        return {vertex_data_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
    }

    /// Codimension-one faces of `id`, in the order obtained by dropping vertex
    /// 0, 1, ... of the sorted vertex list.
    std::span<const SimplexId> faces(SimplexId id) const
    {
        check(id);
        if (dims_[id] == 0) return {};
        return {face_data_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
    }

    /// Codimension-one cofaces of `id`, in ascending id order.
    std::span<const SimplexId> cofaces(SimplexId id) const
    {
        check(id);
        return cofaces_[id];
    }

    /// Successors of `id` in the Hasse diagram (edges point from a simplex to
    /// its codimension-one faces).
    std::span<const SimplexId> hasse_successors(SimplexId id) const { return faces(id); }

    std::optional<SimplexId> find(std::span<const VertexId> sorted_vertices) const
    {
        const std::vector<VertexId> key(sorted_vertices.begin(), sorted_vertices.end());
        auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Inserts the simplex spanned by `vertices` (any order, no repeats) and
    /// returns its id. Re-adding an existing simplex returns the existing id.
    SimplexId add_simplex(std::span<const VertexId> vertices, Closure mode = Closure::Strict)
    {
        std::vector<VertexId> sorted(vertices.begin(), vertices.end());
        std::sort(sorted.begin(), sorted.end());
        if (sorted.empty()) {
            throw Error(ErrorCode::InvalidArgument, "a simplex needs at least one vertex");
        }
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorCode::DuplicateVertex, detail::format_vertices(vertices));
        }
        return add_sorted(sorted, mode);
    }

    SimplexId add_simplex(std::initializer_list<VertexId> vertices, Closure mode = Closure::Strict)
    {
        return add_simplex(std::span<const VertexId>(vertices.begin(), vertices.size()), mode);
    }

    std::vector<std::size_t> count_by_dim() const
    {
        std::vector<std::size_t> counts(static_cast<std::size_t>(max_dim_ + 1), 0);
        for (int d : dims_) ++counts[static_cast<std::size_t>(d)];
        return counts;
    }

    std::size_t num_vertices() const
    {
        return empty() ? 0 : count_by_dim()[0];
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int d : dims_) chi += (d % 2 == 0) ? 1 : -1;
        return chi;
    }

    /// Boundary operator from k-chains to (k-1)-chains over F2. Rows and
    /// columns are numbered by position among simplices of the respective
    /// dimension in id order.
    F2Matrix boundary_matrix(int k) const
    {
        if (k < 1 || k > max_dim_) {
            throw Error(ErrorCode::DimensionOutOfRange,
                        "boundary_matrix(" + std::to_string(k) + ") on a complex of dimension " +
                            std::to_string(max_dim_));
        }
        std::vector<std::uint32_t> position(size(), 0);
        std::size_t rows = 0;
        std::size_t cols = 0;
        for (SimplexId i = 0; i < size(); ++i) {
            if (dims_[i] == k - 1) position[i] = static_cast<std::uint32_t>(rows++);
            if (dims_[i] == k) position[i] = static_cast<std::uint32_t>(cols++);
        }
        F2Matrix m;
        m.rows = rows;
        m.cols = cols;
        m.columns.reserve(cols);
        for (SimplexId i = 0; i < size(); ++i) {
            if (dims_[i] != k) continue;
            std::vector<std::uint32_t> col;
            for (SimplexId f : faces(i)) col.push_back(position[f]);
            std::sort(col.begin(), col.end());
            m.columns.push_back(std::move(col));
        }
        return m;
    }

    /// Subcomplex formed by the first `count` simplices; ids are preserved.
    SimplicialComplex prefix(std::size_t count) const
    {
        count = std::min(count, size());
        SimplicialComplex out;
        for (SimplexId i = 0; i < count; ++i) {
            auto vs = vertices(i);
            out.add_sorted(std::vector<VertexId>(vs.begin(), vs.end()), Closure::Strict);
        }
        return out;
    }

private:
    SimplexId check(SimplexId id) const
    {
        if (id >= dims_.size()) {
            throw Error(ErrorCode::InvalidId, "simplex id " + std::to_string(id) + " out of range");
        }
        return id;
    }

    SimplexId add_sorted(const std::vector<VertexId>& sorted, Closure mode)
    {
        if (auto it = index_.find(sorted); it != index_.end()) return it->second;

        const int d = static_cast<int>(sorted.size()) - 1;
        std::vector<SimplexId> face_ids;
        if (d > 0) {
            face_ids.reserve(sorted.size());
            std::vector<VertexId> face(sorted.size() - 1);
            for (std::size_t drop = 0; drop < sorted.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t j = 0; j < sorted.size(); ++j) {
                    if (j != drop) face[w++] = sorted[j];
                }
                auto it = index_.find(face);
                if (it != index_.end()) {
                    face_ids.push_back(it->second);
                } else if (mode == Closure::Auto) {
                    face_ids.push_back(add_sorted(face, mode));
                } else {
                    throw Error(ErrorCode::MissingFace, "face " + detail::format_vertices(face) +
                                                            " of " + detail::format_vertices(sorted) +
                                                            " is not present");
                }
            }
        }

        const auto id = static_cast<SimplexId>(dims_.size());
        dims_.push_back(d);
        vertex_data_.insert(vertex_data_.end(), sorted.begin(), sorted.end());
        if (d > 0) {
            face_data_.insert(face_data_.end(), face_ids.begin(), face_ids.end());
        } else {
            face_data_.push_back(kNoSimplex); // keeps face_data_ aligned with offsets_
        }
        offsets_.push_back(vertex_data_.size());
        cofaces_.emplace_back();
        for (SimplexId f : face_ids) cofaces_[f].push_back(id);
        index_.emplace(sorted, id);
        max_dim_ = std::max(max_dim_, d);
        return id;
    }

    std::vector<int> dims_;
    std::vector<VertexId> vertex_data_;
    std::vector<SimplexId> face_data_;
    std::vector<std::size_t> offsets_;
    std::vector<std::vector<SimplexId>> cofaces_;
    std::unordered_map<std::vector<VertexId>, SimplexId, detail::VertexListHash> index_;
    int max_dim_ = -1;
};

inline long long euler_characteristic(const SimplicialComplex& complex)
{
    return complex.euler_characteristic();
}

} // namespace morseprof
