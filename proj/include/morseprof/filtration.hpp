#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "simplicial_complex.hpp"

namespace morseprof {

/// One line of a filtration: a simplex and the parameter value at which it
/// enters.
struct GradedSimplex {
    double grade = 0.0;
    std::vector<VertexId> vertices;
};

/// A simplicial complex whose simplices carry a monotone grade.
///
/// Simplex ids follow the canonical order (grade, dimension, lexicographic
/// vertex list), so the sublevel complex at any grade is an id prefix.
class Filtration {
public:
    Filtration() = default;

    /// Validates and canonicalises a list of graded simplices.
    ///
    /// With `auto_close` unset every codim-1 face must be listed explicitly;
    /// otherwise a missing face is added with the least grade among the
    /// cofaces that require it.
    static Filtration from_graded(std::vector<GradedSimplex> input, bool auto_close = false)
    {
        struct Entry {
            double grade;
            bool listed;
        };
        std::map<std::vector<VertexId>, Entry> table;
        int top = -1;
        for (auto& gs : input) {
            if (!std::isfinite(gs.grade) || gs.grade < 0.0) {
                throw Error(ErrorCode::ParseError, "grades must be finite and non-negative");
            }
            if (gs.vertices.empty()) {
                throw Error(ErrorCode::ParseError, "simplex without vertices");
            }
            std::sort(gs.vertices.begin(), gs.vertices.end());
            if (std::adjacent_find(gs.vertices.begin(), gs.vertices.end()) != gs.vertices.end()) {
                throw Error(ErrorCode::DuplicateVertex, detail::format_vertices(gs.vertices));
            }
            auto [it, inserted] = table.emplace(gs.vertices, Entry{gs.grade, true});
            if (!inserted) {
                throw Error(ErrorCode::ParseError,
                            "simplex " + detail::format_vertices(gs.vertices) + " listed twice");
            }
            top = std::max(top, static_cast<int>(gs.vertices.size()) - 1);
        }

        // Walk dimensions downwards so that grades inferred for missing faces
        // propagate to their own faces.
        for (int d = top; d >= 1; --d) {
            std::vector<std::pair<std::vector<VertexId>, double>> layer;
            for (const auto& [vs, entry] : table) {
                if (static_cast<int>(vs.size()) - 1 == d) layer.emplace_back(vs, entry.grade);
            }
            for (const auto& [vs, grade] : layer) {
                for (std::size_t drop = 0; drop < vs.size(); ++drop) {
                    std::vector<VertexId> face;
                    face.reserve(vs.size() - 1);
                    for (std::size_t j = 0; j < vs.size(); ++j) {
                        if (j != drop) face.push_back(vs[j]);
                    }
                    auto it = table.find(face);
                    if (it == table.end()) {
                        if (!auto_close) {
                            throw Error(ErrorCode::MissingFace,
                                        "face " + detail::format_vertices(face) + " of " +
                                            detail::format_vertices(vs) + " is not listed");
                        }
                        table.emplace(face, Entry{grade, false});
                    } else if (!it->second.listed) {
                        it->second.grade = std::min(it->second.grade, grade);
                    } else if (it->second.grade > grade) {
                        throw Error(ErrorCode::NonMonotone,
                                    "face " + detail::format_vertices(face) + " enters after " +
                                        detail::format_vertices(vs));
                    }
                }
            }
        }

        std::vector<GradedSimplex> ordered;
        ordered.reserve(table.size());
        for (auto& [vs, entry] : table) ordered.push_back({entry.grade, vs});
        std::sort(ordered.begin(), ordered.end(), canonical_less);

        Filtration f;
        f.grades_.reserve(ordered.size());
        for (const auto& gs : ordered) {
            f.complex_.add_simplex(gs.vertices, Closure::Strict);
            f.grades_.push_back(gs.grade);
        }
        f.index_levels();
        return f;
    }

    /// Assigns every simplex of `complex` the grade returned by `grade_of`
    /// (called with the simplex id) and canonicalises.
    template <typename GradeFn>
    static Filtration from_complex(const SimplicialComplex& complex, GradeFn&& grade_of)
    {
        std::vector<GradedSimplex> input;
        input.reserve(complex.size());
        for (SimplexId i = 0; i < complex.size(); ++i) {
            auto vs = complex.vertices(i);
            input.push_back({static_cast<double>(grade_of(i)), {vs.begin(), vs.end()}});
        }
        return from_graded(std::move(input), false);
    }

    /// Filtration with a single level at grade 0.
    static Filtration constant(const SimplicialComplex& complex)
    {
        return from_complex(complex, [](SimplexId) { return 0.0; });
    }

    const SimplicialComplex& complex() const noexcept { return complex_; }
    std::size_t size() const noexcept { return grades_.size(); }
    bool empty() const noexcept { return grades_.empty(); }

    double grade(SimplexId id) const { return grades_.at(id); }
    const std::vector<double>& grades() const noexcept { return grades_; }

    /// Sorted distinct grades.
    const std::vector<double>& levels() const noexcept { return levels_; }
    std::size_t num_levels() const noexcept { return levels_.size(); }

    /// Index of the level at which simplex `id` enters.
    std::size_t level_of(SimplexId id) const
    {
        return static_cast<std::size_t>(
            std::lower_bound(levels_.begin(), levels_.end(), grade(id)) - levels_.begin());
    }

    /// Number of simplices with grade <= t.
    std::size_t sublevel_size(double t) const
    {
        return static_cast<std::size_t>(
            std::upper_bound(grades_.begin(), grades_.end(), t) - grades_.begin());
    }

    /// Number of simplices present at level index `level`.
    std::size_t level_size(std::size_t level) const { return level_end_.at(level); }

    /// The subcomplex K_t of simplices with grade <= t. Ids are preserved.
    SimplicialComplex sublevel(double t) const { return complex_.prefix(sublevel_size(t)); }

    /// Grades of the leading `count` simplices, for use alongside a prefix.
    Filtration prefix(std::size_t count) const
    {
        count = std::min(count, size());
        Filtration f;
        f.complex_ = complex_.prefix(count);
        f.grades_.assign(grades_.begin(), grades_.begin() + static_cast<std::ptrdiff_t>(count));
        f.index_levels();
        return f;
    }

private:
    static bool canonical_less(const GradedSimplex& a, const GradedSimplex& b)
    {
        return std::forward_as_tuple(a.grade, a.vertices.size(), a.vertices) <
               std::forward_as_tuple(b.grade, b.vertices.size(), b.vertices);
    }

    void index_levels()
    {
        levels_.clear();
        level_end_.clear();
        for (std::size_t i = 0; i < grades_.size(); ++i) {
            if (levels_.empty() || grades_[i] != levels_.back()) {
                if (!levels_.empty()) level_end_.push_back(i);
                levels_.push_back(grades_[i]);
            }
        }
        if (!levels_.empty()) level_end_.push_back(grades_.size());
    }

    SimplicialComplex complex_;
    std::vector<double> grades_;
    std::vector<double> levels_;
    std::vector<std::size_t> level_end_;
};

// ---------------------------------------------------------------------------
// Text format: one simplex per line, "<grade> <v0> <v1> ... <vk>", '#' starts
// a comment.

/// Shortest decimal representation that parses back to the same double.
inline std::string format_grade(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

struct ParseOptions {
    bool auto_close = false;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line, std::string_view seps)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && seps.find(line[i]) != std::string_view::npos) ++i;
        std::size_t j = i;
        while (j < line.size() && seps.find(line[j]) == std::string_view::npos) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline double parse_double(std::string_view token, std::size_t line_no)
{
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": bad number '" + std::string(token) + "'");
    }
    return value;
}

inline VertexId parse_vertex(std::string_view token, std::size_t line_no)
{
    unsigned long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value > 0xfffffffeULL) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": bad vertex '" + std::string(token) + "'");
    }
    return static_cast<VertexId>(value);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn)
{
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(line, line_no);
        if (end == text.size()) break;
        start = end + 1;
    }
}

} // namespace detail

inline Filtration parse_filtration(std::string_view text, ParseOptions options = {})
{
    std::vector<GradedSimplex> input;
    detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto fields = detail::split_fields(line, " \t");
        if (fields.empty()) return;
        if (fields.size() < 2) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": expected a grade and vertices");
        }
        GradedSimplex gs;
        gs.grade = detail::parse_double(fields[0], line_no);
        if (gs.grade < 0.0) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(line_no) + ": negative grade");
        }
        for (std::size_t i = 1; i < fields.size(); ++i) {
            gs.vertices.push_back(detail::parse_vertex(fields[i], line_no));
        }
        input.push_back(std::move(gs));
    });
    return Filtration::from_graded(std::move(input), options.auto_close);
}

/// Writes the canonical text form; parse_filtration of the result reproduces
/// the same filtration, and serialising that again yields identical bytes.
inline std::string serialize_filtration(const Filtration& f)
{
    std::string out;
    const auto& k = f.complex();
    for (SimplexId i = 0; i < k.size(); ++i) {
        out += format_grade(f.grade(i));
        for (VertexId v : k.vertices(i)) {
            out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Point clouds and Vietoris-Rips filtrations.

/// Symmetric matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    static DistanceMatrix from_points(const std::vector<std::vector<double>>& points)
    {
        if (points.empty()) throw Error(ErrorCode::EmptyCloud, "point cloud has no points");
        const std::size_t dim = points.front().size();
        for (const auto& p : points) {
            if (p.size() != dim) {
                throw Error(ErrorCode::ParseError, "points have differing coordinate counts");
            }
            for (double x : p) {
                if (!std::isfinite(x)) throw Error(ErrorCode::ParseError, "non-finite coordinate");
            }
        }
        DistanceMatrix m;
        m.n_ = points.size();
        m.d_.assign(m.n_ * m.n_, 0.0);
        for (std::size_t i = 0; i < m.n_; ++i) {
            for (std::size_t j = i + 1; j < m.n_; ++j) {
                double s = 0.0;
                for (std::size_t c = 0; c < dim; ++c) {
                    const double diff = points[i][c] - points[j][c];
                    s += diff * diff;
                }
                const double dist = std::sqrt(s);
                m.d_[i * m.n_ + j] = dist;
                m.d_[j * m.n_ + i] = dist;
            }
        }
        return m;
    }

    static DistanceMatrix from_matrix(const std::vector<std::vector<double>>& rows)
    {
        if (rows.empty()) throw Error(ErrorCode::EmptyCloud, "distance matrix is empty");
        DistanceMatrix m;
        m.n_ = rows.size();
        m.d_.assign(m.n_ * m.n_, 0.0);
        for (std::size_t i = 0; i < m.n_; ++i) {
            if (rows[i].size() != m.n_) {
                throw Error(ErrorCode::NonSymmetricMatrix, "distance matrix is not square");
            }
            for (std::size_t j = 0; j < m.n_; ++j) {
                const double v = rows[i][j];
                if (!std::isfinite(v) || v < 0.0) {
                    throw Error(ErrorCode::NonSymmetricMatrix,
                                "distances must be finite and non-negative");
                }
                m.d_[i * m.n_ + j] = v;
            }
        }
        for (std::size_t i = 0; i < m.n_; ++i) {
            if (m.d_[i * m.n_ + i] != 0.0) {
                throw Error(ErrorCode::NonSymmetricMatrix, "diagonal must be zero");
            }
            for (std::size_t j = i + 1; j < m.n_; ++j) {
                if (m.d_[i * m.n_ + j] != m.d_[j * m.n_ + i]) {
                    throw Error(ErrorCode::NonSymmetricMatrix,
                                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") differs from its transpose");
                }
            }
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// Reads a CSV of points (one per row) or, with `distance_matrix`, a full
/// square matrix one row per line.
inline DistanceMatrix parse_point_cloud(std::string_view text, bool distance_matrix = false)
{
    std::vector<std::vector<double>> rows;
    detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto fields = detail::split_fields(line, distance_matrix ? " \t," : ",");
        if (fields.empty()) return;
        std::vector<double> row;
        for (auto f : fields) {
            // tolerate padding around CSV cells
            while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
            while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
            row.push_back(detail::parse_double(f, line_no));
        }
        rows.push_back(std::move(row));
    });
    if (rows.empty()) throw Error(ErrorCode::EmptyCloud, "no rows in input");
    return distance_matrix ? DistanceMatrix::from_matrix(rows) : DistanceMatrix::from_points(rows);
}

/// Vietoris-Rips filtration up to dimension `max_dim`.
///
/// Each simplex is graded by the largest pairwise distance among its
/// vertices. When `thresholds` is given, that value is rounded up to the
/// least threshold not below it and simplices beyond the last threshold are
/// dropped; otherwise every simplex is kept at its exact diameter.
inline Filtration vietoris_rips(const DistanceMatrix& cloud, int max_dim,
                                const std::optional<std::vector<double>>& thresholds = std::nullopt)
{
    if (cloud.size() == 0) throw Error(ErrorCode::EmptyCloud, "point cloud has no points");
    if (max_dim < 0) throw Error(ErrorCode::InvalidArgument, "max_dim must be non-negative");
    if (thresholds) {
        if (thresholds->empty()) throw Error(ErrorCode::InvalidArgument, "empty threshold list");
        for (std::size_t i = 0; i < thresholds->size(); ++i) {
            const double t = (*thresholds)[i];
            if (!std::isfinite(t) || t < 0.0 || (i > 0 && t <= (*thresholds)[i - 1])) {
                throw Error(ErrorCode::InvalidArgument,
                            "thresholds must be finite, non-negative and strictly increasing");
            }
        }
    }
    const std::size_t n = cloud.size();
    const double limit = thresholds ? thresholds->back() : HUGE_VAL;
    auto snap = [&](double diameter) {
        if (!thresholds) return diameter;
        return *std::lower_bound(thresholds->begin(), thresholds->end(), diameter);
    };

    std::vector<GradedSimplex> out;
    std::vector<VertexId> current;
    // Depth-first clique enumeration over increasing vertex labels.
    auto extend = [&](auto&& self, double diameter, const std::vector<VertexId>& candidates) -> void {
        out.push_back({snap(diameter), current});
        if (static_cast<int>(current.size()) > max_dim) return;
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            const VertexId v = candidates[ci];
            double grown = diameter;
            for (VertexId u : current) grown = std::max(grown, cloud(u, v));
            std::vector<VertexId> next;
            for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj) {
                if (cloud(v, candidates[cj]) <= limit) next.push_back(candidates[cj]);
            }
            current.push_back(v);
            self(self, grown, next);
            current.pop_back();
        }
    };
    for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> candidates;
        for (VertexId u = v + 1; u < n; ++u) {
            if (cloud(v, u) <= limit) candidates.push_back(u);
        }
        current.assign(1, v);
        extend(extend, 0.0, candidates);
    }
    return Filtration::from_graded(std::move(out), false);
}

/// Cone over `complex` with a fresh apex vertex labelled one past the largest
/// vertex label in use (0 for the empty complex).
inline SimplicialComplex cone(const SimplicialComplex& complex)
{
    VertexId apex = 0;
    for (SimplexId i = 0; i < complex.size(); ++i) {
        for (VertexId v : complex.vertices(i)) apex = std::max(apex, v + 1);
    }
    SimplicialComplex out;
    for (SimplexId i = 0; i < complex.size(); ++i) out.add_simplex(complex.vertices(i));
    out.add_simplex({apex});
    std::vector<VertexId> joined;
    for (SimplexId i = 0; i < complex.size(); ++i) {
        auto vs = complex.vertices(i);
        joined.assign(vs.begin(), vs.end());
        joined.push_back(apex);
        out.add_simplex(joined);
    }
    return out;
}

} // namespace morseprof
