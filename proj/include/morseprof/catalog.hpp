#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "filtration.hpp"

namespace morseprof::catalog {

/// Triangles of an 8-vertex dunce hat.
///
/// Obtained from a 9-gon whose boundary reads 0,1,2,0,1,2,0,2,1 (the word
/// a a a^-1 with a = 0->1->2->0), surrounded on the inside by a ring of five
/// vertices 3..7 and a fan over the ring. The edges 01, 12, 02 each lie in
/// three triangles; every other edge lies in exactly two, so there is no
/// free face at all.
inline constexpr std::array<std::array<VertexId, 3>, 17> kDunceHatTriangles{{
    {0, 1, 3}, {1, 2, 3}, {0, 2, 4}, {0, 1, 4}, {1, 2, 5}, {0, 2, 5},
    {0, 2, 6}, {1, 2, 6}, {0, 1, 7}, {2, 3, 4}, {1, 4, 5}, {0, 5, 6},
    {1, 6, 7}, {0, 3, 7}, {3, 4, 5}, {3, 5, 6}, {3, 6, 7},
}};

/// Pentagon parameters: unit-circle points at angles 2*pi*k/5, sides of
/// length ~1.176, diagonals ~1.902.
inline constexpr std::array<double, 3> kPentagonThresholds{0.5, 1.2, 2.0};

/// The Rips levels must reach the full 4-simplex for the last stage to be
/// contractible; a 2-skeleton alone carries four independent 2-cycles.
inline constexpr int kPentagonMaxDim = 4;

inline SimplicialComplex point()
{
    SimplicialComplex k;
    k.add_simplex({0});
    return k;
}

/// Boundary of a triangle: 3 vertices, 3 edges.
inline SimplicialComplex circle()
{
    SimplicialComplex k;
    k.add_simplex({0, 1}, Closure::Auto);
    k.add_simplex({1, 2}, Closure::Auto);
    k.add_simplex({0, 2}, Closure::Auto);
    return k;
}

inline SimplicialComplex dunce_hat()
{
    SimplicialComplex k;
    for (const auto& t : kDunceHatTriangles) {
        k.add_simplex(std::span<const VertexId>(t.data(), t.size()), Closure::Auto);
    }
    return k;
}

inline std::vector<std::vector<double>> pentagon_points()
{
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < 5; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / 5.0;
        pts.push_back({std::cos(angle), std::sin(angle)});
    }
    return pts;
}

/// K0 = vertex 0  <  K1 = dunce hat  <  K2 = cone over the dunce hat,
/// at integer grades 0, 1, 2.
inline Filtration dunce_hat_filtration()
{
    const SimplicialComplex hat = dunce_hat();
    const SimplicialComplex coned = cone(hat);
    return Filtration::from_complex(coned, [&](SimplexId id) {
        auto vs = coned.vertices(id);
        if (vs.size() == 1 && vs[0] == 0) return 0.0;
        return hat.find(vs) ? 1.0 : 2.0;
    });
}

inline Filtration pentagon_rips()
{
    return vietoris_rips(DistanceMatrix::from_points(pentagon_points()), kPentagonMaxDim,
                         std::vector<double>(kPentagonThresholds.begin(), kPentagonThresholds.end()));
}

inline const std::vector<std::string_view>& names()
{
    static const std::vector<std::string_view> all{"point", "circle", "dunce-hat",
                                                   "dunce-hat-filtration", "pentagon-rips"};
    return all;
}

inline Filtration by_name(std::string_view name)
{
    if (name == "point") return Filtration::constant(point());
    if (name == "circle") return Filtration::constant(circle());
    if (name == "dunce-hat") return Filtration::constant(dunce_hat());
    if (name == "dunce-hat-filtration") return dunce_hat_filtration();
    if (name == "pentagon-rips") return pentagon_rips();
    throw Error(ErrorCode::UnknownName, "no catalog entry named '" + std::string(name) + "'");
}

} // namespace morseprof::catalog
