#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace morseprof;

namespace {

bool throws_code(ErrorCode code, auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

} // namespace

TEST(SimplicialComplex, EmptyComplex)
{
    SimplicialComplex k;
    EXPECT_TRUE(k.empty());
    EXPECT_EQ(k.dim(), -1);
    EXPECT_EQ(k.euler_characteristic(), 0);
}

TEST(SimplicialComplex, TriangleIncidence)
{
    SimplicialComplex k;
    const auto t = k.add_simplex({2, 0, 1}, Closure::Auto);
    EXPECT_EQ(k.size(), 7U);
    EXPECT_EQ(k.dim(), 2);
    EXPECT_EQ(k.dim(t), 2);
    auto v = k.vertices(t);
    EXPECT_EQ(std::vector<VertexId>(v.begin(), v.end()), (std::vector<VertexId>{0, 1, 2}));
    EXPECT_EQ(k.faces(t).size(), 3U);
    for (SimplexId f : k.faces(t)) {
        EXPECT_EQ(k.dim(f), 1);
        ASSERT_EQ(k.cofaces(f).size(), 1U);
        EXPECT_EQ(k.cofaces(f)[0], t);
    }
    EXPECT_EQ(k.euler_characteristic(), 1);
    EXPECT_EQ(k.count_by_dim(), (std::vector<std::size_t>{3, 3, 1}));
}

TEST(SimplicialComplex, FacesPrecedeCofaces)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto k = oracle::random_complex(rng, 40);
        for (SimplexId i = 0; i < k.size(); ++i) {
            for (SimplexId f : k.faces(i)) EXPECT_LT(f, i);
            auto co = k.cofaces(i);
            EXPECT_TRUE(std::is_sorted(co.begin(), co.end()));
        }
    }
}

TEST(SimplicialComplex, AddIsIdempotent)
{
    SimplicialComplex k;
    const auto a = k.add_simplex({0, 1}, Closure::Auto);
    const auto b = k.add_simplex({1, 0}, Closure::Auto);
    EXPECT_EQ(a, b);
    EXPECT_EQ(k.size(), 3U);
}

TEST(SimplicialComplex, StrictModeRejectsMissingFace)
{
    SimplicialComplex k;
    k.add_simplex({0});
    EXPECT_TRUE(throws_code(ErrorCode::MissingFace, [&] { k.add_simplex({0, 1}); }));
    EXPECT_EQ(k.size(), 1U);
}

TEST(SimplicialComplex, RejectsDuplicateVertex)
{
    SimplicialComplex k;
    EXPECT_TRUE(throws_code(ErrorCode::DuplicateVertex, [&] { k.add_simplex({1, 1}, Closure::Auto); }));
}

TEST(SimplicialComplex, FindAndInvalidId)
{
    SimplicialComplex k;
    k.add_simplex({0, 1, 2}, Closure::Auto);
    const std::vector<VertexId> edge{0, 2};
    const std::vector<VertexId> absent{0, 3};
    ASSERT_TRUE(k.find(edge).has_value());
    EXPECT_EQ(k.dim(*k.find(edge)), 1);
    EXPECT_FALSE(k.find(absent).has_value());
    EXPECT_TRUE(throws_code(ErrorCode::InvalidId, [&] { (void)k.faces(100); }));
}

TEST(SimplicialComplex, BoundaryMatrixRange)
{
    SimplicialComplex k;
    k.add_simplex({0, 1, 2}, Closure::Auto);
    const auto d2 = k.boundary_matrix(2);
    EXPECT_EQ(d2.rows, 3U);
    EXPECT_EQ(d2.cols, 1U);
    EXPECT_EQ(d2.columns[0].size(), 3U);
    EXPECT_TRUE(throws_code(ErrorCode::DimensionOutOfRange, [&] { (void)k.boundary_matrix(0); }));
    EXPECT_TRUE(throws_code(ErrorCode::DimensionOutOfRange, [&] { (void)k.boundary_matrix(3); }));
}

TEST(SimplicialComplex, BoundaryOfBoundaryVanishes)
{
    SimplicialComplex k;
    k.add_simplex({0, 1, 2, 3}, Closure::Auto);
    const auto d1 = k.boundary_matrix(1);
    const auto d2 = k.boundary_matrix(2);
    for (std::size_t c = 0; c < d2.cols; ++c) {
        for (std::size_t r = 0; r < d1.rows; ++r) {
            int sum = 0;
            for (std::size_t m = 0; m < d1.cols; ++m) sum += d1.at(r, m) && d2.at(m, c);
            EXPECT_EQ(sum % 2, 0);
        }
    }
}

TEST(SimplicialComplex, PrefixIsSubcomplex)
{
    const auto hat = catalog::dunce_hat();
    for (std::size_t n = 1; n <= hat.size(); n += 7) {
        const auto p = hat.prefix(n);
        EXPECT_EQ(p.size(), n);
        for (SimplexId i = 0; i < p.size(); ++i) {
            auto a = p.vertices(i);
            auto b = hat.vertices(i);
            EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
        }
    }
}

TEST(SimplicialComplex, EulerCharacteristicMatchesOracleBetti)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = oracle::random_complex(rng, 60);
        const auto b = oracle::betti(k);
        long long chi = 0;
        for (std::size_t p = 0; p < b.size(); ++p) chi += (p % 2 ? -1 : 1) * static_cast<long long>(b[p]);
        EXPECT_EQ(k.euler_characteristic(), chi);
    }
}

TEST(Catalog, DunceHatShape)
{
    const auto hat = catalog::dunce_hat();
    EXPECT_EQ(hat.count_by_dim(), (std::vector<std::size_t>{8, 24, 17}));
    EXPECT_EQ(hat.euler_characteristic(), 1);
    EXPECT_EQ(oracle::betti(hat), (std::vector<std::size_t>{1, 0, 0}));
    // every edge lies in two or three triangles: no free edge
    for (SimplexId i = 0; i < hat.size(); ++i) {
        if (hat.dim(i) == 1) {
            EXPECT_GE(hat.cofaces(i).size(), 2U);
        }
    }
}

TEST(Catalog, ConeShape)
{
    const auto hat = catalog::dunce_hat();
    const auto c = cone(hat);
    EXPECT_EQ(c.size(), 2 * hat.size() + 1);
    EXPECT_EQ(c.dim(), 3);
    EXPECT_EQ(c.euler_characteristic(), 1);
}

TEST(Catalog, UnknownName)
{
    EXPECT_TRUE(throws_code(ErrorCode::UnknownName, [] { (void)catalog::by_name("torus"); }));
    for (auto name : catalog::names()) EXPECT_NO_THROW((void)catalog::by_name(name));
}
