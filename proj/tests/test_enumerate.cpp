#include "normalpoly/coords.hpp"
#include "normalpoly/enumerate.hpp"

#include "corpus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace normalpoly;

namespace {

void expectMatchesOracle(const MatchingSystem& m, const std::string& label)
{
    auto ours = enumerateVertices(m, EnumerationMode::Full);
    auto brute = oracle::vertices(m);
    EXPECT_EQ(ours.vertices, brute) << label << " (" << systemName(m.system) << ")";
}

}   // namespace

TEST(ExtremeRays, OrthantWithoutEquations)
{
    auto rays = extremeRays({}, 5, CoordSystem::Quad, 0, EnumerationMode::Full);
    ASSERT_EQ(rays.size(), 5u);
    for (const auto& r : rays)
        EXPECT_EQ(std::count(r.coords.begin(), r.coords.end(), Integer(1)), 1);
}

TEST(Adjacency, Basics)
{
    std::vector<Ray> rays;
    for (std::size_t k = 0; k < 4; ++k)
    {
        IntVector e(4, 0);
        e[k] = 1;
        rays.emplace_back(e);
    }
    EXPECT_TRUE(adjacentCombinatorial(rays[0], rays[1], rays));
    EXPECT_FALSE(adjacentCombinatorial(rays[2], rays[2], rays));
    EXPECT_TRUE(adjacentAlgebraic(rays[0], rays[1], {}));
    EXPECT_FALSE(adjacentAlgebraic(rays[2], rays[2], {}));
}

TEST(Adjacency, CombinatorialAgreesWithRankTest)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 25; ++trial)
    {
        const std::size_t m = 7;
        Matrix<Integer> eq(3, IntVector(m));
        for (auto& r : eq)
            for (auto& x : r)
                x = d(rng);
        auto rays = extremeRays(eq, m, CoordSystem::Quad, 0, EnumerationMode::Full);
        for (std::size_t a = 0; a < rays.size(); ++a)
            for (std::size_t b = 0; b < rays.size(); ++b)
                EXPECT_EQ(adjacentCombinatorial(rays[a], rays[b], rays), adjacentAlgebraic(rays[a], rays[b], eq))
                    << "trial " << trial;
    }
}

TEST(Adjacency, AlgebraicOptionGivesSameVertices)
{
    EnumerationOptions alg{true};
    for (const auto& e : corpus::exhaustive(1))
        for (auto m : {quadMatching(e.tri), standardMatching(e.tri)})
            EXPECT_EQ(enumerateVertices(m, EnumerationMode::Full, alg).vertices,
                      enumerateVertices(m, EnumerationMode::Full).vertices);
}

TEST(ZeroSet, Examples)
{
    EXPECT_EQ(zeroSet(NormalVector(CoordSystem::Quad, 2)).indices, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(zeroSet(tetSolution(0, 2)).indices, (std::vector<std::size_t>{3, 4, 5}));
}

TEST(Enumerate, DoubleTetrahedronStandardContainsLinks)
{
    auto t = doubleTetrahedron();
    auto vs = enumerateVertices(standardMatching(t), EnumerationMode::Full);
    for (const auto& l : vertexLinks(t))
    {
        RatVector scaled = l.entries;
        for (auto& x : scaled)
            x /= l.sum();
        EXPECT_NE(std::find(vs.vertices.begin(), vs.vertices.end(), NormalVector(CoordSystem::Standard, 2, scaled)),
                  vs.vertices.end());
    }
}

TEST(Enumerate, OutputIsCanonical)
{
    for (const auto& e : corpus::exhaustive(1))
    {
        auto m = standardMatching(e.tri);
        auto vs = enumerateVertices(m, EnumerationMode::Full);
        EXPECT_TRUE(std::is_sorted(vs.vertices.begin(), vs.vertices.end(),
                                   [](const NormalVector& a, const NormalVector& b) { return a.entries < b.entries; }));
        EXPECT_EQ(std::adjacent_find(vs.vertices.begin(), vs.vertices.end()), vs.vertices.end());
        EXPECT_TRUE(isValidVertexSet(vs, m));
        for (std::size_t i = 0; i < vs.vertices.size(); ++i)
        {
            EXPECT_EQ(vs.vertices[i].sum(), 1);
            EXPECT_EQ(vs.admissible[i], isAdmissible(vs.vertices[i]));
            EXPECT_TRUE(isVertexOf(vs.vertices[i], m));
        }
    }
}

TEST(Enumerate, NonVertexRejected)
{
    auto m = quadMatching(doubleTetrahedron());
    auto vs = enumerateVertices(m, EnumerationMode::Full);
    ASSERT_GE(vs.vertices.size(), 2u);
    RatVector mid(6);
    for (std::size_t k = 0; k < 6; ++k)
        mid[k] = (vs.vertices[0][k] + vs.vertices[1][k]) / 2;
    EXPECT_FALSE(isVertexOf(NormalVector(CoordSystem::Quad, 2, mid), m));
}

TEST(Enumerate, PrunedEqualsAdmissibleRestriction)
{
    auto check = [](const MatchingSystem& m) {
        auto full = enumerateVertices(m, EnumerationMode::Full);
        auto pruned = enumerateVertices(m, EnumerationMode::Pruned);
        EXPECT_EQ(pruned.vertices, admissibleRestriction(full).vertices);
        EXPECT_TRUE(std::all_of(pruned.admissible.begin(), pruned.admissible.end(), [](bool b) { return b; }));
    };
    check(quadMatching(doubleTetrahedron()));
    check(standardMatching(doubleTetrahedron()));
    for (const auto& e : corpus::randomSample(3, 3, 5))
    {
        check(quadMatching(e.tri));
        check(standardMatching(e.tri));
    }
}

TEST(Enumerate, MatchesSupportOracleOneTet)
{
    for (const auto& e : corpus::exhaustive(1))
    {
        expectMatchesOracle(quadMatching(e.tri), e.label);
        expectMatchesOracle(standardMatching(e.tri), e.label);
    }
}

TEST(Enumerate, MatchesSupportOracleTwoTets)
{
    auto members = corpus::exhaustive(2);
    for (std::size_t i = 0; i < members.size(); ++i)
    {
        expectMatchesOracle(quadMatching(members[i].tri), members[i].label);
        if (i % 250 == 0)
            expectMatchesOracle(standardMatching(members[i].tri), members[i].label);
    }
    expectMatchesOracle(standardMatching(doubleTetrahedron()), "double-tetrahedron");
}

TEST(Enumerate, MatchesSupportOracleThreeTets)
{
    for (const auto& e : corpus::randomSample(3, 4, 17))
        expectMatchesOracle(quadMatching(e.tri), e.label);
}

TEST(Enumerate, AdmissibleQuadVerticesAtMostFourToTheN)
{
    for (const auto& e : corpus::all())
    {
        auto vs = enumerateVertices(quadMatching(e.tri), EnumerationMode::Pruned);
        EXPECT_LE(vs.vertices.size(), std::size_t{1} << (2 * e.tri.size())) << e.label;
    }
}
