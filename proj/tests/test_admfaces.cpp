#include "normalpoly/admfaces.hpp"

#include "corpus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace normalpoly;

namespace {

VertexSet quadUnitVertices()
{
    VertexSet vs;
    vs.system = CoordSystem::Quad;
    vs.tets = 1;
    for (int k = 0; k < 3; ++k)
    {
        RatVector e(3, 0);
        e[k] = 1;
        vs.vertices.emplace_back(CoordSystem::Quad, 1, e);
        vs.admissible.push_back(true);
    }
    return vs;
}

std::vector<std::vector<std::size_t>> vertexLists(const std::vector<AdmissibleFace>& faces)
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& f : faces)
        out.push_back(f.vertexIndices);
    return out;
}

FaceProfile prof(std::map<int, std::uint64_t> m)
{
    return FaceProfile{std::move(m)};
}

}   // namespace

TEST(Faces, NoAdmissibleVerticesGivesEmptyFace)
{
    VertexSet vs = quadUnitVertices();
    vs.admissible.assign(3, false);
    auto faces = maximalAdmissibleFaces(vs);
    ASSERT_EQ(faces.size(), 1u);
    EXPECT_TRUE(faces[0].empty());
    EXPECT_EQ(faces[0].dim, -1);
    EXPECT_EQ(profile(faces), prof({{-1, 1}}));
    EXPECT_TRUE(checkFaceStructure(vs, faces).pass);
}

TEST(Faces, PairwiseIncompatibleGivesSingletons)
{
    VertexSet vs = quadUnitVertices();
    auto faces = maximalAdmissibleFaces(vs);
    ASSERT_EQ(faces.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
    {
        EXPECT_EQ(faces[i].vertexIndices, std::vector<std::size_t>{i});
        EXPECT_EQ(faces[i].dim, 0);
    }
}

TEST(Faces, DoubleTetrahedronProfiles)
{
    auto t = doubleTetrahedron();
    auto q = enumerateVertices(quadMatching(t), EnumerationMode::Full);
    auto s = enumerateVertices(standardMatching(t), EnumerationMode::Full);
    auto qf = maximalAdmissibleFaces(q), sf = maximalAdmissibleFaces(s);
    EXPECT_EQ(vertexLists(qf), oracle::maximalCompatibleSets(q));
    EXPECT_EQ(vertexLists(sf), oracle::maximalCompatibleSets(s));
    EXPECT_TRUE(checkBijection(profile(qf), profile(sf), 4).pass);
    EXPECT_TRUE(checkVertexLinkMembership(sf, vertexLinks(t)).pass);
    EXPECT_TRUE(checkFaceStructure(q, qf).pass);
    EXPECT_TRUE(checkFaceStructure(s, sf).pass);
}

TEST(Faces, CliquesMatchBruteForceOnSmallCorpus)
{
    for (std::size_t n : {1, 2})
        for (const auto& e : corpus::exhaustive(n))
            for (auto m : {quadMatching(e.tri), standardMatching(e.tri)})
            {
                auto vs = enumerateVertices(m, EnumerationMode::Full);
                if (vs.admissibleCount() == 0 || vs.admissibleCount() > 15)
                    continue;
                EXPECT_EQ(vertexLists(maximalAdmissibleFaces(vs)), oracle::maximalCompatibleSets(vs)) << e.label;
            }
}

TEST(Faces, AffineDimension)
{
    std::vector<NormalVector> pts;
    EXPECT_EQ(affineDimension(pts), -1);
    pts.emplace_back(CoordSystem::Quad, 1, RatVector{1, 0, 0});
    EXPECT_EQ(affineDimension(pts), 0);
    pts.emplace_back(CoordSystem::Quad, 1, RatVector{0, 1, 0});
    pts.emplace_back(CoordSystem::Quad, 1, RatVector{Rational(1, 2), Rational(1, 2), 0});
    EXPECT_EQ(affineDimension(pts), 1);
    pts.emplace_back(CoordSystem::Quad, 1, RatVector{0, 0, 1});
    EXPECT_EQ(affineDimension(pts), 2);
}

TEST(Checks, DimBound)
{
    EXPECT_TRUE(checkDimBound(prof({{0, 3}, {1, 1}}), 2).pass);
    for (std::size_t n : {1, 3, 6})
        EXPECT_FALSE(checkDimBound(prof({{static_cast<int>(n) - 1, 2}}), n).pass);
    EXPECT_TRUE(checkDimBound(prof({{-1, 1}}), 3).pass);
    EXPECT_FALSE(checkDimBound(prof({{3, 1}}), 3).pass);
    EXPECT_FALSE(checkDimBound(prof({{0, 10}}), 3).pass);
    EXPECT_TRUE(checkDimBound(prof({{0, 9}}), 3).pass);
}

TEST(Checks, UniqueTopFace)
{
    EXPECT_TRUE(checkUniqueTopFace(prof({{2, 1}}), 3).pass);
    EXPECT_FALSE(checkUniqueTopFace(prof({{2, 1}, {0, 1}}), 3).pass);
    EXPECT_FALSE(checkUniqueTopFace(prof({{0, 3}, {1, 1}}), 2).pass);
    EXPECT_TRUE(checkUniqueTopFace(prof({{0, 3}}), 2).pass);
}

TEST(Checks, Bijection)
{
    EXPECT_TRUE(checkBijection(prof({{-1, 1}}), prof({{3, 1}}), 4).pass);
    EXPECT_FALSE(checkBijection(prof({{-1, 1}}), prof({{2, 1}}), 4).pass);
    EXPECT_TRUE(checkBijection(prof({{0, 2}, {1, 1}}), prof({{1, 2}, {2, 1}}), 1).pass);
    EXPECT_FALSE(checkBijection(prof({{0, 2}, {1, 1}}), prof({{1, 2}, {2, 1}, {5, 1}}), 1).pass);
}

TEST(Checks, LinkMembershipSyntheticFailure)
{
    auto t = doubleTetrahedron();
    auto links = vertexLinks(t);
    AdmissibleFace bad;
    bad.vertexIndices = {0};
    bad.dim = 0;
    bad.commonZeroSet.indices = {0};   // t_{0,0} is in the support of the first link
    std::vector<AdmissibleFace> faces{bad};
    EXPECT_FALSE(checkVertexLinkMembership(faces, links).pass);
    faces[0].commonZeroSet.indices = {4, 5, 6};
    EXPECT_TRUE(checkVertexLinkMembership(faces, links).pass);
}

TEST(Checks, FaceStructureCatchesBrokenInput)
{
    VertexSet vs = quadUnitVertices();
    std::vector<AdmissibleFace> merged{makeFace(vs, {0, 1}), makeFace(vs, {2})};
    EXPECT_FALSE(checkFaceStructure(vs, merged).pass);
    std::vector<AdmissibleFace> missing{makeFace(vs, {0}), makeFace(vs, {1})};
    EXPECT_FALSE(checkFaceStructure(vs, missing).pass);
}
