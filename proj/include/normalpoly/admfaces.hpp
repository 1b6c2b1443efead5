/**
 * Maximal admissible faces of a solution polytope.  A maximal admissible
 * face is the convex hull of a maximal set of pairwise compatible
 * admissible vertices, so faces are found as maximal cliques of the
 * compatibility graph and only their vertex sets and dimensions are kept.
 */
#pragma once

#include "normalpoly/coords.hpp"
#include "normalpoly/enumerate.hpp"
#include "normalpoly/exact.hpp"
#include "normalpoly/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace normalpoly {

struct CompatibilityGraph
{
    std::vector<std::size_t> nodes;                     // indices into VertexSet::vertices
    std::vector<boost::dynamic_bitset<>> neighbours;    // over positions in `nodes`

    std::size_t size() const { return nodes.size(); }
    bool adjacent(std::size_t a, std::size_t b) const { return neighbours[a][b]; }
};

inline CompatibilityGraph compatibilityGraph(const VertexSet& vs)
{
    CompatibilityGraph g;
    for (std::size_t i = 0; i < vs.vertices.size(); ++i)
        if (vs.admissible[i])
            g.nodes.push_back(i);
    const std::size_t k = g.nodes.size();
    g.neighbours.assign(k, boost::dynamic_bitset<>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (areCompatible(vs.vertices[g.nodes[a]], vs.vertices[g.nodes[b]]))
            {
                g.neighbours[a][b] = true;
                g.neighbours[b][a] = true;
            }
    return g;
}

struct AdmissibleFace
{
    std::vector<std::size_t> vertexIndices;   // indices into VertexSet::vertices, ascending
    int dim = -1;
    ZeroSet commonZeroSet;

    bool empty() const { return vertexIndices.empty(); }
};

struct FaceProfile
{
    std::map<int, std::uint64_t> countsByDim;

    std::uint64_t count(int d) const
    {
        auto it = countsByDim.find(d);
        return it == countsByDim.end() ? 0 : it->second;
    }

    std::uint64_t total() const
    {
        std::uint64_t t = 0;
        for (const auto& [d, c] : countsByDim)
            t += c;
        return t;
    }

    bool operator==(const FaceProfile&) const = default;
};

/** Affine dimension of a point set: rank of the differences from the first point. */
inline int affineDimension(std::span<const NormalVector> points)
{
    if (points.empty())
        return -1;
    const std::size_t m = points.front().size();
    Matrix<Rational> diffs;
    for (std::size_t k = 1; k < points.size(); ++k)
    {
        RatVector d(m);
        for (std::size_t j = 0; j < m; ++j)
            d[j] = points[k][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    return static_cast<int>(rank(diffs, m));
}

namespace detail {

using NodeSet = boost::dynamic_bitset<>;

/** Bron-Kerbosch with the Tomita pivot (most neighbours in P, lowest index on ties). */
inline void bronKerbosch(const CompatibilityGraph& g, std::vector<std::size_t>& r, NodeSet p, NodeSet x,
                         std::vector<std::vector<std::size_t>>& out)
{
    if (p.none() && x.none())
    {
        out.push_back(r);
        return;
    }
    NodeSet px = p | x;
    std::size_t pivot = NodeSet::npos;
    std::size_t best = 0;
    for (auto u = px.find_first(); u != NodeSet::npos; u = px.find_next(u))
    {
        std::size_t deg = (p & g.neighbours[u]).count();
        if (pivot == NodeSet::npos || deg > best)
        {
            pivot = u;
            best = deg;
        }
    }
    NodeSet candidates = p - g.neighbours[pivot];
    for (auto v = candidates.find_first(); v != NodeSet::npos; v = candidates.find_next(v))
    {
        r.push_back(v);
        bronKerbosch(g, r, p & g.neighbours[v], x & g.neighbours[v], out);
        r.pop_back();
        p[v] = false;
        x[v] = true;
    }
}

}   // namespace detail

/** All maximal cliques, as ascending lists of graph positions, sorted. */
inline std::vector<std::vector<std::size_t>> maximalCliques(const CompatibilityGraph& g)
{
    std::vector<std::vector<std::size_t>> out;
    if (g.size() == 0)
        return out;
    std::vector<std::size_t> r;
    detail::NodeSet p(g.size());
    p.set();
    detail::bronKerbosch(g, r, p, detail::NodeSet(g.size()), out);
    for (auto& c : out)
        std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline AdmissibleFace makeFace(const VertexSet& vs, std::vector<std::size_t> vertexIndices)
{
    AdmissibleFace f;
    std::sort(vertexIndices.begin(), vertexIndices.end());
    f.vertexIndices = std::move(vertexIndices);
    std::vector<NormalVector> pts;
    pts.reserve(f.vertexIndices.size());
    for (auto i : f.vertexIndices)
        pts.push_back(vs.vertices[i]);
    f.dim = affineDimension(pts);
    if (!pts.empty())
    {
        for (std::size_t k = 0; k < pts.front().size(); ++k)
            if (std::all_of(pts.begin(), pts.end(), [k](const NormalVector& v) { return v[k] == 0; }))
                f.commonZeroSet.indices.push_back(k);
    }
    return f;
}

/**
 * One face per maximal clique of compatible admissible vertices, sorted by
 * vertex list.  With no admissible vertices the empty face (dimension -1)
 * is the unique maximal admissible face.
 */
inline std::vector<AdmissibleFace> maximalAdmissibleFaces(const VertexSet& vs)
{
    CompatibilityGraph g = compatibilityGraph(vs);
    std::vector<AdmissibleFace> faces;
    if (g.size() == 0)
    {
        faces.push_back(AdmissibleFace{});
        return faces;
    }
    for (const auto& clique : maximalCliques(g))
    {
        std::vector<std::size_t> idx;
        idx.reserve(clique.size());
        for (auto pos : clique)
            idx.push_back(g.nodes[pos]);
        faces.push_back(makeFace(vs, std::move(idx)));
    }
    std::sort(faces.begin(), faces.end(),
              [](const AdmissibleFace& a, const AdmissibleFace& b) { return a.vertexIndices < b.vertexIndices; });
    return faces;
}

inline FaceProfile profile(std::span<const AdmissibleFace> faces)
{
    FaceProfile p;
    for (const auto& f : faces)
        ++p.countsByDim[f.dim];
    return p;
}

struct CheckResult
{
    bool pass = true;
    std::string detail;

    static CheckResult ok() { return {}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

/** Quad dimensions stay below n and at most 3^(n-1-d) maximal faces have dimension d. */
inline CheckResult checkDimBound(const FaceProfile& p, std::size_t n)
{
    for (const auto& [d, c] : p.countsByDim)
    {
        if (d < 0 || c == 0)
            continue;
        if (d > static_cast<int>(n) - 1)
            return CheckResult::fail("maximal admissible face of dimension " + std::to_string(d) +
                                     " exceeds n-1 = " + std::to_string(n - 1));
        Integer bound = pow(Integer(3), static_cast<unsigned>(n - 1 - d));
        if (Integer(c) > bound)
            return CheckResult::fail(std::to_string(c) + " maximal faces of dimension " + std::to_string(d) +
                                     " exceed 3^" + std::to_string(n - 1 - d));
    }
    return CheckResult::ok();
}

/** A maximal admissible face of dimension n-1 must be the only one. */
inline CheckResult checkUniqueTopFace(const FaceProfile& p, std::size_t n)
{
    const int top = static_cast<int>(n) - 1;
    if (p.count(top) == 0 || p.total() == 1)
        return CheckResult::ok();
    return CheckResult::fail("face of dimension " + std::to_string(top) + " coexists with " +
                             std::to_string(p.total() - 1) + " other maximal faces");
}

/**
 * Every maximal admissible face of the standard polytope contains every
 * vertex link: no face may be cut by x_k = 0 on a link's support.
 */
inline CheckResult checkVertexLinkMembership(std::span<const AdmissibleFace> sFaces,
                                             std::span<const NormalVector> links)
{
    for (std::size_t fi = 0; fi < sFaces.size(); ++fi)
    {
        const auto& f = sFaces[fi];
        if (f.dim < 0)
            return CheckResult::fail("standard polytope has no admissible face containing the vertex links");
        for (std::size_t li = 0; li < links.size(); ++li)
            for (std::size_t k = 0; k < links[li].size(); ++k)
                if (links[li][k] != 0 && f.commonZeroSet.contains(k))
                    return CheckResult::fail("face " + std::to_string(fi) + " misses vertex link " +
                                             std::to_string(li) + " (coordinate " + std::to_string(k) + ")");
    }
    return CheckResult::ok();
}

/** Standard faces are the quad faces with dimensions shifted up by v. */
inline CheckResult checkBijection(const FaceProfile& q, const FaceProfile& s, std::size_t v)
{
    const int shift = static_cast<int>(v);
    for (const auto& [d, c] : q.countsByDim)
        if (c != 0 && s.count(d + shift) != c)
            return CheckResult::fail("quad dimension " + std::to_string(d) + " has " + std::to_string(c) +
                                     " faces but standard dimension " + std::to_string(d + shift) + " has " +
                                     std::to_string(s.count(d + shift)));
    for (const auto& [d, c] : s.countsByDim)
        if (c != 0 && q.count(d - shift) != c)
            return CheckResult::fail("standard dimension " + std::to_string(d) + " has no quad counterpart");
    return CheckResult::ok();
}

/**
 * Structural properties of a face list: members pairwise compatible,
 * cliques maximal, every admissible vertex covered, no repeated face.
 */
inline CheckResult checkFaceStructure(const VertexSet& vs, std::span<const AdmissibleFace> faces)
{
    const std::size_t admissible = vs.admissibleCount();
    if (admissible == 0)
    {
        if (faces.size() == 1 && faces[0].empty() && faces[0].dim == -1)
            return CheckResult::ok();
        return CheckResult::fail("expected only the empty face");
    }
    std::vector<bool> covered(vs.vertices.size(), false);
    for (std::size_t fi = 0; fi < faces.size(); ++fi)
    {
        const auto& f = faces[fi];
        if (fi > 0 && faces[fi - 1].vertexIndices == f.vertexIndices)
            return CheckResult::fail("repeated face");
        for (auto a : f.vertexIndices)
        {
            if (!vs.admissible[a])
                return CheckResult::fail("face contains an inadmissible vertex");
            covered[a] = true;
            for (auto b : f.vertexIndices)
                if (!areCompatible(vs.vertices[a], vs.vertices[b]))
                    return CheckResult::fail("face contains incompatible vertices");
        }
        for (std::size_t w = 0; w < vs.vertices.size(); ++w)
        {
            if (!vs.admissible[w] || std::binary_search(f.vertexIndices.begin(), f.vertexIndices.end(), w))
                continue;
            bool extends = std::all_of(f.vertexIndices.begin(), f.vertexIndices.end(),
                                       [&](std::size_t a) { return areCompatible(vs.vertices[a], vs.vertices[w]); });
            if (extends)
                return CheckResult::fail("face " + std::to_string(fi) + " is not maximal");
        }
    }
    for (std::size_t i = 0; i < vs.vertices.size(); ++i)
        if (vs.admissible[i] && !covered[i])
            return CheckResult::fail("admissible vertex " + std::to_string(i) + " lies in no maximal face");
    return CheckResult::ok();
}

}   // namespace normalpoly
