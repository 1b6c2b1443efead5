/**
 * Exact double-description enumeration of the vertices of the projective
 * solution space {x >= 0, A x = 0, sum(x) = 1}.
 *
 * The cone {x >= 0} starts with the unit rays; each matching equation is
 * intersected in turn, keeping rays on the hyperplane and combining every
 * adjacent pair on opposite sides.  Rays stay primitive integer vectors
 * until they are scaled onto sum(x) = 1 at emission.
 *
 * In pruned mode rays that break the quadrilateral constraints are dropped
 * after every step.  This loses nothing: an admissible ray can only come
 * from two compatible admissible parents, and any ray whose zero set
 * contains the common zero set of two compatible rays is itself admissible,
 * so the adjacency test over the surviving rays is unchanged.
 */
#pragma once

#include "normalpoly/coords.hpp"
#include "normalpoly/exact.hpp"
#include "normalpoly/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace normalpoly {

enum class EnumerationMode { Full, Pruned };

using ZeroMask = boost::dynamic_bitset<>;

struct SolutionPolytope
{
    MatchingSystem matching;

    CoordSystem system() const { return matching.system; }
    std::size_t tets() const { return matching.tets; }
    std::size_t ambientDim() const { return matching.ambientDim(); }
};

struct VertexSet
{
    CoordSystem system = CoordSystem::Quad;
    std::size_t tets = 0;
    std::vector<NormalVector> vertices;   // sum 1, lexicographically sorted
    std::vector<bool> admissible;

    std::size_t admissibleCount() const
    {
        return static_cast<std::size_t>(std::count(admissible.begin(), admissible.end(), true));
    }

    /** The admissible vertices alone, keeping their relative order. */
    std::vector<NormalVector> admissibleVertices() const
    {
        std::vector<NormalVector> out;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (admissible[i])
                out.push_back(vertices[i]);
        return out;
    }
};

struct EnumerationOptions
{
    /** Use the rank-based adjacency test instead of the zero-set test. */
    bool algebraicAdjacency = false;
};

/** A cone generator: primitive non-negative integer vector and its zero set. */
struct Ray
{
    IntVector coords;
    ZeroMask zeros;

    explicit Ray(IntVector c) : coords(std::move(c)), zeros(coords.size())
    {
        for (std::size_t k = 0; k < coords.size(); ++k)
            zeros[k] = coords[k] == 0;
    }

    Ray(IntVector c, ZeroMask z) : coords(std::move(c)), zeros(std::move(z)) {}
};

inline ZeroSet zeroSet(const NormalVector& x)
{
    ZeroSet z;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] == 0)
            z.indices.push_back(k);
    return z;
}

/**
 * Two extreme rays are adjacent iff no third ray vanishes everywhere both
 * of them vanish.
 */
inline bool adjacentCombinatorial(const Ray& a, const Ray& b, std::span<const Ray> rays)
{
    if (a.coords == b.coords)
        return false;
    ZeroMask common = a.zeros & b.zeros;
    for (const auto& r : rays)
    {
        if (!common.is_subset_of(r.zeros))
            continue;
        if (&r == &a || &r == &b || r.coords == a.coords || r.coords == b.coords)
            continue;
        return false;
    }
    return true;
}

/**
 * Rank form of the same test: adjacent iff the equations plus x_k = 0 on
 * the common zero set leave a two-dimensional solution space.
 */
inline bool adjacentAlgebraic(const Ray& a, const Ray& b, const Matrix<Integer>& equations)
{
    if (a.coords == b.coords)
        return false;
    const std::size_t m = a.coords.size();
    Matrix<Integer> rows = equations;
    ZeroMask common = a.zeros & b.zeros;
    for (auto k = common.find_first(); k != ZeroMask::npos; k = common.find_next(k))
    {
        IntVector e(m, 0);
        e[k] = 1;
        rows.push_back(std::move(e));
    }
    return m - rank(rows, m) == 2;
}

namespace detail {

/** Quad constraints evaluated on a support given as the complement of a zero mask. */
inline bool supportAdmissible(const ZeroMask& zeros, CoordSystem s, std::size_t n)
{
    for (std::size_t tet = 0; tet < n; ++tet)
    {
        int nonzero = 0;
        for (int q = 0; q < 3; ++q)
            if (!zeros[quadIndex(s, tet, q)])
                ++nonzero;
        if (nonzero > 1)
            return false;
    }
    return true;
}

inline NormalVector scaleToUnitSum(const IntVector& coords, CoordSystem s, std::size_t n)
{
    Integer total = 0;
    for (const auto& x : coords)
        total += x;
    RatVector entries;
    entries.reserve(coords.size());
    for (const auto& x : coords)
        entries.emplace_back(x, total);
    return NormalVector(s, n, std::move(entries));
}

}   // namespace detail

/** Extreme rays of {x >= 0, A x = 0}, as primitive integer vectors. */
inline std::vector<Ray> extremeRays(const Matrix<Integer>& equations, std::size_t m, CoordSystem s, std::size_t n,
                                    EnumerationMode mode, const EnumerationOptions& options = {})
{
    std::vector<Ray> rays;
    rays.reserve(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        IntVector e(m, 0);
        e[k] = 1;
        rays.emplace_back(std::move(e));
    }

    Matrix<Integer> processed;
    std::size_t processedRank = 0;
    for (const auto& row : equations)
    {
        std::vector<Integer> value(rays.size());
        std::vector<std::size_t> zero, pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i)
        {
            value[i] = dot(row, rays[i].coords);
            if (value[i] == 0)
                zero.push_back(i);
            else if (value[i] > 0)
                pos.push_back(i);
            else
                neg.push_back(i);
        }
        if (pos.empty() && neg.empty())
            continue;

        // Two adjacent rays span a 2-face, which needs m - 2 independent tight constraints.
        const std::size_t minCommon = m >= 2 + processedRank ? m - 2 - processedRank : 0;

        std::vector<Ray> next;
        next.reserve(zero.size() + pos.size() * neg.size() / 4 + 1);
        for (auto i : zero)
            next.push_back(rays[i]);
        for (auto i : pos)
            for (auto j : neg)
            {
                ZeroMask common = rays[i].zeros & rays[j].zeros;
                if (common.count() < minCommon)
                    continue;
                if (mode == EnumerationMode::Pruned && !detail::supportAdmissible(common, s, n))
                    continue;
                bool adjacent = options.algebraicAdjacency
                                    ? adjacentAlgebraic(rays[i], rays[j], processed)
                                    : adjacentCombinatorial(rays[i], rays[j], rays);
                if (!adjacent)
                    continue;
                IntVector c(m);
                Integer wi = value[i];
                Integer wj = -value[j];
                for (std::size_t k = 0; k < m; ++k)
                    c[k] = wi * rays[j].coords[k] + wj * rays[i].coords[k];
                makePrimitive(c);
                next.emplace_back(std::move(c), std::move(common));
            }

        if (mode == EnumerationMode::Pruned)
            std::erase_if(next, [&](const Ray& r) { return !detail::supportAdmissible(r.zeros, s, n); });
        rays = std::move(next);
        processed.push_back(row);
        processedRank = rank(processed, m);
    }
    return rays;
}

/**
 * Vertices of the projective solution space, scaled to sum 1 and sorted
 * lexicographically.  Pruned mode returns exactly the admissible vertices.
 */
inline VertexSet enumerateVertices(const SolutionPolytope& p, EnumerationMode mode,
                                   const EnumerationOptions& options = {})
{
    const std::size_t m = p.ambientDim();
    auto rays = extremeRays(p.matching.matrix, m, p.system(), p.tets(), mode, options);

    VertexSet vs;
    vs.system = p.system();
    vs.tets = p.tets();
    vs.vertices.reserve(rays.size());
    for (const auto& r : rays)
        vs.vertices.push_back(detail::scaleToUnitSum(r.coords, vs.system, vs.tets));
    std::sort(vs.vertices.begin(), vs.vertices.end(),
              [](const NormalVector& a, const NormalVector& b) { return a.entries < b.entries; });
    vs.vertices.erase(std::unique(vs.vertices.begin(), vs.vertices.end()), vs.vertices.end());
    vs.admissible.reserve(vs.vertices.size());
    for (const auto& v : vs.vertices)
        vs.admissible.push_back(isAdmissible(v));
    return vs;
}

inline VertexSet enumerateVertices(const MatchingSystem& m, EnumerationMode mode,
                                   const EnumerationOptions& options = {})
{
    return enumerateVertices(SolutionPolytope{m}, mode, options);
}

/** The admissible part of a vertex set, as a vertex set of its own. */
inline VertexSet admissibleRestriction(const VertexSet& vs)
{
    VertexSet out;
    out.system = vs.system;
    out.tets = vs.tets;
    out.vertices = vs.admissibleVertices();
    out.admissible.assign(out.vertices.size(), true);
    return out;
}

/**
 * x is a vertex of the polytope iff the equations together with x_k = 0 on
 * its zero set leave a one-dimensional solution space.
 */
inline bool isVertexOf(const NormalVector& x, const MatchingSystem& m)
{
    const std::size_t dim = m.ambientDim();
    Matrix<Integer> rows = m.matrix;
    for (auto k : zeroSet(x).indices)
    {
        IntVector e(dim, 0);
        e[k] = 1;
        rows.push_back(std::move(e));
    }
    return dim - rank(rows, dim) == 1;
}

/** Non-negativity, the matching equations, sum 1, and extremality for every vertex. */
inline bool isValidVertexSet(const VertexSet& vs, const MatchingSystem& m)
{
    if (vs.vertices.size() != vs.admissible.size())
        return false;
    for (std::size_t i = 0; i < vs.vertices.size(); ++i)
    {
        const auto& v = vs.vertices[i];
        if (v.system != m.system || v.tets != m.tets || v.sum() != 1 || !m.satisfiedBy(v.entries))
            return false;
        if (std::any_of(v.entries.begin(), v.entries.end(), [](const Rational& x) { return x < 0; }))
            return false;
        if (vs.admissible[i] != isAdmissible(v) || !isVertexOf(v, m))
            return false;
        if (i > 0 && !(vs.vertices[i - 1].entries < v.entries))
            return false;
    }
    return true;
}

}   // namespace normalpoly
