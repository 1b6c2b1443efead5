/**
 * Standard (7n) and quadrilateral (3n) normal coordinates: vector layout,
 * the two matching systems, the projection between them, and the special
 * vectors (vertex links, tetrahedral solutions).
 *
 * Block layout per tetrahedron i:
 *   standard: [t_{i,0} t_{i,1} t_{i,2} t_{i,3} q_{i,0} q_{i,1} q_{i,2}]
 *   quad:     [q_{i,0} q_{i,1} q_{i,2}]
 * Quad type 0 separates vertices 01|23, type 1 separates 02|13 and type 2
 * separates 03|12.
 */
#pragma once

#include "normalpoly/exact.hpp"
#include "normalpoly/linalg.hpp"
#include "normalpoly/triangulation.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace normalpoly {

enum class CoordSystem { Standard, Quad };

inline std::string_view systemName(CoordSystem s)
{
    return s == CoordSystem::Standard ? "std" : "quad";
}

constexpr std::size_t blockSize(CoordSystem s)
{
    return s == CoordSystem::Standard ? 7 : 3;
}

constexpr std::size_t quadOffset(CoordSystem s)
{
    return s == CoordSystem::Standard ? 4 : 0;
}

constexpr std::size_t triIndex(std::size_t tet, int corner)
{
    return 7 * tet + static_cast<std::size_t>(corner);
}

constexpr std::size_t quadIndex(CoordSystem s, std::size_t tet, int type)
{
    return blockSize(s) * tet + quadOffset(s) + static_cast<std::size_t>(type);
}

/** The quad type separating {a, b} from the complementary pair. */
constexpr int quadType(int a, int b)
{
    if (a > b)
        std::swap(a, b);
    if (a == 0)
        return b - 1;
    return (6 - a - b) - 1;
}

class SystemMismatch : public std::invalid_argument
{
    public:
        explicit SystemMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/** The quad solution space does not have dimension 2n. */
class DimensionMismatch : public std::runtime_error
{
    public:
        DimensionMismatch(std::size_t expected, std::size_t actual)
            : std::runtime_error("quadrilateral solution space has dimension " + std::to_string(actual) +
                                 ", expected " + std::to_string(expected)),
              expected_(expected), actual_(actual) {}

        std::size_t expected() const { return expected_; }
        std::size_t actual() const { return actual_; }

    private:
        std::size_t expected_;
        std::size_t actual_;
};

struct NormalVector
{
    CoordSystem system = CoordSystem::Quad;
    std::size_t tets = 0;
    RatVector entries;

    NormalVector() = default;
    NormalVector(CoordSystem s, std::size_t n) : system(s), tets(n), entries(blockSize(s) * n, 0) {}
    NormalVector(CoordSystem s, std::size_t n, RatVector e) : system(s), tets(n), entries(std::move(e))
    {
        if (entries.size() != blockSize(s) * n)
            throw std::invalid_argument("normal vector length does not match coordinate system");
    }

    std::size_t size() const { return entries.size(); }
    const Rational& operator[](std::size_t i) const { return entries[i]; }
    Rational& operator[](std::size_t i) { return entries[i]; }

    const Rational& quad(std::size_t tet, int type) const { return entries[quadIndex(system, tet, type)]; }

    Rational sum() const
    {
        Rational s = 0;
        for (const auto& x : entries)
            s += x;
        return s;
    }

    bool operator==(const NormalVector&) const = default;
};

struct ZeroSet
{
    std::vector<std::size_t> indices;

    bool contains(std::size_t k) const { return std::binary_search(indices.begin(), indices.end(), k); }
    bool operator==(const ZeroSet&) const = default;
    auto operator<=>(const ZeroSet&) const = default;
};

struct MatchingSystem
{
    CoordSystem system = CoordSystem::Standard;
    std::size_t tets = 0;
    Matrix<Integer> matrix;       // rows are equations
    Matrix<Rational> nullBasis;   // canonical (RREF) basis of the solution space
    std::size_t dim = 0;

    std::size_t ambientDim() const { return blockSize(system) * tets; }

    bool satisfiedBy(const RatVector& x) const
    {
        for (const auto& row : matrix)
        {
            Rational s = 0;
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0)
                    s += Rational(row[j]) * x[j];
            if (s != 0)
                return false;
        }
        return true;
    }
};

/**
 * The 6n standard matching equations: for each face pairing and each
 * vertex v of the face, the triangles and quads meeting that face in the
 * arc around v must agree on both sides.
 */
inline MatchingSystem standardMatching(const Triangulation& t)
{
    const std::size_t n = t.size();
    MatchingSystem m;
    m.system = CoordSystem::Standard;
    m.tets = n;
    for (std::size_t tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f)
        {
            const Gluing& g = t.gluing(tet, f);
            const int df = g.perm[f];
            if (std::pair(g.tet, df) < std::pair(tet, f))
                continue;
            for (int v = 0; v < 4; ++v)
            {
                if (v == f)
                    continue;
                const int dv = g.perm[v];
                IntVector row(7 * n, 0);
                row[triIndex(tet, v)] += 1;
                row[quadIndex(CoordSystem::Standard, tet, quadType(v, f))] += 1;
                row[triIndex(g.tet, dv)] -= 1;
                row[quadIndex(CoordSystem::Standard, g.tet, quadType(dv, df))] -= 1;
                m.matrix.push_back(std::move(row));
            }
        }
    auto kernel = integerNullSpace(m.matrix, 7 * n);
    m.nullBasis = canonicalBasis(kernel, 7 * n);
    m.dim = m.nullBasis.size();
    return m;
}

/** Deletes the 4n triangle coordinates. */
inline NormalVector project(const NormalVector& x)
{
    if (x.system != CoordSystem::Standard)
        throw SystemMismatch("project expects a standard-coordinate vector");
    NormalVector out(CoordSystem::Quad, x.tets);
    for (std::size_t tet = 0; tet < x.tets; ++tet)
        for (int q = 0; q < 3; ++q)
            out.entries[quadIndex(CoordSystem::Quad, tet, q)] = x.quad(tet, q);
    return out;
}

inline RatVector projectEntries(const RatVector& x, std::size_t n)
{
    return project(NormalVector(CoordSystem::Standard, n, x)).entries;
}

/**
 * Quad matching system derived from the standard one: the solution space W
 * is the projection of the standard solution space, and the returned matrix
 * is an integer basis of its orthogonal complement.  Throws
 * DimensionMismatch unless dim W = 2n.
 */
inline MatchingSystem quadMatching(const MatchingSystem& standard)
{
    if (standard.system != CoordSystem::Standard)
        throw SystemMismatch("quadMatching expects the standard matching system");
    const std::size_t n = standard.tets;
    Matrix<Rational> projected;
    projected.reserve(standard.nullBasis.size());
    for (const auto& b : standard.nullBasis)
        projected.push_back(projectEntries(b, n));

    MatchingSystem m;
    m.system = CoordSystem::Quad;
    m.tets = n;
    m.nullBasis = canonicalBasis(projected, 3 * n);
    m.dim = m.nullBasis.size();
    if (m.dim != 2 * n)
        throw DimensionMismatch(2 * n, m.dim);
    m.matrix = integerNullSpace(toIntegerRows(m.nullBasis), 3 * n);
    return m;
}

inline MatchingSystem quadMatching(const Triangulation& t)
{
    return quadMatching(standardMatching(t));
}

/** T^i: all three quads of tetrahedron i set to 1. */
inline NormalVector tetSolution(std::size_t i, std::size_t n)
{
    if (i >= n)
        throw PreconditionError("tetrahedron index " + std::to_string(i) + " out of range for n = " +
                                std::to_string(n));
    NormalVector x(CoordSystem::Quad, n);
    for (int q = 0; q < 3; ++q)
        x.entries[quadIndex(CoordSystem::Quad, i, q)] = 1;
    return x;
}

/** One standard vector per vertex orbit, with t_{i,j} = 1 on the corners in that orbit. */
inline std::vector<NormalVector> vertexLinks(const Triangulation& t, const Skeleton& s)
{
    std::vector<NormalVector> links(s.vertices, NormalVector(CoordSystem::Standard, t.size()));
    for (std::size_t tet = 0; tet < t.size(); ++tet)
        for (int c = 0; c < 4; ++c)
            links[s.vertexOrbit[tet][c]].entries[triIndex(tet, c)] = 1;
    return links;
}

inline std::vector<NormalVector> vertexLinks(const Triangulation& t)
{
    return vertexLinks(t, skeleton(t));
}

/** Non-negative, and at most one non-zero quad per tetrahedron. */
inline bool isAdmissible(const NormalVector& x)
{
    for (const auto& e : x.entries)
        if (e < 0)
            return false;
    for (std::size_t tet = 0; tet < x.tets; ++tet)
    {
        int nonzero = 0;
        for (int q = 0; q < 3; ++q)
            if (x.quad(tet, q) != 0)
                ++nonzero;
        if (nonzero > 1)
            return false;
    }
    return true;
}

inline bool areCompatible(const NormalVector& u, const NormalVector& v)
{
    if (u.system != v.system || u.tets != v.tets)
        throw SystemMismatch("compatibility requires vectors in the same coordinate system");
    for (std::size_t tet = 0; tet < u.tets; ++tet)
    {
        int types = 0;
        for (int q = 0; q < 3; ++q)
            if (u.quad(tet, q) != 0 || v.quad(tet, q) != 0)
                ++types;
        if (types > 1)
            return false;
    }
    return true;
}

class ReconstructionError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/** The zero set leaves more than one degree of freedom. */
class NotUnique : public ReconstructionError
{
    public:
        using ReconstructionError::ReconstructionError;
};

/** Only the zero vector (or no normalizable vector) meets the zero set. */
class Infeasible : public ReconstructionError
{
    public:
        using ReconstructionError::ReconstructionError;
};

/**
 * Solves {x in W, x_k = 0 for k in z, sum(x) = 1}.  Vertices of the quad
 * polytope are determined by their zero sets, so this recovers the vertex.
 */
inline NormalVector reconstructFromZeroSet(const ZeroSet& z, const MatchingSystem& w)
{
    const std::size_t m = w.ambientDim();
    Matrix<Integer> rows = w.matrix;
    for (auto k : z.indices)
    {
        if (k >= m)
            throw std::out_of_range("zero set index " + std::to_string(k) + " outside ambient dimension");
        IntVector e(m, 0);
        e[k] = 1;
        rows.push_back(std::move(e));
    }
    auto kernel = integerNullSpace(rows, m);
    if (kernel.empty())
        throw Infeasible("only the zero vector has this zero set");
    if (kernel.size() > 1)
        throw NotUnique("zero set leaves a " + std::to_string(kernel.size()) + "-dimensional solution space");
    RatVector x = toRational(kernel.front());
    Rational s = 0;
    for (const auto& e : x)
        s += e;
    if (s == 0)
        throw Infeasible("solution cannot be normalized to coordinate sum 1");
    for (auto& e : x)
        e /= s;
    return NormalVector(w.system, w.tets, std::move(x));
}

}   // namespace normalpoly
