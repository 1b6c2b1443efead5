/**
 * Closed 3-manifold triangulations given as gluing tables: parsing,
 * structural checks, skeleton orbits, and the manifold validity test.
 *
 * Face f of a tetrahedron is the face opposite vertex f.  A gluing of
 * (tet, f) carries a permutation sigma of {0,1,2,3} sending the vertex
 * labels of tet to those of the destination, so the destination face is
 * sigma(f).
 */
#pragma once

#include "normalpoly/exact.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normalpoly {

class Perm4
{
    public:
        constexpr Perm4() : images_{0, 1, 2, 3} {}

        /** Throws std::invalid_argument unless `images` is a bijection of {0..3}. */
        explicit Perm4(std::array<int, 4> images)
        {
            unsigned seen = 0;
            for (int i = 0; i < 4; ++i)
            {
                if (images[i] < 0 || images[i] > 3 || (seen & (1u << images[i])))
                    throw std::invalid_argument("not a permutation of {0,1,2,3}");
                seen |= 1u << images[i];
                images_[i] = static_cast<std::uint8_t>(images[i]);
            }
        }

        constexpr int operator[](int i) const { return images_[i]; }

        Perm4 inverse() const
        {
            std::array<int, 4> inv{};
            for (int i = 0; i < 4; ++i)
                inv[images_[i]] = i;
            return Perm4(inv);
        }

        /** Composition: (a * b)[i] = a[b[i]]. */
        Perm4 operator*(const Perm4& other) const
        {
            return Perm4({images_[other[0]], images_[other[1]], images_[other[2]], images_[other[3]]});
        }

        std::string str() const
        {
            std::string s(4, '0');
            for (int i = 0; i < 4; ++i)
                s[i] = static_cast<char>('0' + images_[i]);
            return s;
        }

        // spelled out: GCC 11 at -O3 miscompiles the defaulted comparison here
        bool operator==(const Perm4& other) const
        {
            return images_[0] == other.images_[0] && images_[1] == other.images_[1] &&
                   images_[2] == other.images_[2] && images_[3] == other.images_[3];
        }

        /** All 24 permutations in lexicographic order of their image strings. */
        static const std::array<Perm4, 24>& all()
        {
            static const std::array<Perm4, 24> perms = [] {
                std::array<Perm4, 24> out;
                std::array<int, 4> p{0, 1, 2, 3};
                std::size_t k = 0;
                do
                    out[k++] = Perm4(p);
                while (std::next_permutation(p.begin(), p.end()));
                return out;
            }();
            return perms;
        }

    private:
        std::array<std::uint8_t, 4> images_;
};

struct Gluing
{
    std::size_t tet = 0;
    Perm4 perm;

    bool operator==(const Gluing&) const = default;
};

/** A gluing table under construction; unset slots are unglued faces. */
using GluingTable = std::vector<std::array<std::optional<Gluing>, 4>>;

/** Structural defect in a gluing table, tied to the offending (tet, face). */
class GluingError : public std::runtime_error
{
    public:
        enum class Kind { Unglued, SelfGlued, Involution, BadDestination };

        GluingError(Kind kind, std::size_t tet, int face, const std::string& what)
            : std::runtime_error(what), kind_(kind), tet_(tet), face_(face) {}

        Kind kind() const { return kind_; }
        std::size_t tet() const { return tet_; }
        int face() const { return face_; }

    private:
        Kind kind_;
        std::size_t tet_;
        int face_;
};

inline std::string_view kindName(GluingError::Kind k)
{
    switch (k)
    {
        case GluingError::Kind::Unglued:        return "unglued face";
        case GluingError::Kind::SelfGlued:      return "self-glued face";
        case GluingError::Kind::Involution:     return "involution violation";
        case GluingError::Kind::BadDestination: return "bad destination";
    }
    return "";
}

/** Syntax error in a gluing-table file; line and column are 1-based. */
class ParseError : public std::runtime_error
{
    public:
        ParseError(std::size_t line, std::size_t column, const std::string& what)
            : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
              line_(line), column_(column) {}

        std::size_t line() const { return line_; }
        std::size_t column() const { return column_; }

    private:
        std::size_t line_;
        std::size_t column_;
};

/**
 * A fully glued triangulation: every one of the 4n face slots is paired
 * with a distinct slot and the pairing is an involution.  Connectedness and
 * manifold conditions are checked separately by validate().
 */
class Triangulation
{
    public:
        /** Checks closedness, self-gluing and the involution; throws GluingError. */
        explicit Triangulation(const GluingTable& table)
        {
            if (table.empty())
                throw std::invalid_argument("a triangulation needs at least one tetrahedron");
            const std::size_t n = table.size();
            for (std::size_t t = 0; t < n; ++t)
                for (int f = 0; f < 4; ++f)
                {
                    const auto& g = table[t][f];
                    auto where = "tet " + std::to_string(t) + " face " + std::to_string(f);
                    if (!g)
                        throw GluingError(GluingError::Kind::Unglued, t, f, "unglued face: " + where);
                    if (g->tet >= n)
                        throw GluingError(GluingError::Kind::BadDestination, t, f,
                                          "destination tetrahedron out of range: " + where);
                    int df = g->perm[f];
                    if (g->tet == t && df == f)
                        throw GluingError(GluingError::Kind::SelfGlued, t, f, "self-glued face: " + where);
                    const auto& back = table[g->tet][df];
                    if (!back || back->tet != t || !(back->perm == g->perm.inverse()))
                        throw GluingError(GluingError::Kind::Involution, t, f, "involution violation: " + where);
                }
            gluings_.reserve(n);
            for (const auto& row : table)
                gluings_.push_back({*row[0], *row[1], *row[2], *row[3]});
        }

        std::size_t size() const { return gluings_.size(); }

        const Gluing& gluing(std::size_t tet, int face) const { return gluings_[tet][face]; }

        int destinationFace(std::size_t tet, int face) const { return gluings_[tet][face].perm[face]; }

        /** Serializes back to the gluing-table text format. */
        std::string toText() const
        {
            std::ostringstream out;
            out << "tri " << size() << '\n';
            for (const auto& row : gluings_)
            {
                for (int f = 0; f < 4; ++f)
                    out << (f ? " " : "") << row[f].tet << ':' << row[f].perm.str();
                out << '\n';
            }
            return out.str();
        }

        bool operator==(const Triangulation&) const = default;

    private:
        std::vector<std::array<Gluing, 4>> gluings_;
};

namespace detail {

inline std::vector<std::string_view> splitWords(std::string_view line, std::vector<std::size_t>& columns)
{
    std::vector<std::string_view> words;
    columns.clear();
    std::size_t i = 0;
    while (i < line.size())
    {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        if (i > start)
        {
            words.push_back(line.substr(start, i - start));
            columns.push_back(start + 1);
        }
    }
    return words;
}

inline std::optional<std::size_t> parseIndex(std::string_view s)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    return v;
}

}   // namespace detail

/**
 * Reads the gluing-table format:
 *
 *     tri <n>
 *     t:abcd t:abcd t:abcd t:abcd      (one line per tetrahedron, faces 0..3)
 *
 * `#` starts a comment line.  A spec of `-` (or a short line) leaves the
 * face unglued, which is then rejected as an unglued face.  Syntax problems
 * throw ParseError; structural ones throw GluingError.
 */
inline Triangulation parseTriangulation(std::string_view text)
{
    std::vector<std::size_t> cols;
    std::optional<std::size_t> n;
    GluingTable table;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineNo;

        auto words = detail::splitWords(line, cols);
        if (words.empty() || words[0].front() == '#')
            continue;

        if (!n)
        {
            if (words[0] != "tri")
                throw ParseError(lineNo, cols[0], "expected header 'tri <n>'");
            if (words.size() != 2)
                throw ParseError(lineNo, cols[0], "header must be exactly 'tri <n>'");
            auto v = detail::parseIndex(words[1]);
            if (!v || *v == 0)
                throw ParseError(lineNo, cols[1], "tetrahedron count must be a positive integer");
            n = *v;
            table.reserve(*n);
            continue;
        }

        if (table.size() == *n)
            throw ParseError(lineNo, cols[0], "more gluing lines than tetrahedra");
        if (words.size() > 4)
            throw ParseError(lineNo, cols[4], "at most four gluing specs per tetrahedron");

        std::array<std::optional<Gluing>, 4> row;
        for (std::size_t f = 0; f < words.size(); ++f)
        {
            std::string_view w = words[f];
            if (w == "-")
                continue;
            auto colon = w.find(':');
            if (colon == std::string_view::npos)
                throw ParseError(lineNo, cols[f], "gluing spec must look like t:abcd");
            auto dest = detail::parseIndex(w.substr(0, colon));
            if (!dest)
                throw ParseError(lineNo, cols[f], "bad destination tetrahedron");
            if (*dest >= *n)
                throw ParseError(lineNo, cols[f], "destination tetrahedron out of range");
            std::string_view digits = w.substr(colon + 1);
            if (digits.size() != 4)
                throw ParseError(lineNo, cols[f] + colon + 1, "permutation must have four digits");
            std::array<int, 4> images{};
            for (int i = 0; i < 4; ++i)
            {
                if (digits[i] < '0' || digits[i] > '3')
                    throw ParseError(lineNo, cols[f] + colon + 1 + i, "permutation digits must be 0-3");
                images[i] = digits[i] - '0';
            }
            try
            {
                row[f] = Gluing{*dest, Perm4(images)};
            }
            catch (const std::invalid_argument&)
            {
                throw ParseError(lineNo, cols[f] + colon + 1, "repeated digit in permutation");
            }
        }
        table.push_back(row);
    }
    if (!n)
        throw ParseError(lineNo, 1, "missing header 'tri <n>'");
    if (table.size() != *n)
        throw ParseError(lineNo, 1, "expected " + std::to_string(*n) + " gluing lines, found " +
                                        std::to_string(table.size()));
    return Triangulation(table);
}

/** Edges of a tetrahedron as vertex pairs, in the order used for edge indices. */
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edgeIndex(int a, int b)
{
    if (a > b)
        std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (kTetEdges[e][0] == a && kTetEdges[e][1] == b)
            return e;
    return -1;
}

struct EdgeRef
{
    std::size_t orbit = 0;
    int sign = 1;   // +1 if (low, high) agrees with the orbit representative
};

struct Skeleton
{
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
    std::vector<std::array<std::size_t, 4>> vertexOrbit;
    std::vector<std::array<EdgeRef, 6>> edgeOrbit;
    std::vector<std::size_t> reversedEdges;   // orbits identified with themselves in reverse
    long euler = 0;
};

namespace detail {

/** Union-find with a parity bit to the parent. */
class ParityUnionFind
{
    public:
        explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0)
        {
            std::iota(parent_.begin(), parent_.end(), std::size_t{0});
        }

        std::pair<std::size_t, int> find(std::size_t x)
        {
            int p = 0;
            std::size_t root = x;
            while (parent_[root] != root)
            {
                p ^= parity_[root];
                root = parent_[root];
            }
            // path compression
            int q = p;
            while (parent_[x] != root)
            {
                std::size_t next = parent_[x];
                int next_q = q ^ parity_[x];
                parent_[x] = root;
                parity_[x] = q;
                x = next;
                q = next_q;
            }
            return {root, p};
        }

        /** Records parity(a) ^ parity(b) == rel; returns false on a contradiction. */
        bool unite(std::size_t a, std::size_t b, int rel)
        {
            auto [ra, pa] = find(a);
            auto [rb, pb] = find(b);
            if (ra == rb)
                return (pa ^ pb) == rel;
            parent_[rb] = ra;
            parity_[rb] = pa ^ pb ^ rel;
            return true;
        }

    private:
        std::vector<std::size_t> parent_;
        std::vector<int> parity_;
};

}   // namespace detail

/**
 * Vertex, edge and face orbits under the gluings.  Orbits are numbered in
 * first-encounter order scanning tetrahedra 0..n-1 and then corner (or edge)
 * index, so the numbering depends only on the gluing table.
 */
inline Skeleton skeleton(const Triangulation& t)
{
    const std::size_t n = t.size();
    detail::ParityUnionFind corners(4 * n);
    detail::ParityUnionFind edges(6 * n);
    std::vector<bool> reversedRoot(6 * n, false);
    std::vector<std::pair<std::size_t, std::size_t>> conflicts;

    for (std::size_t tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f)
        {
            const Gluing& g = t.gluing(tet, f);
            for (int v = 0; v < 4; ++v)
                if (v != f)
                    corners.unite(4 * tet + v, 4 * g.tet + g.perm[v], 0);
            for (int e = 0; e < 6; ++e)
            {
                int a = kTetEdges[e][0], b = kTetEdges[e][1];
                if (a == f || b == f)
                    continue;
                int ia = g.perm[a], ib = g.perm[b];
                int flip = ia > ib ? 1 : 0;
                if (!edges.unite(6 * tet + e, 6 * g.tet + edgeIndex(ia, ib), flip))
                    conflicts.emplace_back(tet, e);
            }
        }
    for (auto [tet, e] : conflicts)
        reversedRoot[edges.find(6 * tet + e).first] = true;

    Skeleton s;
    s.vertexOrbit.resize(n);
    s.edgeOrbit.resize(n);
    std::vector<std::size_t> vertexId(4 * n, SIZE_MAX);
    for (std::size_t tet = 0; tet < n; ++tet)
        for (int c = 0; c < 4; ++c)
        {
            auto root = corners.find(4 * tet + c).first;
            if (vertexId[root] == SIZE_MAX)
                vertexId[root] = s.vertices++;
            s.vertexOrbit[tet][c] = vertexId[root];
        }

    std::vector<std::size_t> edgeId(6 * n, SIZE_MAX);
    std::vector<int> repParity(6 * n, 0);
    for (std::size_t tet = 0; tet < n; ++tet)
        for (int e = 0; e < 6; ++e)
        {
            auto [root, parity] = edges.find(6 * tet + e);
            if (edgeId[root] == SIZE_MAX)
            {
                edgeId[root] = s.edges++;
                repParity[root] = parity;
                if (reversedRoot[root])
                    s.reversedEdges.push_back(edgeId[root]);
            }
            s.edgeOrbit[tet][e] = EdgeRef{edgeId[root], parity == repParity[root] ? 1 : -1};
        }

    s.faces = 2 * n;
    s.euler = static_cast<long>(s.vertices) - static_cast<long>(s.edges) + static_cast<long>(s.faces) -
              static_cast<long>(n);
    return s;
}

inline bool isConnected(const Triangulation& t)
{
    std::vector<bool> seen(t.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty())
    {
        std::size_t tet = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f)
        {
            std::size_t next = t.gluing(tet, f).tet;
            if (!seen[next])
            {
                seen[next] = true;
                ++count;
                stack.push_back(next);
            }
        }
    }
    return count == t.size();
}

struct ValidityReport
{
    bool accepted = false;
    bool eulerOk = false;
    bool edgesOk = false;
    bool connected = false;
    std::vector<std::string> reasons;   // "euler", "bad-edge", "disconnected", in that order
};

/**
 * Closed 3-manifold test: Euler characteristic zero, no edge identified
 * with itself in reverse, and a connected gluing graph.  With the edge
 * condition every vertex link is a closed surface, and then chi = 0 holds
 * exactly when all of them are spheres.
 */
inline ValidityReport validate(const Triangulation& t, const Skeleton& s)
{
    ValidityReport r;
    r.eulerOk = s.euler == 0;
    r.edgesOk = s.reversedEdges.empty();
    r.connected = isConnected(t);
    if (!r.eulerOk)
        r.reasons.emplace_back("euler");
    if (!r.edgesOk)
        r.reasons.emplace_back("bad-edge");
    if (!r.connected)
        r.reasons.emplace_back("disconnected");
    r.accepted = r.reasons.empty();
    return r;
}

inline ValidityReport validate(const Triangulation& t)
{
    return validate(t, skeleton(t));
}

struct BoundCheck
{
    std::size_t value = 0;
    std::size_t bound = 0;
    bool pass = false;
};

/** At most n+1 vertices for a closed connected triangulation with n > 2 tetrahedra. */
inline BoundCheck vertexCountBoundCheck(const Triangulation& t)
{
    if (t.size() <= 2)
        throw PreconditionError("vertex count bound requires n > 2 (got n = " + std::to_string(t.size()) + ")");
    Skeleton s = skeleton(t);
    return BoundCheck{s.vertices, t.size() + 1, s.vertices <= t.size() + 1};
}

/** The two-tetrahedron 3-sphere with every face glued to its twin by the identity. */
inline Triangulation doubleTetrahedron()
{
    GluingTable table(2);
    for (int f = 0; f < 4; ++f)
    {
        table[0][f] = Gluing{1, Perm4()};
        table[1][f] = Gluing{0, Perm4()};
    }
    return Triangulation(table);
}

}   // namespace normalpoly
