/**
 * Full lemma verification for one triangulation, plus the gluing-table
 * generators behind the exhaustive and random census drivers.
 */
#pragma once

#include "normalpoly/admfaces.hpp"
#include "normalpoly/bounds.hpp"
#include "normalpoly/coords.hpp"
#include "normalpoly/enumerate.hpp"
#include "normalpoly/triangulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace normalpoly {

struct SystemResult
{
    VertexSet full;
    VertexSet pruned;
    std::vector<AdmissibleFace> faces;
    FaceProfile profile;
};

struct CheckOutcome
{
    std::string tag;
    bool pass = true;
    std::string detail;
};

struct VerifyReport
{
    std::size_t tets = 0;
    Skeleton skeleton;
    ValidityReport validity;
    std::size_t stdDim = 0;
    std::size_t quadDim = 0;
    std::optional<SystemResult> quad;
    std::optional<SystemResult> standard;
    std::vector<CheckOutcome> checks;
    std::vector<std::pair<std::string, double>> timings;   // stage -> seconds

    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
    }

    std::vector<CheckOutcome> failures() const
    {
        std::vector<CheckOutcome> out;
        for (const auto& c : checks)
            if (!c.pass)
                out.push_back(c);
        return out;
    }
};

/** Test hooks; mutateQuadVertices runs on the FULL quad vertex set before any check. */
struct VerifyHooks
{
    std::function<void(VertexSet&)> mutateQuadVertices;
};

namespace detail {

class StageTimer
{
    public:
        explicit StageTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

        template <class F>
        auto run(const std::string& stage, F&& f)
        {
            auto start = std::chrono::steady_clock::now();
            if constexpr (std::is_void_v<decltype(f())>)
            {
                f();
                record(stage, start);
            }
            else
            {
                auto result = f();
                record(stage, start);
                return result;
            }
        }

    private:
        void record(const std::string& stage, std::chrono::steady_clock::time_point start)
        {
            std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
            sink_.emplace_back(stage, d.count());
        }

        std::vector<std::pair<std::string, double>>& sink_;
};

inline SystemResult solveSystem(const MatchingSystem& m, StageTimer& timer, const std::string& name,
                                const std::function<void(VertexSet&)>& mutate = {})
{
    SystemResult r;
    r.full = timer.run(name + ".enumerate.full", [&] { return enumerateVertices(m, EnumerationMode::Full); });
    if (mutate)
        mutate(r.full);
    r.pruned = timer.run(name + ".enumerate.pruned", [&] { return enumerateVertices(m, EnumerationMode::Pruned); });
    r.faces = timer.run(name + ".faces", [&] { return maximalAdmissibleFaces(r.full); });
    r.profile = profile(r.faces);
    return r;
}

inline CheckOutcome fromCheck(std::string tag, const CheckResult& c)
{
    return CheckOutcome{std::move(tag), c.pass, c.detail};
}

}   // namespace detail

/**
 * Runs every structural and quantitative check on one triangulation.  A
 * triangulation rejected by validate() gets a single failing "validity"
 * check and nothing else.
 */
inline VerifyReport verify(const Triangulation& t, const VerifyHooks& hooks = {})
{
    VerifyReport rep;
    rep.tets = t.size();
    const std::size_t n = t.size();
    const long ln = static_cast<long>(n);
    detail::StageTimer timer(rep.timings);
    auto add = [&](std::string tag, bool pass, std::string detail = {}) {
        rep.checks.push_back(CheckOutcome{std::move(tag), pass, std::move(detail)});
    };

    rep.skeleton = timer.run("skeleton", [&] { return skeleton(t); });
    rep.validity = validate(t, rep.skeleton);
    if (!rep.validity.accepted)
    {
        std::string why;
        for (const auto& r : rep.validity.reasons)
            why += (why.empty() ? "" : ",") + r;
        add("validity", false, why);
        return rep;
    }
    const std::size_t v = rep.skeleton.vertices;

    MatchingSystem stdM = timer.run("matching.std", [&] { return standardMatching(t); });
    rep.stdDim = stdM.dim;
    add("rank-identity", stdM.dim == 2 * n + v,
        stdM.dim == 2 * n + v ? "" : "standard solution space has dimension " + std::to_string(stdM.dim));

    MatchingSystem quadM;
    try
    {
        quadM = timer.run("matching.quad", [&] { return quadMatching(stdM); });
        rep.quadDim = quadM.dim;
        add("tillmann", true);
    }
    catch (const DimensionMismatch& e)
    {
        rep.quadDim = e.actual();
        add("tillmann", false, e.what());
        return rep;
    }

    bool tetsOk = true;
    for (std::size_t i = 0; i < n; ++i)
    {
        auto ti = tetSolution(i, n);
        if (!quadM.satisfiedBy(ti.entries) || isAdmissible(ti))
            tetsOk = false;
    }
    add("tetrahedral-solutions", tetsOk);

    auto links = vertexLinks(t, rep.skeleton);
    bool linksOk = true;
    for (const auto& l : links)
        if (!stdM.satisfiedBy(l.entries) || !isZero(project(l).entries))
            linksOk = false;
    add("vertex-links", linksOk);

    rep.quad = detail::solveSystem(quadM, timer, "quad", hooks.mutateQuadVertices);
    rep.standard = detail::solveSystem(stdM, timer, "std");
    const auto& q = *rep.quad;
    const auto& s = *rep.standard;

    add("vertex-sets", isValidVertexSet(q.full, quadM) && isValidVertexSet(s.full, stdM) &&
                           isValidVertexSet(q.pruned, quadM) && isValidVertexSet(s.pruned, stdM));

    auto sameSet = [](const VertexSet& a, const VertexSet& b) { return a.vertices == b.vertices; };
    add("mode-equivalence", sameSet(q.pruned, admissibleRestriction(q.full)) &&
                                sameSet(s.pruned, admissibleRestriction(s.full)));

    // projection preserves admissibility and compatibility on cone members
    bool projOk = true;
    for (std::size_t i = 0; i < s.full.vertices.size() && projOk; ++i)
    {
        const auto& u = s.full.vertices[i];
        if (isAdmissible(u) != isAdmissible(project(u)))
            projOk = false;
        for (std::size_t j = i + 1; j < s.full.vertices.size() && projOk; ++j)
        {
            const auto& w = s.full.vertices[j];
            if (s.full.admissible[i] && s.full.admissible[j] &&
                areCompatible(u, w) != areCompatible(project(u), project(w)))
                projOk = false;
        }
    }
    add("projection", projOk);

    timer.run("reconstruction", [&] {
        std::string detail;
        std::vector<ZeroSet> seen;
        for (std::size_t i = 0; i < q.full.vertices.size() && detail.empty(); ++i)
        {
            if (!q.full.admissible[i])
                continue;
            const auto& x = q.full.vertices[i];
            ZeroSet z = zeroSet(x);
            seen.push_back(z);
            try
            {
                if (!(reconstructFromZeroSet(z, quadM) == x))
                    detail = "vertex " + std::to_string(i) + " not recovered from its zero set";
            }
            catch (const ReconstructionError& e)
            {
                detail = "vertex " + std::to_string(i) + ": " + e.what();
            }
        }
        std::sort(seen.begin(), seen.end());
        if (detail.empty() && std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            detail = "two admissible vertices share a zero set";
        add("reconstruction", detail.empty(), detail);
    });

    add("face-structure", checkFaceStructure(q.full, q.faces).pass && checkFaceStructure(s.full, s.faces).pass);
    rep.checks.push_back(detail::fromCheck("dim-bound", checkDimBound(q.profile, n)));
    rep.checks.push_back(detail::fromCheck("unique-top", checkUniqueTopFace(q.profile, n)));
    rep.checks.push_back(detail::fromCheck("bijection", checkBijection(q.profile, s.profile, v)));
    rep.checks.push_back(detail::fromCheck("link-membership", checkVertexLinkMembership(s.faces, links)));

    bool stdDims = std::all_of(s.profile.countsByDim.begin(), s.profile.countsByDim.end(),
                               [&](const auto& kv) { return kv.first <= static_cast<int>(n + v) - 1; });
    add("std-dim-bound", stdDims);

    const std::size_t qa = q.full.admissibleCount();
    const std::size_t sa = s.full.admissibleCount();
    add("naive-bound", Integer(qa) <= naiveQuadBound(ln));
    if (n >= 3)
    {
        add("quad-theorem-bound", Integer(qa) <= quadTheoremBound(ln));
        add("vertex-count", v <= n + 1, v <= n + 1 ? "" : std::to_string(v) + " vertices exceed n+1");
    }
    if (qa == 0)
        add("std-theorem-bound", sa == v,
            sa == v ? "" : "quad polytope empty but " + std::to_string(sa) + " admissible standard vertices");
    else if (n >= 3)
        add("std-theorem-bound", Integer(sa) <= stdTheoremBound(ln));
    if (v == 1 && n >= 3)
        add("one-vertex-bound", Integer(sa) <= oneVertexBound(ln));
    return rep;
}

/**
 * Calls `visit` on every closed gluing table with n tetrahedra.  With
 * `canonical` set (and n >= 2), the gluing of tet 0 face 0 is restricted
 * to tet 0 itself or to tet 1 face 0 by the identity; every triangulation
 * is isomorphic to one of these.  Partial tables that already identify an
 * edge with itself in reverse are pruned when `pruneBadEdges` is set.
 * Returns the number of complete tables visited.
 */
inline std::size_t forEachGluingTable(std::size_t n, bool canonical, const std::function<void(const Triangulation&)>& visit,
                                      bool pruneBadEdges = false)
{
    GluingTable table(n);
    std::size_t visited = 0;

    auto partialBadEdge = [&]() {
        detail::ParityUnionFind edges(6 * n);
        for (std::size_t tet = 0; tet < n; ++tet)
            for (int f = 0; f < 4; ++f)
            {
                const auto& g = table[tet][f];
                if (!g)
                    continue;
                for (int e = 0; e < 6; ++e)
                {
                    int a = kTetEdges[e][0], b = kTetEdges[e][1];
                    if (a == f || b == f)
                        continue;
                    int ia = g->perm[a], ib = g->perm[b];
                    if (!edges.unite(6 * tet + e, 6 * g->tet + edgeIndex(ia, ib), ia > ib ? 1 : 0))
                        return true;
                }
            }
        return false;
    };

    std::function<void()> recurse = [&]() {
        std::size_t slot = 0;
        while (slot < 4 * n && table[slot / 4][slot % 4])
            ++slot;
        if (slot == 4 * n)
        {
            ++visited;
            visit(Triangulation(table));
            return;
        }
        const std::size_t tet = slot / 4;
        const int f = static_cast<int>(slot % 4);
        for (std::size_t other = slot + 1; other < 4 * n; ++other)
        {
            const std::size_t dt = other / 4;
            const int df = static_cast<int>(other % 4);
            if (table[dt][df])
                continue;
            for (const auto& p : Perm4::all())
            {
                if (p[f] != df)
                    continue;
                if (canonical && n >= 2 && slot == 0 && dt != 0 && !(dt == 1 && df == 0 && p == Perm4()))
                    continue;
                table[tet][f] = Gluing{dt, p};
                table[dt][df] = Gluing{tet, p.inverse()};
                if (!pruneBadEdges || !partialBadEdge())
                    recurse();
                table[tet][f].reset();
                table[dt][df].reset();
            }
        }
    };
    recurse();
    return visited;
}

/** Uniformly random closed gluing table (random face pairing, random maps). */
template <class Rng>
Triangulation randomGluingTable(std::size_t n, Rng& rng)
{
    std::vector<std::size_t> slots(4 * n);
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    std::shuffle(slots.begin(), slots.end(), rng);
    GluingTable table(n);
    std::uniform_int_distribution<int> pick(0, 5);
    for (std::size_t i = 0; i < slots.size(); i += 2)
    {
        std::size_t a = slots[i], b = slots[i + 1];
        int fa = static_cast<int>(a % 4), fb = static_cast<int>(b % 4);
        std::vector<Perm4> options;
        for (const auto& p : Perm4::all())
            if (p[fa] == fb)
                options.push_back(p);
        Perm4 p = options[static_cast<std::size_t>(pick(rng))];
        table[a / 4][fa] = Gluing{b / 4, p};
        table[b / 4][fb] = Gluing{a / 4, p.inverse()};
    }
    return Triangulation(table);
}

/** Draws random tables until one passes validate(); nullopt after maxAttempts. */
template <class Rng>
std::optional<Triangulation> randomAcceptedTriangulation(std::size_t n, Rng& rng, std::size_t maxAttempts = 1000000)
{
    for (std::size_t i = 0; i < maxAttempts; ++i)
    {
        Triangulation t = randomGluingTable(n, rng);
        if (validate(t).accepted)
            return t;
    }
    return std::nullopt;
}

struct CensusMember
{
    std::size_t index = 0;   // position among visited tables
    Triangulation triangulation;
    VerifyReport report;
};

struct CensusSummary
{
    std::size_t n = 0;
    std::size_t tablesExamined = 0;
    std::size_t accepted = 0;
    std::size_t verified = 0;
    std::size_t emptyQuad = 0;           // members whose quad polytope has no admissible point
    FaceProfile maxProfile;              // per-dimension maximum over quad profiles, d >= 0
    BigCount maxProfileBound = 0;
    std::size_t maxQuadAdmissible = 0;
    std::size_t maxStdAdmissible = 0;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> failures;   // index -> failing tags
};

struct CensusOptions
{
    bool pruneBadEdges = false;
    unsigned jobs = 1;
    std::function<void(const CensusMember&)> onMember;   // called in index order
};

/** Folds one verified member into the census maxima. */
inline void accumulate(CensusSummary& sum, const CensusMember& m)
{
    const auto& rep = m.report;
    if (rep.ok())
        ++sum.verified;
    else
    {
        std::vector<std::string> tags;
        for (const auto& c : rep.failures())
            tags.push_back(c.tag);
        sum.failures.emplace_back(m.index, std::move(tags));
    }
    if (!rep.quad)
        return;
    const auto& qp = rep.quad->profile;
    if (qp.count(-1) > 0)
        ++sum.emptyQuad;
    for (const auto& [d, c] : qp.countsByDim)
        if (d >= 0)
            sum.maxProfile.countsByDim[d] = std::max(sum.maxProfile.countsByDim[d], c);
    sum.maxProfileBound = std::max(sum.maxProfileBound, profileBound(qp, static_cast<long>(sum.n)));
    sum.maxQuadAdmissible = std::max(sum.maxQuadAdmissible, rep.quad->full.admissibleCount());
    if (rep.standard)
        sum.maxStdAdmissible = std::max(sum.maxStdAdmissible, rep.standard->full.admissibleCount());
}

/**
 * Exhaustive census over canonical gluing tables: filter by validate(),
 * verify every survivor (optionally on several worker threads) and
 * aggregate the per-dimension maximum quad face profile.
 */
inline CensusSummary runCensus(std::size_t n, const CensusOptions& options = {})
{
    CensusSummary sum;
    sum.n = n;
    std::vector<std::pair<std::size_t, Triangulation>> survivors;
    std::size_t index = 0;
    sum.tablesExamined = forEachGluingTable(
        n, true,
        [&](const Triangulation& t) {
            ++index;
            if (validate(t).accepted)
                survivors.emplace_back(index - 1, t);
        },
        options.pruneBadEdges);
    sum.accepted = survivors.size();

    std::vector<std::optional<VerifyReport>> reports(survivors.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < survivors.size(); i = next++)
            reports[i] = verify(survivors[i].second);
    };
    const unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < survivors.size(); ++i)
    {
        CensusMember m{survivors[i].first, survivors[i].second, std::move(*reports[i])};
        accumulate(sum, m);
        if (options.onMember)
            options.onMember(m);
    }
    return sum;
}

}   // namespace normalpoly
