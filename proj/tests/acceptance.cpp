// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "normalpoly/bounds.hpp"
#include "normalpoly/census.hpp"
#include "normalpoly/commands.hpp"
#include "normalpoly/report.hpp"

#include "corpus.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace normalpoly;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body)
{
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
        o = body();
    }
    catch (const std::exception& e)
    {
        o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass)
        ++failures;
    std::printf("%s  %2d  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), sec);
    std::fflush(stdout);
}

std::string fmt(double x, int prec = 6)
{
    std::ostringstream s;
    s.precision(prec);
    s << x;
    return s.str();
}

struct Member
{
    const corpus::Entry* entry;
    VerifyReport report;
};

bool tagPassed(const VerifyReport& r, const std::string& tag, bool required)
{
    for (const auto& c : r.checks)
        if (c.tag == tag)
            return c.pass;
    return !required;
}

Json search(std::size_t n)
{
    cli::SearchOptions o;
    o.n = n;
    o.json = true;
    std::ostringstream out, err;
    int code = cli::cmdSearch(o, out, err);
    if (code != cli::kExitOk)
        throw std::runtime_error("search exited with " + std::to_string(code) + ": " + err.str() + out.str());
    return Json::parse(out.str());
}

}   // namespace

int main()
{
    criterion(1, "profile bounds from the nine census profiles", [] {
        auto start = std::chrono::steady_clock::now();
        auto profiles = cli::loadProfiles(std::string(NORMALPOLY_DATA_DIR) + "/table1.json");
        const std::vector<long> expected{1, 5, 13, 39, 104, 315, 859, 2458, 7018};
        std::string got;
        bool ok = profiles.size() == expected.size();
        for (long n = 1; n <= 9; ++n)
        {
            BigCount b = profileBound(profiles.at(n), n);
            got += (n > 1 ? "," : "") + b.str();
            ok = ok && b == expected[n - 1];
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return Outcome{ok && sec < 1.0, got + " in " + fmt(sec, 3) + " s (limit 1 s)"};
    });

    criterion(2, "exhaustive n=1 census maximum profile", [] {
        auto start = std::chrono::steady_clock::now();
        Json j = search(1);
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = j["maxProfile"] == Json::parse(R"({"0": 1})") && sec < 60;
        return Outcome{ok, "max profile " + j["maxProfile"].dump() + " over " + j["accepted"].dump() +
                               " accepted tables (limit 60 s)"};
    });

    criterion(3, "exhaustive n=2 census maximum profile", [] {
        auto start = std::chrono::steady_clock::now();
        Json j = search(2);
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto& p = j["maxProfile"];
        bool ok = p.value("0", 0) == 3 && p.value("1", 0) == 1 && sec < 1800 &&
                  BigCount(j["maxProfileBound"].get<std::string>()) <= 5;
        return Outcome{ok, "max profile " + p.dump() + ", max profile bound " +
                               j["maxProfileBound"].get<std::string>() + " over " + j["accepted"].dump() +
                               " accepted tables (limit 1800 s)"};
    });

    const auto& members = corpus::all();
    std::vector<Member> reports;
    std::size_t random34 = 0;
    for (const auto& e : members)
    {
        reports.push_back({&e, verify(e.tri)});
        if (e.tri.size() >= 3)
            ++random34;
    }
    const std::string corpusSize = std::to_string(reports.size()) + " corpus members (" + std::to_string(random34) +
                                   " random n=3,4)";

    criterion(4, "quad space has dimension 2n, standard 2n+v", [&] {
        for (const auto& m : reports)
        {
            const std::size_t n = m.entry->tri.size(), v = m.report.skeleton.vertices;
            if (m.report.quadDim != 2 * n || m.report.stdDim != 2 * n + v)
                return Outcome{false, m.entry->label + ": quad " + std::to_string(m.report.quadDim) + ", std " +
                                          std::to_string(m.report.stdDim)};
        }
        return Outcome{random34 >= 10, corpusSize};
    });

    criterion(5, "structural checks and vertex-count bounds", [&] {
        const std::vector<std::string> always{"dim-bound",       "unique-top",     "bijection",
                                              "link-membership", "reconstruction", "naive-bound"};
        std::size_t oneVertex = 0;
        for (const auto& m : reports)
        {
            const std::size_t n = m.entry->tri.size();
            const auto& r = m.report;
            for (const auto& tag : always)
                if (!tagPassed(r, tag, true))
                    return Outcome{false, m.entry->label + ": " + tag};
            if (n >= 3 && !tagPassed(r, "quad-theorem-bound", true))
                return Outcome{false, m.entry->label + ": quad-theorem-bound"};
            bool emptyQuad = r.quad->full.admissibleCount() == 0;
            if ((emptyQuad || n >= 3) && !tagPassed(r, "std-theorem-bound", true))
                return Outcome{false, m.entry->label + ": std-theorem-bound"};
            if (r.skeleton.vertices == 1 && n >= 3)
            {
                ++oneVertex;
                if (!tagPassed(r, "one-vertex-bound", true))
                    return Outcome{false, m.entry->label + ": one-vertex-bound"};
            }
        }
        return Outcome{true, corpusSize + ", " + std::to_string(oneVertex) + " one-vertex members with n>=3"};
    });

    criterion(6, "pruned enumeration equals admissible part of full", [&] {
        for (const auto& m : reports)
            for (const auto* s : {&*m.report.quad, &*m.report.standard})
                if (s->pruned.vertices != admissibleRestriction(s->full).vertices)
                    return Outcome{false, m.entry->label + " (" + std::string(systemName(s->full.system)) + ")"};
        return Outcome{true, corpusSize + ", both coordinate systems"};
    });

    criterion(7, "McMullen monotonicity and the S_alpha recurrence", [] {
        auto mono = checkMonotonicity(40, 40);
        if (!mono.pass)
            return Outcome{false, mono.detail};
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<long> den(1, 1000);
        for (int trial = 0; trial < 200; ++trial)
        {
            long q = den(rng);
            long p = std::uniform_int_distribution<long>(1, q)(rng);
            Rational a(p, q);
            std::vector<Rational> s;
            for (long m = 0; m <= 60; ++m)
                s.push_back(sAlpha(a, m));
            if (s[0] != 1 || s[1] != 1)
                return Outcome{false, "base case fails for alpha = " + toString(a)};
            for (long m = 2; m <= 60; ++m)
                if (s[m] != s[m - 1] + a * s[m - 2])
                    return Outcome{false, "recurrence fails for alpha = " + toString(a) + ", m = " + std::to_string(m)};
        }
        return Outcome{true, "monotone for d,k <= 40; recurrence exact for 200 alphas, m <= 60"};
    });

    criterion(8, "growth ratios at n=40 within 1%", [] {
        struct Row
        {
            const char* name;
            double ratio, target;
        };
        const std::vector<Row> rows{
            {"quad", ratio(quadTheoremBound(41), quadTheoremBound(40)), quadGrowthConstant()},
            {"std", ratio(stdTheoremBound(41), stdTheoremBound(40)), stdGrowthConstant()},
            {"one-vertex", ratio(oneVertexBound(41), oneVertexBound(40)), oneVertexGrowthConstant()},
        };
        bool ok = true;
        std::string detail;
        for (const auto& r : rows)
        {
            double rel = r.ratio / r.target - 1.0;
            ok = ok && std::abs(rel) <= 0.01;
            detail += std::string(detail.empty() ? "" : "; ") + r.name + " " + fmt(r.ratio) + " vs " + fmt(r.target) +
                      " (" + (rel >= 0 ? "+" : "") + fmt(100 * rel, 3) + "%)";
        }
        return Outcome{ok, detail};
    });

    criterion(9, "at most n+1 vertices for n >= 3; double tetrahedron has n+2", [&] {
        std::size_t checked = 0;
        for (const auto& m : reports)
        {
            if (m.entry->tri.size() < 3)
                continue;
            auto b = vertexCountBoundCheck(m.entry->tri);
            ++checked;
            if (!b.pass)
                return Outcome{false, m.entry->label + ": v = " + std::to_string(b.value)};
        }
        bool threw = false;
        try
        {
            vertexCountBoundCheck(doubleTetrahedron());
        }
        catch (const PreconditionError&)
        {
            threw = true;
        }
        std::size_t v = skeleton(doubleTetrahedron()).vertices;
        return Outcome{threw && v == 4 && checked >= 10,
                       std::to_string(checked) + " members with n=3,4; double tetrahedron v = " + std::to_string(v)};
    });

    criterion(10, "maximal cliques match subset brute force", [&] {
        std::size_t compared = 0;
        for (const auto& m : reports)
            for (const auto* s : {&*m.report.quad, &*m.report.standard})
            {
                const std::size_t a = s->full.admissibleCount();
                if (a == 0 || a > 15)
                    continue;
                std::vector<std::vector<std::size_t>> ours;
                for (const auto& f : s->faces)
                    ours.push_back(f.vertexIndices);
                ++compared;
                if (ours != oracle::maximalCompatibleSets(s->full))
                    return Outcome{false, m.entry->label + " (" + std::string(systemName(s->full.system)) + ")"};
            }
        return Outcome{compared > 0, std::to_string(compared) + " vertex sets compared"};
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
