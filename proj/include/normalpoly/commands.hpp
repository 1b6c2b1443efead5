/**
 * The normalpoly subcommands as plain functions over streams, so the CLI
 * binary stays a thin argument parser and tests can drive every command
 * in-process.
 *
 * Exit codes: 0 success / all checks pass, 1 check failure, 2 input error.
 */
#pragma once

#include "normalpoly/admfaces.hpp"
#include "normalpoly/bounds.hpp"
#include "normalpoly/census.hpp"
#include "normalpoly/coords.hpp"
#include "normalpoly/enumerate.hpp"
#include "normalpoly/report.hpp"
#include "normalpoly/triangulation.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace normalpoly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

class InputError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

inline std::string readFile(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/** Reads and parses a gluing table; every failure becomes an InputError. */
inline Triangulation loadTriangulation(const std::string& path)
{
    std::string text = readFile(path);
    try
    {
        return parseTriangulation(text);
    }
    catch (const ParseError& e)
    {
        throw InputError(path + ": " + e.what());
    }
    catch (const GluingError& e)
    {
        throw InputError(path + ": " + e.what());
    }
}

/** Like loadTriangulation, but also requires validate() to accept it. */
inline Triangulation loadAccepted(const std::string& path)
{
    Triangulation t = loadTriangulation(path);
    auto r = validate(t);
    if (!r.accepted)
    {
        std::string why;
        for (const auto& reason : r.reasons)
            why += (why.empty() ? "" : ", ") + reason;
        throw InputError(path + ": not a closed 3-manifold triangulation (" + why + ")");
    }
    return t;
}

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try
    {
        return body();
    }
    catch (const InputError& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    catch (const PreconditionError& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    catch (const DimensionMismatch& e)
    {
        err << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

inline int cmdValidate(const std::string& path, bool json, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Triangulation t = loadTriangulation(path);
        Skeleton s = skeleton(t);
        ValidityReport r = validate(t, s);
        if (json)
        {
            Json j;
            j["schema"] = kReportSchema;
            j["file"] = path;
            j["validity"] = toJson(r);
            j["skeleton"] = toJson(s, t.size());
            out << j.dump(2) << '\n';
        }
        else
        {
            out << (r.accepted ? "accepted" : "rejected");
            for (std::size_t i = 0; i < r.reasons.size(); ++i)
                out << (i ? ", " : ": ") << r.reasons[i];
            out << "\nn=" << t.size() << " v=" << s.vertices << " e=" << s.edges << " f=" << s.faces
                << " euler=" << s.euler << '\n';
        }
        return r.accepted ? kExitOk : kExitCheckFailed;
    });
}

inline MatchingSystem matchingFor(const Triangulation& t, CoordSystem system)
{
    MatchingSystem stdM = standardMatching(t);
    return system == CoordSystem::Standard ? stdM : quadMatching(stdM);
}

inline int cmdEnumerate(const std::string& path, CoordSystem system, EnumerationMode mode, bool json,
                        std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Triangulation t = loadAccepted(path);
        VertexSet vs = enumerateVertices(matchingFor(t, system), mode);
        if (json)
            out << toJson(vs).dump(2) << '\n';
        else
        {
            out << vs.vertices.size() << " vertices (" << vs.admissibleCount() << " admissible), "
                << systemName(system) << " coordinates\n";
            for (std::size_t i = 0; i < vs.vertices.size(); ++i)
            {
                out << (vs.admissible[i] ? "* " : "  ") << '(';
                for (std::size_t k = 0; k < vs.vertices[i].size(); ++k)
                    out << (k ? " " : "") << toString(vs.vertices[i][k]);
                out << ")\n";
            }
        }
        return kExitOk;
    });
}

inline int cmdFaces(const std::string& path, CoordSystem system, bool json, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Triangulation t = loadAccepted(path);
        Skeleton sk = skeleton(t);
        MatchingSystem stdM = standardMatching(t);
        MatchingSystem quadM = quadMatching(stdM);
        VertexSet qv = enumerateVertices(quadM, EnumerationMode::Full);
        VertexSet sv = enumerateVertices(stdM, EnumerationMode::Full);
        auto qFaces = maximalAdmissibleFaces(qv);
        auto sFaces = maximalAdmissibleFaces(sv);
        FaceProfile qp = profile(qFaces), sp = profile(sFaces);
        auto links = vertexLinks(t, sk);

        std::vector<CheckOutcome> checks{
            {"dimBound", checkDimBound(qp, t.size()).pass, {}},
            {"uniqueTop", checkUniqueTopFace(qp, t.size()).pass, {}},
            {"bijection", checkBijection(qp, sp, sk.vertices).pass, {}},
            {"linkMembership", checkVertexLinkMembership(sFaces, links).pass, {}},
        };
        const bool quad = system == CoordSystem::Quad;
        const auto& faces = quad ? qFaces : sFaces;
        const auto& prof = quad ? qp : sp;
        if (json)
        {
            Json j;
            j["system"] = std::string(systemName(system));
            j["n"] = t.size();
            j["v"] = sk.vertices;
            j["profile"] = toJson(prof);
            Json fj = Json::array();
            for (const auto& f : faces)
                fj.push_back(toJson(f));
            j["faces"] = std::move(fj);
            j["checks"] = checksJson(checks);
            out << j.dump(2) << '\n';
        }
        else
        {
            out << faces.size() << " maximal admissible faces, " << systemName(system) << " coordinates\n";
            out << "profile:";
            for (const auto& [d, c] : prof.countsByDim)
                out << ' ' << d << ':' << c;
            out << '\n';
            for (const auto& c : checks)
                out << (c.pass ? "PASS " : "FAIL ") << c.tag << '\n';
        }
        bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
        return ok ? kExitOk : kExitCheckFailed;
    });
}

inline int cmdVerify(const std::string& path, bool json, bool timings, std::ostream& out, std::ostream& err,
                     const VerifyHooks& hooks = {})
{
    return guarded(err, [&] {
        Triangulation t = loadTriangulation(path);
        VerifyReport r = verify(t, hooks);
        if (json)
            out << toJson(r, path, timings).dump(2) << '\n';
        else
        {
            for (const auto& c : r.checks)
            {
                out << (c.pass ? "PASS " : "FAIL ") << c.tag;
                if (!c.detail.empty())
                    out << ": " << c.detail;
                out << '\n';
            }
            if (timings)
                for (const auto& [stage, sec] : r.timings)
                    out << "time " << stage << ' ' << sec << "s\n";
        }
        return r.ok() ? kExitOk : kExitCheckFailed;
    });
}

struct SearchOptions
{
    std::size_t n = 1;
    std::optional<std::string> outDir;
    bool allowLong = false;
    unsigned jobs = 1;
    bool json = false;
};

inline int cmdSearch(const SearchOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.n < 1 || o.n > 3)
    {
        err << "error: search supports n = 1, 2 or 3 (got " << o.n << ")\n";
        return kExitInputError;
    }
    if (o.n == 3 && !o.allowLong)
    {
        err << "error: n = 3 search takes hours; pass --long to run it\n";
        return kExitInputError;
    }
    if (o.outDir)
    {
        std::error_code ec;
        std::filesystem::create_directories(*o.outDir, ec);
        if (ec)
        {
            err << "error: cannot create '" << *o.outDir << "': " << ec.message() << '\n';
            return kExitInputError;
        }
    }

    CensusOptions copts;
    copts.pruneBadEdges = o.n >= 3;
    copts.jobs = o.jobs;
    if (o.outDir)
        copts.onMember = [&](const CensusMember& m) {
            std::ostringstream name;
            name << "tri-" << o.n << '-' << std::setw(7) << std::setfill('0') << m.index << ".json";
            Json j = toJson(m.report, name.str());
            j["triangulation"] = m.triangulation.toText();
            std::ofstream(std::filesystem::path(*o.outDir) / name.str()) << j.dump(2) << '\n';
        };
    CensusSummary s = runCensus(o.n, copts);
    if (o.json)
        out << toJson(s).dump(2) << '\n';
    else
    {
        out << "n=" << s.n << ": " << s.tablesExamined << " tables, " << s.accepted << " accepted, " << s.verified
            << " verified, " << s.emptyQuad << " with empty quad polytope\n";
        out << "max profile:";
        for (const auto& [d, c] : s.maxProfile.countsByDim)
            out << ' ' << d << ':' << c;
        out << "\nmax profile bound: " << s.maxProfileBound << '\n';
        for (const auto& [index, tags] : s.failures)
        {
            out << "FAIL table " << index << ':';
            for (const auto& tag : tags)
                out << ' ' << tag;
            out << '\n';
        }
    }
    return s.failures.empty() ? kExitOk : kExitCheckFailed;
}

/** Reads [{"n": 4, "profile": {"0": 5, "1": 9, ...}}, ...]. */
inline std::map<long, FaceProfile> loadProfiles(const std::string& path)
{
    Json j;
    try
    {
        j = Json::parse(readFile(path));
    }
    catch (const Json::parse_error& e)
    {
        throw InputError(path + ": " + e.what());
    }
    if (!j.is_array())
        throw InputError(path + ": expected a JSON array of {\"n\", \"profile\"} objects");
    std::map<long, FaceProfile> out;
    try
    {
        for (const auto& row : j)
            out[row.at("n").get<long>()] = profileFromJson(row.at("profile"));
    }
    catch (const std::exception& e)
    {
        throw InputError(path + ": " + e.what());
    }
    return out;
}

struct BoundsOptions
{
    long nMax = 9;
    std::optional<std::string> profilesPath;
    std::optional<long> landscapeK;
    bool csv = false;
    bool json = false;
};

inline int cmdBounds(const BoundsOptions& o, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (o.landscapeK)
        {
            if (*o.landscapeK < 3)
                throw InputError("--landscape needs k >= 3");
            out << mcmullenCsv(*o.landscapeK);
            return kExitOk;
        }
        if (o.nMax < 3)
            throw InputError("bounds needs nMax >= 3");
        std::map<long, FaceProfile> profiles;
        if (o.profilesPath)
            profiles = loadProfiles(*o.profilesPath);

        struct Row
        {
            long n;
            std::string naive, quad, standard, oneVertex, fromProfile;
        };
        std::vector<Row> rows;
        for (long n = 1; n <= o.nMax; ++n)
        {
            Row r{n, naiveQuadBound(n).str(), "", "", "", ""};
            if (n >= 3)
            {
                r.quad = quadTheoremBound(n).str();
                r.standard = stdTheoremBound(n).str();
                r.oneVertex = oneVertexBound(n).str();
            }
            if (auto it = profiles.find(n); it != profiles.end())
                r.fromProfile = profileBound(it->second, n).str();
            rows.push_back(std::move(r));
        }

        if (o.json)
        {
            Json a = Json::array();
            for (const auto& r : rows)
            {
                Json j;
                j["n"] = r.n;
                j["naive"] = r.naive;
                if (!r.quad.empty())
                {
                    j["quadTheorem"] = r.quad;
                    j["stdTheorem"] = r.standard;
                    j["oneVertex"] = r.oneVertex;
                }
                if (!r.fromProfile.empty())
                    j["profileBound"] = r.fromProfile;
                a.push_back(std::move(j));
            }
            out << Json{{"schema", kReportSchema}, {"rows", a}}.dump(2) << '\n';
        }
        else if (o.csv)
        {
            out << "n,naive,quadTheorem,stdTheorem,oneVertex,profileBound\n";
            for (const auto& r : rows)
                out << r.n << ',' << r.naive << ',' << r.quad << ',' << r.standard << ',' << r.oneVertex << ','
                    << r.fromProfile << '\n';
        }
        else
        {
            auto cell = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
            out << "n\tnaive\tquadTheorem\tstdTheorem\toneVertex\tprofileBound\n";
            for (const auto& r : rows)
                out << r.n << '\t' << r.naive << '\t' << cell(r.quad) << '\t' << cell(r.standard) << '\t'
                    << cell(r.oneVertex) << '\t' << cell(r.fromProfile) << '\n';
        }
        return kExitOk;
    });
}

}   // namespace normalpoly::cli
