/**
 * JSON forms of the library types.  Every rational is a "p/q" string in
 * lowest terms (integers without a denominator); object keys keep
 * insertion order so output is stable byte for byte.
 */
#pragma once

#include "normalpoly/admfaces.hpp"
#include "normalpoly/census.hpp"
#include "normalpoly/coords.hpp"
#include "normalpoly/enumerate.hpp"
#include "normalpoly/triangulation.hpp"

#include "json.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace normalpoly {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

inline Json toJson(const NormalVector& x)
{
    Json a = Json::array();
    for (const auto& e : x.entries)
        a.push_back(toString(e));
    return a;
}

inline NormalVector normalVectorFromJson(const Json& j, CoordSystem s, std::size_t n)
{
    RatVector entries;
    for (const auto& e : j)
        entries.push_back(parseRational(e.get<std::string>()));
    return NormalVector(s, n, std::move(entries));
}

inline Json toJson(const VertexSet& vs)
{
    Json j;
    j["system"] = std::string(systemName(vs.system));
    j["n"] = vs.tets;
    Json verts = Json::array();
    for (const auto& v : vs.vertices)
        verts.push_back(toJson(v));
    j["vertices"] = std::move(verts);
    Json adm = Json::array();
    for (bool b : vs.admissible)
        adm.push_back(b);
    j["admissible"] = std::move(adm);
    return j;
}

inline Json toJson(const FaceProfile& p)
{
    Json j = Json::object();
    for (const auto& [d, c] : p.countsByDim)
        j[std::to_string(d)] = c;
    return j;
}

inline FaceProfile profileFromJson(const Json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("profile must be a JSON object of dimension -> count");
    FaceProfile p;
    for (const auto& [key, value] : j.items())
    {
        std::size_t used = 0;
        int d = std::stoi(key, &used);
        if (used != key.size())
            throw std::invalid_argument("bad profile dimension '" + key + "'");
        p.countsByDim[d] = value.get<std::uint64_t>();
    }
    return p;
}

inline Json toJson(const AdmissibleFace& f)
{
    Json j;
    j["vertices"] = f.vertexIndices;
    j["dim"] = f.dim;
    return j;
}

inline Json toJson(const Skeleton& s, std::size_t tets)
{
    Json j;
    j["n"] = tets;
    j["v"] = s.vertices;
    j["e"] = s.edges;
    j["f"] = s.faces;
    j["euler"] = s.euler;
    return j;
}

inline Json toJson(const ValidityReport& r)
{
    Json j;
    j["accepted"] = r.accepted;
    j["euler"] = r.eulerOk;
    j["edges"] = r.edgesOk;
    j["connected"] = r.connected;
    j["reasons"] = r.reasons;
    return j;
}

inline Json checksJson(const std::vector<CheckOutcome>& checks)
{
    Json j = Json::object();
    for (const auto& c : checks)
        j[c.tag] = c.pass;
    return j;
}

/** The per-triangulation run report. */
inline Json toJson(const VerifyReport& r, const std::string& id, bool timings = false)
{
    Json j;
    j["schema"] = kReportSchema;
    j["id"] = id;
    j["skeleton"] = toJson(r.skeleton, r.tets);
    j["validity"] = toJson(r.validity);
    j["dims"] = Json{{"std", r.stdDim}, {"quad", r.quadDim}};

    Json counts = Json::object();
    Json profiles = Json::object();
    auto addSystem = [&](const char* name, const std::optional<SystemResult>& s) {
        if (!s)
            return;
        counts[name] = Json{{"total", s->full.vertices.size()}, {"admissible", s->full.admissibleCount()}};
        profiles[name] = toJson(s->profile);
    };
    addSystem("quad", r.quad);
    addSystem("std", r.standard);
    j["vertices"] = std::move(counts);
    j["profiles"] = std::move(profiles);
    j["checks"] = checksJson(r.checks);

    Json failures = Json::array();
    for (const auto& c : r.failures())
        failures.push_back(Json{{"check", c.tag}, {"detail", c.detail}});
    j["failures"] = std::move(failures);

    if (r.quad)
    {
        const long n = static_cast<long>(r.tets);
        Json b;
        b["naive"] = naiveQuadBound(n).str();
        if (n >= 3)
        {
            b["quadTheorem"] = quadTheoremBound(n).str();
            b["stdTheorem"] = stdTheoremBound(n).str();
            b["oneVertex"] = oneVertexBound(n).str();
        }
        b["profileBound"] = profileBound(r.quad->profile, n).str();
        j["bounds"] = std::move(b);
    }

    if (timings)
    {
        Json t = Json::object();
        for (const auto& [stage, sec] : r.timings)
            t[stage] = sec;
        j["timings"] = std::move(t);
    }
    return j;
}

inline Json toJson(const CensusSummary& s)
{
    Json j;
    j["schema"] = kReportSchema;
    j["n"] = s.n;
    j["tablesExamined"] = s.tablesExamined;
    j["accepted"] = s.accepted;
    j["verified"] = s.verified;
    j["emptyQuad"] = s.emptyQuad;
    j["maxProfile"] = toJson(s.maxProfile);
    j["maxProfileBound"] = s.maxProfileBound.str();
    j["maxQuadAdmissible"] = s.maxQuadAdmissible;
    j["maxStdAdmissible"] = s.maxStdAdmissible;
    Json f = Json::array();
    for (const auto& [index, tags] : s.failures)
        f.push_back(Json{{"index", index}, {"checks", tags}});
    j["failures"] = std::move(f);
    return j;
}

}   // namespace normalpoly
