// normalpoly: command line front end.  All work happens in commands.hpp.

#include "normalpoly/commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>

using namespace normalpoly;

int main(int argc, char** argv)
{
    CLI::App app{"Normal surface solution polytopes: vertices, admissible faces and bounds"};
    app.require_subcommand(1);

    const std::map<std::string, CoordSystem> systems{{"quad", CoordSystem::Quad}, {"std", CoordSystem::Standard}};
    const std::map<std::string, EnumerationMode> modes{{"full", EnumerationMode::Full},
                                                       {"pruned", EnumerationMode::Pruned}};

    std::string path;
    CoordSystem system = CoordSystem::Quad;
    EnumerationMode mode = EnumerationMode::Full;
    bool json = false;
    bool timings = false;

    auto* validate = app.add_subcommand("validate", "check that a gluing table is a closed 3-manifold triangulation");
    validate->add_option("file", path, "gluing table")->required();
    validate->add_flag("--json", json, "JSON output");

    auto* enumerate = app.add_subcommand("enumerate", "vertices of the solution polytope");
    enumerate->add_option("file", path, "gluing table")->required();
    enumerate->add_option("--coords", system, "quad or std")->transform(CLI::CheckedTransformer(systems));
    enumerate->add_option("--mode", mode, "full or pruned")->transform(CLI::CheckedTransformer(modes));
    enumerate->add_flag("--json", json, "JSON output");

    auto* faces = app.add_subcommand("faces", "maximal admissible faces");
    faces->add_option("file", path, "gluing table")->required();
    faces->add_option("--coords", system, "quad or std")->transform(CLI::CheckedTransformer(systems));
    faces->add_flag("--json", json, "JSON output");

    auto* verify = app.add_subcommand("verify", "run every check on one triangulation");
    verify->add_option("file", path, "gluing table")->required();
    verify->add_flag("--json", json, "JSON output");
    verify->add_flag("--timings", timings, "report per-stage wall time");

    cli::SearchOptions search;
    auto* searchCmd = app.add_subcommand("search", "exhaustive census of n-tetrahedron triangulations");
    searchCmd->add_option("n", search.n, "number of tetrahedra (1, 2, or 3 with --long)")->required();
    searchCmd->add_option("--out", search.outDir, "write one JSON report per accepted triangulation here");
    searchCmd->add_flag("--long", search.allowLong, "allow the multi-hour n = 3 census");
    searchCmd->add_option("--jobs", search.jobs, "worker threads")->check(CLI::PositiveNumber);
    searchCmd->add_flag("--json", search.json, "JSON summary");

    cli::BoundsOptions bounds;
    auto* boundsCmd = app.add_subcommand("bounds", "vertex-count bounds");
    boundsCmd->add_option("--max-n", bounds.nMax, "largest n in the table (>= 3)");
    boundsCmd->add_option("--profiles", bounds.profilesPath, "JSON list of observed quad face profiles");
    boundsCmd->add_option("--landscape", bounds.landscapeK, "print M_{d,k} for fixed k as CSV instead");
    boundsCmd->add_flag("--csv", bounds.csv, "CSV output");
    boundsCmd->add_flag("--json", bounds.json, "JSON output");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return cli::kExitInputError;
    }

    if (*validate)
        return cli::cmdValidate(path, json, std::cout, std::cerr);
    if (*enumerate)
        return cli::cmdEnumerate(path, system, mode, json, std::cout, std::cerr);
    if (*faces)
        return cli::cmdFaces(path, system, json, std::cout, std::cerr);
    if (*verify)
        return cli::cmdVerify(path, json, timings, std::cout, std::cerr);
    if (*searchCmd)
        return cli::cmdSearch(search, std::cout, std::cerr);
    return cli::cmdBounds(bounds, std::cout, std::cerr);
}
