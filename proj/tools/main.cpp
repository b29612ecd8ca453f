#include "minsurf/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"minsurf: minimal surfaces from algebraic curves in the bundle Q"};
    app.require_subcommand(1);

    minsurf::RunConfig cfg;
    struct Sub {
        minsurf::Command cmd;
        const char* help;
    };
    const Sub subs[] = {
        {minsurf::Command::Validate, "check containment, transversality and flat-point conditions"},
        {minsurf::Command::Classify, "branch census over the zero section with end types and periods"},
        {minsurf::Command::Periods, "period generators and lattice verdict"},
        {minsurf::Command::Mesh, "reconstruct a mesh and write OBJ/PLY plus a sidecar JSON"},
        {minsurf::Command::Report, "validation, topology, total curvature and periods"},
        {minsurf::Command::GalleryList, "gallery names and expected facts"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(minsurf::to_string(s.cmd), s.help);
        sub->callback([&cfg, c = s.cmd] { cfg.command = c; });
        if (s.cmd == minsurf::Command::GalleryList)
            continue;
        sub->add_option("input", cfg.input, "curve-spec JSON file or gallery call, e.g. costa(1)")->required();
        sub->add_option("--tol", cfg.tol, "validation, census and lattice tolerance")->capture_default_str();
        sub->add_option("--relation-height", cfg.relation_height, "largest integer relation coefficient")
            ->capture_default_str();
        if (s.cmd == minsurf::Command::Mesh) {
            sub->add_option("--mesh-res", cfg.mesh_resolution, "latitude bands of the sphere grid")->capture_default_str();
            sub->add_option("--exclude-radius", cfg.exclude_radius, "chordal radius cut around special points")
                ->capture_default_str();
            sub->add_option("--out", cfg.out, "mesh file; sidecar written with extension .json")->required();
            sub->add_option("--format", cfg.format, "obj or ply")
                ->check(CLI::IsMember({"obj", "ply"}))
                ->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return minsurf::run(cfg, std::cout, std::cerr);
}
