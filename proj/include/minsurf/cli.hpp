#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace minsurf {

enum class Command { Validate, Classify, Periods, Mesh, Report, GalleryList };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);

struct RunConfig {
    Command command = Command::Report;
    std::string input;              // curve-spec JSON path or gallery call such as "bour(3,2)"
    double tol = 1e-8;              // validation, census and lattice tolerance
    int mesh_resolution = 24;
    double exclude_radius = 0.05;
    double relation_height = 1e4;
    std::string out;                // mesh file; the sidecar goes next to it with extension .json
    std::string format = "obj";     // obj | ply
};

/// Runs one command and writes a JSON document (schema 1) to out. Module
/// errors become {"schema":1,"error":{"code":...,"message":...}} on out plus
/// one line on err. Returns 0 on success, 1 on a module error, 2 on a bad config.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace minsurf
