#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace minsurf;
using json = nlohmann::json;

namespace {

const std::string data_dir = TEST_DATA_DIR;

struct Outcome {
    int status;
    json doc;
    std::string err;
};

Outcome call(RunConfig cfg)
{
    std::ostringstream out, err;
    const int st = run(cfg, out, err);
    return {st, json::parse(out.str()), err.str()};
}

RunConfig cfg(Command c, std::string input)
{
    RunConfig r;
    r.command = c;
    r.input = std::move(input);
    return r;
}

}  // namespace

TEST_CASE("report on costa")
{
    const auto o = call(cfg(Command::Report, "costa"));
    REQUIRE(o.status == 0);
    CHECK(o.doc["schema"] == 1);
    const auto& t = o.doc["topology"];
    CHECK(t["d"] == 3);
    CHECK(t["g"] == 1);
    CHECK(t["r"] == 3);
    CHECK(t["s"] == 3);
    CHECK(o.doc["validation"]["verdict"] == "SMOOTH_IMMERSION");
    CHECK(t["ends"].size() == 3);
    CHECK(t["flat_points"].size() == 4);
}

TEST_CASE("periods on enneper")
{
    const auto o = call(cfg(Command::Periods, "enneper"));
    REQUIRE(o.status == 0);
    CHECK(o.doc["periods"]["group"]["generators"].empty());
    CHECK(o.doc["periods"]["lattice"]["verdict"] == "TRIVIAL");
    CHECK(o.doc["periods"]["lattice"]["rank"] == 0);
}

TEST_CASE("degree bound violation is reported with its code")
{
    const auto o = call(cfg(Command::Validate, data_dir + "/bad_degree.json"));
    CHECK(o.status != 0);
    CHECK(o.doc["error"]["code"] == "DegreeBoundViolated");
    CHECK(o.err.find("DegreeBoundViolated") != std::string::npos);
}

TEST_CASE("errors from names and files")
{
    CHECK(call(cfg(Command::Validate, "torus")).doc["error"]["code"] == "UnknownName");
    CHECK(call(cfg(Command::Validate, "bour(1,3)")).doc["error"]["code"] == "InvalidParams");
    CHECK(call(cfg(Command::Validate, "missing/file.json")).doc["error"]["code"] == "IoError");
    RunConfig bad = cfg(Command::Validate, "enneper");
    bad.tol = -1.0;
    CHECK(call(bad).status == 2);
}

TEST_CASE("classify from a spec file")
{
    const auto o = call(cfg(Command::Classify, data_dir + "/scherk.json"));
    REQUIRE(o.status == 0);
    const auto& bs = o.doc["branches"];
    REQUIRE(bs.size() == 4);
    for (const auto& b : bs) {
        CHECK(b["k"] == 1);
        CHECK(b["l"] == 1);
        CHECK(b["end_type"] == "STRIP");
        CHECK(b["end_period"].size() == 3);
    }
    CHECK(o.doc["spec"]["coeffs"][0][0] == json::array({-1.0, 0.0}));
}

TEST_CASE("mesh writes file and sidecar")
{
    const auto dir = std::filesystem::temp_directory_path() / "minsurf_cli_test";
    std::filesystem::create_directories(dir);
    for (const char* fmt : {"obj", "ply"}) {
        RunConfig c = cfg(Command::Mesh, "enneper");
        c.format = fmt;
        c.mesh_resolution = 8;
        c.out = (dir / (std::string("enneper.") + fmt)).string();
        const auto o = call(c);
        REQUIRE(o.status == 0);
        CHECK(std::filesystem::file_size(c.out) > 100);
        std::ifstream side(dir / "enneper.json");
        const json s = json::parse(side);
        CHECK(s["schema"] == 1);
        CHECK(s["sheet_count"] == 1);
        CHECK(s["format"] == fmt);
        CHECK(s["faces"] == o.doc["mesh"]["faces"]);
    }
    RunConfig c = cfg(Command::Mesh, "enneper");
    CHECK(call(c).status == 2);
    c.out = (dir / "x.json").string();
    CHECK(call(c).status == 2);
}

TEST_CASE("gallery list and determinism")
{
    RunConfig g;
    g.command = Command::GalleryList;
    const auto o = call(g);
    REQUIRE(o.status == 0);
    CHECK(o.doc["gallery"]["syntax"].size() == 9);
    CHECK(o.doc["gallery"]["entries"].size() == 11);

    std::ostringstream a, b, e;
    run(cfg(Command::Report, "scherk"), a, e);
    run(cfg(Command::Report, "scherk"), b, e);
    CHECK(a.str() == b.str());
}

TEST_CASE("command names")
{
    for (Command c : {Command::Validate, Command::Classify, Command::Periods, Command::Mesh, Command::Report,
                      Command::GalleryList})
        CHECK(parse_command(to_string(c)) == c);
    CHECK(!parse_command("plot"));
}
