#include "minsurf/cli.hpp"

#include "minsurf/curve.hpp"
#include "minsurf/ends.hpp"
#include "minsurf/error.hpp"
#include "minsurf/gallery.hpp"
#include "minsurf/integrate.hpp"
#include "minsurf/periods.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace minsurf {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kSchema = 1;

json cx(Complex z) { return json::array({z.real(), z.imag()}); }

json vec(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

json cvec(const CVec3& v) { return json::array({cx(v(0)), cx(v(1)), cx(v(2))}); }

json point(const SpherePoint& p)
{
    return {{"chart", p.chart == Chart::U ? "U" : "V"}, {"coord", cx(p.coord)}, {"sphere", vec(gauss_point(p.chart, p.coord))}};
}

json spec_json(const CurveSpec& s)
{
    json cs = json::array();
    for (const auto& p : s.coeffs) {
        json row = json::array();
        for (const auto& c : p.coeffs())
            row.push_back(cx(c));
        cs.push_back(row);
    }
    return {{"d", s.d}, {"name", s.name}, {"coeffs", cs}};
}

json critical(const CriticalPoint& c)
{
    return {{"location", point(c.u)}, {"q", cx(c.q)}, {"branch_k", c.branch_k}};
}

json validation_json(const ValidationReport& v)
{
    json crit = json::array(), trans = json::array(), flat = json::array(), zs = json::array();
    for (const auto& c : v.critical_points)
        crit.push_back(critical(c));
    for (const auto& c : v.transversality_violations)
        trans.push_back(critical(c));
    for (const auto& f : v.flat_point_violations)
        flat.push_back({{"location", point(f.location)}, {"k", f.branch.k}, {"l", f.branch.l}});
    for (const auto& z : v.zero_section) {
        json br = json::array();
        for (const auto& b : z.branches)
            br.push_back({{"k", b.k}, {"l", b.l}});
        zs.push_back({{"location", point(z.location)}, {"multiplicity", z.total_multiplicity}, {"branches", br}});
    }
    return {{"verdict", v.verdict == Verdict::SmoothImmersion ? "SMOOTH_IMMERSION" : "NOT_IMMERSED"},
            {"contained_in_q", v.contained_in_q},
            {"reduced", v.reduced},
            {"transversal", v.transversal},
            {"flat_points_ok", v.flat_points_ok},
            {"critical_points", crit},
            {"transversality_violations", trans},
            {"flat_point_violations", flat},
            {"zero_section", zs}};
}

json branch_json(const ClassifiedBranch& b)
{
    json j = {{"location", point(b.location)},
              {"k", b.branch.k},
              {"l", b.branch.l},
              {"kind", to_string(b.cls.kind)}};
    if (b.cls.kind == BranchKind::FlatEnd) {
        j["spin"] = b.cls.spin;
        j["end_type"] = b.cls.end_type ? json(to_string(*b.cls.end_type)) : json(nullptr);
        j["end_period"] = b.cls.period ? vec(*b.cls.period) : json(nullptr);
    }
    return j;
}

json classify_json(const std::vector<ClassifiedBranch>& bs)
{
    json a = json::array();
    for (const auto& b : bs)
        a.push_back(branch_json(b));
    return a;
}

json periods_json(const PeriodGroup& g, const LatticeAnalysis& la)
{
    json gens = json::array();
    for (std::size_t i = 0; i < g.complex_generators.size(); ++i) {
        json e = {{"complex", cvec(g.complex_generators[i])}, {"real", vec(g.real_generators[i])}};
        if (i < g.provenance.size())
            e["provenance"] = g.provenance[i];
        gens.push_back(e);
    }
    json basis = json::array();
    for (const auto& b : la.basis)
        basis.push_back(vec(b));
    json group = {{"generators", gens},
                  {"closed_form_deviation", g.closed_form_deviation ? json(*g.closed_form_deviation) : json(nullptr)}};
    json lattice = {{"verdict", to_string(la.verdict)},
                    {"rank", la.rank},
                    {"imaginary_rank", la.imaginary_rank},
                    {"basis", basis},
                    {"relations", la.relations}};
    return {{"group", group}, {"lattice", lattice}};
}

json topology_json(const TopologyReport& t)
{
    json flats = json::array();
    for (const auto& f : t.flat_points)
        flats.push_back({{"location", point(f.location)}, {"k", f.k}, {"l", f.l}});
    return {{"d", t.d},
            {"r", t.r},
            {"s", t.s},
            {"g", t.genus},
            {"g_riemann_hurwitz", t.genus_rh},
            {"euler_characteristic", t.euler_char},
            {"expected_total_curvature", t.expected_total_curvature},
            {"kchi_total_curvature", t.kchi_total_curvature},
            {"flat_points", flats},
            {"ends", classify_json(t.ends)}};
}

json expected_json(const ExpectedFacts& e)
{
    json census = json::array();
    for (auto [k, l] : e.census)
        census.push_back(json::array({k, l}));
    json j = {{"d", e.d}, {"census", census}, {"total_curvature", e.total_curvature}};
    auto opt = [&](const char* key, const auto& o) {
        if (o)
            j[key] = *o;
    };
    opt("g", e.genus);
    opt("r", e.r);
    opt("s", e.s);
    opt("finite_flat_points", e.finite_flat_points);
    opt("real_periods_vanish", e.real_periods_vanish);
    opt("lattice_verdict", e.lattice_verdict);
    opt("imaginary_rank", e.imaginary_rank);
    opt("meeks_symmetric", e.meeks_symmetric);
    return j;
}

json gallery_list()
{
    json entries = json::array();
    for (const char* call : {"enneper", "catenoid", "helicoid", "associated(0.5)", "scherk", "bour(3,2)",
                             "hyperelliptic(seed=1)", "hyperelliptic(meeks)", "schwarz(printed)",
                             "schwarz(symmetric)", "costa(1)"}) {
        const GalleryEntry g = parse_example(call);
        entries.push_back({{"call", call},
                           {"name", g.name},
                           {"flagged", g.flagged},
                           {"expected", expected_json(g.expected)},
                           {"notes", g.notes}});
    }
    return {{"syntax", gallery_names()}, {"entries", entries}};
}

CurveSpec resolve_input(const std::string& input)
{
    if (input.empty())
        throw Error(ErrorCode::MalformedInput, "no input given");
    std::error_code ec;
    if (fs::is_regular_file(input, ec)) {
        std::ifstream in(input);
        if (!in)
            throw Error(ErrorCode::IoError, "cannot read " + input);
        std::stringstream ss;
        ss << in.rdbuf();
        CurveSpec s = parse_and_normalize(ss.str());
        if (s.name.empty())
            s.name = fs::path(input).stem().string();
        return s;
    }
    if (input.find('/') != std::string::npos || input.ends_with(".json"))
        throw Error(ErrorCode::IoError, "no such file: " + input);
    return parse_example(input).spec;
}

fs::path sidecar_path(const fs::path& out) { return fs::path(out).replace_extension(".json"); }

json mesh_command(const CurveSpec& spec, const RunConfig& cfg)
{
    MeshConfig mc;
    mc.resolution = cfg.mesh_resolution;
    mc.exclusion_radius = cfg.exclude_radius;
    const SurfaceMesh m = reconstruct_mesh(spec, mc);

    const fs::path out = cfg.out;
    {
        std::ofstream f(out, std::ios::binary);
        if (!f)
            throw Error(ErrorCode::IoError, "cannot write " + cfg.out);
        if (cfg.format == "ply")
            write_ply(m, f);
        else
            write_obj(m, f);
        if (!f)
            throw Error(ErrorCode::IoError, "write failed: " + cfg.out);
    }
    json centers = json::array();
    for (const auto& c : m.exclusion_centers)
        centers.push_back(point(c));
    json side = {{"schema", kSchema},
                 {"mesh", out.filename().string()},
                 {"format", cfg.format},
                 {"base_point", point(m.base)},
                 {"exclusion_radius", m.exclusion_radius},
                 {"exclusion_centers", centers},
                 {"sheet_count", m.sheet_count},
                 {"resolution", cfg.mesh_resolution},
                 {"grid_nodes", m.grid_nodes},
                 {"vertices", m.vertices.size()},
                 {"faces", m.faces.size()},
                 {"skipped_cells", m.skipped_cells}};
    const fs::path sp = sidecar_path(out);
    std::ofstream f(sp);
    if (!f)
        throw Error(ErrorCode::IoError, "cannot write " + sp.string());
    f << side.dump(2) << '\n';
    side.erase("schema");
    side["sidecar"] = sp.string();
    return side;
}

std::string check_config(const RunConfig& c)
{
    if (!(c.tol > 0.0))
        return "--tol must be positive";
    if (c.mesh_resolution < 2)
        return "--mesh-res must be at least 2";
    if (!(c.exclude_radius > 0.0))
        return "--exclude-radius must be positive";
    if (!(c.relation_height >= 1.0))
        return "--relation-height must be at least 1";
    if (c.format != "obj" && c.format != "ply")
        return "--format must be obj or ply";
    if (c.command == Command::Mesh) {
        if (c.out.empty())
            return "mesh needs --out";
        if (sidecar_path(c.out) == fs::path(c.out))
            return "--out must not end in .json";
    }
    return {};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name)
{
    for (Command c : {Command::Validate, Command::Classify, Command::Periods, Command::Mesh, Command::Report,
                      Command::GalleryList})
        if (name == to_string(c))
            return c;
    return std::nullopt;
}

const char* to_string(Command c)
{
    switch (c) {
    case Command::Validate: return "validate";
    case Command::Classify: return "classify";
    case Command::Periods: return "periods";
    case Command::Mesh: return "mesh";
    case Command::Report: return "report";
    case Command::GalleryList: return "gallery-list";
    }
    return "?";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    json doc = {{"schema", kSchema}, {"command", to_string(cfg.command)}};
    if (const std::string bad = check_config(cfg); !bad.empty()) {
        doc["error"] = {{"code", "InvalidConfig"}, {"message", bad}};
        out << doc.dump(2) << '\n';
        err << "error: " << bad << '\n';
        return 2;
    }
    try {
        if (cfg.command == Command::GalleryList) {
            doc["gallery"] = gallery_list();
        } else {
            const CurveSpec spec = resolve_input(cfg.input);
            doc["input"] = cfg.input;
            doc["spec"] = spec_json(spec);
            const LatticeOptions lo{cfg.relation_height, cfg.tol};
            switch (cfg.command) {
            case Command::Validate:
                doc["validation"] = validation_json(validate(spec, cfg.tol));
                break;
            case Command::Classify:
                doc["branches"] = classify_json(classify_zero_section(spec, cfg.tol));
                break;
            case Command::Periods: {
                const PeriodGroup g = period_group(spec);
                doc["periods"] = periods_json(g, lattice_analysis(g, lo));
                break;
            }
            case Command::Mesh:
                doc["mesh"] = mesh_command(spec, cfg);
                break;
            case Command::Report: {
                const ValidationReport v = validate(spec, cfg.tol);
                doc["validation"] = validation_json(v);
                doc["topology"] = topology_json(topology_report(spec, cfg.tol));
                doc["total_curvature"] = total_curvature(spec);
                const PeriodGroup g = period_group(spec);
                doc["periods"] = periods_json(g, lattice_analysis(g, lo));
                break;
            }
            case Command::GalleryList:
                break;
            }
        }
    } catch (const Error& e) {
        json fail = {{"schema", kSchema}, {"command", to_string(cfg.command)}};
        if (!cfg.input.empty())
            fail["input"] = cfg.input;
        fail["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
        out << fail.dump(2) << '\n';
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 1;
    }
    out << doc.dump(2) << '\n';
    return 0;
}

}  // namespace minsurf
