#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/error.hpp"
#include "minsurf/gallery.hpp"
#include "minsurf/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace minsurf;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<std::pair<int, int>> census(const CurveSpec& s)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& z : zero_section_points(s))
        for (const auto& b : z.branches)
            out.push_back({b.k, b.l});
    std::sort(out.begin(), out.end());
    return out;
}

ErrorCode code_of(std::string_view call)
{
    try {
        parse_example(call);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

void confirm(const GalleryEntry& g)
{
    INFO(g.name);
    const ExpectedFacts& e = g.expected;
    const auto v = validate(g.spec);
    if (!g.flagged)
        CHECK(v.verdict == Verdict::SmoothImmersion);
    if (v.verdict != Verdict::SmoothImmersion)
        return;
    CHECK(g.spec.d == e.d);
    CHECK(census(g.spec) == e.census);
    const auto t = topology_report(g.spec);
    CHECK(t.r == *e.r);
    CHECK(t.s == *e.s);
    CHECK(t.genus == *e.genus);
    CHECK(static_cast<int>(t.flat_points.size()) == *e.finite_flat_points);
    CHECK(t.expected_total_curvature == doctest::Approx(e.total_curvature));
    if (e.meeks_symmetric)
        CHECK(meeks_symmetric(g.spec) == *e.meeks_symmetric);
    if (!e.real_periods_vanish && !e.lattice_verdict && !e.imaginary_rank)
        return;
    const PeriodGroup pg = period_group(g.spec);
    if (e.real_periods_vanish) {
        double m = 0.0;
        for (const auto& p : pg.real_generators)
            m = std::max(m, p.norm());
        if (*e.real_periods_vanish)
            CHECK(m < 1e-8);
        else
            CHECK(m > 1e-3);
    }
    const auto la = lattice_analysis(pg);
    if (e.lattice_verdict)
        CHECK(std::string(to_string(la.verdict)) == *e.lattice_verdict);
    if (e.imaginary_rank)
        CHECK(la.imaginary_rank == *e.imaginary_rank);
}

}  // namespace

TEST_CASE("named examples")
{
    const auto s = parse_example("scherk");
    CHECK(s.spec.d == 1);
    CHECK(zero_section_points(s.spec).size() == 4);
    const auto c = parse_example("costa(1)");
    CHECK(c.spec.d == 3);
    CHECK(c.spec.f(3)[0] == Complex(-1.0));
    CHECK(std::abs(c.spec.f(2)[4] - 1.0) < 1e-15);
    CHECK(std::abs(c.spec.f(0)[4] - 27.0) < 1e-15);
    CHECK(std::abs(c.spec.f(0)[8] + 4.0) < 1e-15);
    const auto h = parse_example("helicoid");
    CHECK(std::abs(h.spec.f(0)[2] - Complex(0, 1)) < 1e-15);
    CHECK(parse_example("bour(3,2)").expected.real_periods_vanish == true);
    CHECK(parse_example("bour(1,1)").expected.real_periods_vanish == false);
    CHECK(parse_example("schwarz").flagged);
    CHECK(parse_example("schwarz(symmetric)").flagged);
    CHECK(gallery_names().size() == 9);
}

TEST_CASE("call syntax")
{
    const auto a = parse_example("associated(0.5)");
    CHECK(std::abs(a.spec.f(0)[2] - std::polar(1.0, 0.5)) < 1e-15);
    const auto b = parse_example("bour(1, 1, 0.5+2i)");
    CHECK(std::abs(b.spec.f(0)[1] - Complex(0.5, 2)) < 1e-15);
    const auto f = parse_example("hyperelliptic(1,0,0,0,0,0,0,0,1)");
    CHECK(f.spec.f(0).degree() == 8);
    CHECK(parse_example("hyperelliptic(seed=4)").spec.f(0) == parse_example("hyperelliptic(seed=4)").spec.f(0));
    CHECK(parse_example("hyperelliptic(seed=4)").spec.f(0) != parse_example("hyperelliptic(seed=5)").spec.f(0));
}

TEST_CASE("bad names and parameters")
{
    CHECK(code_of("torus") == ErrorCode::UnknownName);
    CHECK(code_of("bour(1,0)") == ErrorCode::InvalidParams);
    CHECK(code_of("bour(5,2)") == ErrorCode::InvalidParams);
    CHECK(code_of("bour(2,4)") == ErrorCode::InvalidParams);
    CHECK(code_of("bour(-1,2)") == ErrorCode::InvalidParams);
    CHECK(code_of("bour(1,3)") == ErrorCode::InvalidParams);
    CHECK(code_of("bour(1,2,0)") == ErrorCode::InvalidParams);
    CHECK(code_of("hyperelliptic(1,0,0,0,0,0,1)") == ErrorCode::InvalidParams);
    CHECK(code_of("hyperelliptic(0,0,1,0,0,0,0,0,1)") == ErrorCode::InvalidParams);
    CHECK(code_of("associated") == ErrorCode::InvalidParams);
    CHECK(code_of("associated(x)") == ErrorCode::InvalidParams);
    CHECK(code_of("schwarz(other)") == ErrorCode::InvalidParams);
    CHECK(code_of("costa(0)") == ErrorCode::InvalidParams);
}

TEST_CASE("expected facts hold for every entry")
{
    for (const char* call : {"enneper", "catenoid", "helicoid", "associated(0.5235987755982988)", "scherk",
                             "bour(0,1)", "bour(1,1)", "bour(2,1)", "bour(1,2)", "bour(3,2)", "bour(5,3)",
                             "hyperelliptic(seed=1)", "hyperelliptic(meeks)", "schwarz(printed)",
                             "schwarz(symmetric)", "costa(1)", "costa(0.8)"})
        confirm(parse_example(call));
}

TEST_CASE("Bour (1,1) period is horizontal")
{
    const PeriodGroup g = period_group(parse_example("bour(1,1,1.3-0.4i)").spec);
    REQUIRE(g.real_generators.size() == 1);
    const Vec3 p = g.real_generators[0];
    CHECK(p.norm() > 1.0);
    CHECK(std::abs(p(2)) < 1e-8 * p.norm());
}

TEST_CASE("associated family end period")
{
    for (double th : {0.0, pi / 6, pi / 2, 2.0}) {
        const auto g = get_example("associated", GalleryParams{.theta = th});
        double best = 0.0;
        for (const auto& cb : classify_zero_section(g.spec))
            if (cb.cls.period && cb.location.chart == Chart::U)
                best = (*cb.cls.period - Vec3(0, 0, -8 * pi * std::sin(th))).norm();
        CHECK(best < 1e-6);
    }
}
