#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/curve.hpp"
#include "minsurf/error.hpp"
#include "minsurf/tracker.hpp"

#include <algorithm>
#include <random>

using namespace minsurf;

namespace {

CurveSpec graph(PolyU f0) { return normalize({1, {std::move(f0), PolyU{-1.0}}, ""}); }

CurveSpec hyper(const std::vector<Complex>& zs)
{
    PolyU p{1.0};
    for (const auto& z : zs)
        p = p * PolyU{-z, 1.0};
    return normalize({2, {p, PolyU{}, PolyU{-1.0}}, ""});
}

CurveSpec costa1()
{
    return normalize({3, {PolyU{0, 0, 0, 0, -27.0, 0, 0, 0, 4.0}, PolyU{}, PolyU{0, 0, 0, 0, -1.0}, PolyU{1.0}}, ""});
}

double max_residual(const CurveSpec& spec, const LiftedPath& p)
{
    const CurveSpec v = spec.in_opposite_chart();
    double r = 0.0;
    for (const auto& s : p.samples) {
        const CurveSpec& c = s.chart == Chart::U ? spec : v;
        r = std::max(r, std::abs(c.eval(s.first, s.second)) / c.magnitude(s.first, s.second));
    }
    return r;
}

}  // namespace

TEST_CASE("single sheet follows the graph")
{
    const CurveSpec s = graph({1.0, -2.0, Complex(0.5, 0.5), 0, 0.25});
    std::vector<SpherePoint> path{{Chart::U, 0.3}, {Chart::U, Complex(1.2, 0.7)}, {Chart::U, Complex(-0.4, 1.5)}};
    auto lp = lift_path(s, path, s.f(0)(0.3));
    for (const auto& x : lp.samples) {
        REQUIRE(x.chart == Chart::U);
        CHECK(std::abs(x.second - s.f(0)(x.first)) < 1e-12 * (1.0 + std::abs(x.second)));
    }
    CHECK(std::abs(lp.back().first - Complex(-0.4, 1.5)) < 1e-15);
    CHECK(max_residual(s, lp) < 1e-10);
}

TEST_CASE("square root monodromy")
{
    const CurveSpec s = normalize({2, {PolyU{0, 1.0}, PolyU{}, PolyU{-1.0}}, ""});
    auto lp = lift_path(s, circle_path({Chart::U, 0.0}, 1.0, 64), 1.0);
    CHECK(std::abs(lp.back().second + 1.0) < 1e-10);
    auto cl = close_loop(s, circle_path({Chart::U, 0.0}, 1.0, 64), 1.0);
    CHECK(cl.traversals == 2);
    CHECK(std::abs(cl.path.back().second - 1.0) < 1e-10);
}

TEST_CASE("costa three cycle")
{
    const CurveSpec c = costa1();
    auto m = monodromy(c, circle_path({Chart::U, 0.0}, 0.1, 64));
    REQUIRE(m.sheets.size() == 3);
    for (int len : m.cycle_length_per_sheet)
        CHECK(len == 3);
}

TEST_CASE("loop closure counts")
{
    CHECK(close_loop(graph({-1.0, 0, 0, 0, 1.0}), circle_path({Chart::U, 1.0}, 0.2, 32), -1.0 + std::pow(1.2, 4)).traversals == 1);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> un(-1.5, 1.5);
    std::vector<Complex> zs;
    for (int i = 0; i < 8; ++i)
        zs.emplace_back(un(rng), un(rng));
    const CurveSpec h = hyper(zs);
    for (const auto& z : zs) {
        double sep = 1e9;
        for (const auto& w : zs)
            if (w != z)
                sep = std::min(sep, std::abs(w - z));
        const auto loop = circle_path({Chart::U, z}, 0.3 * sep, 48);
        const auto q0 = sheets_at(h, loop.front())[0];
        auto cl = close_loop(h, loop, q0);
        CHECK(cl.traversals == 2);
        CHECK(max_residual(h, cl.path) < 1e-10);
    }
}

TEST_CASE("reversal inverts the permutation")
{
    const CurveSpec c = costa1();
    auto loop = circle_path({Chart::U, Complex(1.0, 1.0)}, 1.5, 96, 0.1);
    auto fwd = monodromy(c, loop);
    std::reverse(loop.begin(), loop.end());
    auto bwd = monodromy(c, loop);
    REQUIRE(fwd.sheets.size() == bwd.sheets.size());
    for (std::size_t i = 0; i < fwd.sheets.size(); ++i)
        CHECK(bwd.sheet_permutation[static_cast<std::size_t>(fwd.sheet_permutation[i])] == static_cast<int>(i));

    // loop followed by its reverse returns to the start
    auto there = circle_path({Chart::U, Complex(1.0, 1.0)}, 1.5, 96, 0.1);
    auto back = there;
    std::reverse(back.begin(), back.end());
    there.insert(there.end(), back.begin() + 1, back.end());
    for (const auto& q : fwd.sheets) {
        auto lp = lift_path(c, there, q);
        ChartPoint end = lp.back();
        if (end.chart == Chart::V)
            end = chart_transfer(end);
        CHECK(std::abs(end.second - q) < 1e-9 * (1.0 + std::abs(q)));
    }
}

TEST_CASE("chart switching")
{
    const CurveSpec s = graph({1.0, 0, 1.0});
    auto lp = lift_path(s, circle_path({Chart::U, 0.0}, 5.0, 64), 26.0);
    bool saw_v = false;
    for (const auto& x : lp.samples) {
        if (x.chart == Chart::V) {
            saw_v = true;
            const Complex u = 1.0 / x.first;
            CHECK(std::abs(x.second * u * u * u * u - (1.0 + u * u)) < 1e-10 * std::abs(1.0 + u * u));
        }
    }
    CHECK(saw_v);
    CHECK(max_residual(s, lp) < 1e-10);
}

TEST_CASE("branch point errors")
{
    const CurveSpec s = normalize({2, {PolyU{0, 1.0}, PolyU{}, PolyU{-1.0}}, ""});
    try {
        lift_path(s, {{Chart::U, 1.0}, {Chart::U, -1.0}}, 1.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::NearBranchPoint || e.code() == ErrorCode::StepCollapse));
    }
    CHECK_THROWS_AS(lift_path(s, {{Chart::U, 1.0}}, 5.0), Error);
}
