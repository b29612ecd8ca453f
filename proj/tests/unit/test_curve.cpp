#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/curve.hpp"
#include "minsurf/error.hpp"

#include <algorithm>
#include <numbers>
#include <random>

using namespace minsurf;

namespace {

CurveSpec graph(PolyU f0) { return normalize({1, {std::move(f0), PolyU{-1.0}}, ""}); }

CurveSpec costa1()
{
    // c^5 q^3 - c^2 u^4 q^2 - 27 c^4 u^4 + 4 u^8 at c = 1
    return normalize({3, {PolyU{0, 0, 0, 0, -27.0, 0, 0, 0, 4.0}, PolyU{}, PolyU{0, 0, 0, 0, -1.0}, PolyU{1.0}}, "costa"});
}

PolyU from_roots(const std::vector<Complex>& zs, Complex c)
{
    PolyU p{c};
    for (const auto& z : zs)
        p = p * PolyU{-z, 1.0};
    return p;
}

std::vector<std::pair<int, int>> census(const std::vector<BranchLocal>& bs)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& b : bs)
        out.emplace_back(b.k, b.l);
    std::sort(out.begin(), out.end());
    return out;
}

// Oracle: number of fiber roots that tend to 0 near u0 equals the sum of k.
int sheets_through(const CurveSpec& spec, Complex u0, double eps)
{
    int n = 0;
    for (int k = 0; k < 3; ++k) {
        const Complex u = u0 + std::polar(eps, 0.7 + k);
        int c = 0;
        for (const auto& r : roots(spec.fiber_poly(u), 1e-14))
            if (std::abs(r.value) < 1e-2)
                c += r.multiplicity;
        n = std::max(n, c);
    }
    return n;
}

}  // namespace

TEST_CASE("parse and normalize")
{
    auto e = parse_and_normalize(R"({"d":1,"coeffs":[[[1,0]],[[-1,0]]],"name":"enneper"})");
    CHECK(e.d == 1);
    CHECK(e.f(0) == PolyU{1.0});
    CHECK(e.f(1) == PolyU{-1.0});
    CHECK(e.name == "enneper");

    try {
        parse_and_normalize(R"({"d":2,"coeffs":[[1],[0,0,0,0,0,1],[-1]]})");
        FAIL("expected an error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::DegreeBoundViolated);
    }
    try {
        parse_and_normalize(R"({"d":1,"coeffs":[[1],[0,1]]})");
        FAIL("expected an error");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NonConstantLeading);
    }
    for (const char* bad : {"{", R"({"d":1})", R"({"d":"x","coeffs":[]})", R"({"d":1,"coeffs":[[1]]})",
                            R"({"d":1,"coeffs":[[[1,2,3]],[-1]]})"}) {
        try {
            parse_and_normalize(bad);
            FAIL("expected an error");
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::MalformedInput);
        }
    }

    auto c = costa1();
    CHECK(c.d == 3);
    CHECK(c.f(3) == PolyU{-1.0});
    CHECK(c.f(2) == PolyU{0, 0, 0, 0, 1.0});
    CHECK(c.f(1).is_zero());
    CHECK(c.f(0) == PolyU{0, 0, 0, 0, 27.0, 0, 0, 0, -4.0});

    auto round = parse_and_normalize(to_json_text(c));
    CHECK(round.f(0) == c.f(0));
    CHECK(round.name == "costa");
}

TEST_CASE("zero section points")
{
    auto scherk = zero_section_points(graph({-1.0, 0, 0, 0, 1.0}));
    CHECK(scherk.size() == 4);
    for (const auto& p : scherk) {
        CHECK(p.location.chart == Chart::U);
        CHECK(p.total_multiplicity == 1);
        CHECK(std::abs(std::pow(p.location.coord, 4) - 1.0) < 1e-12);
        CHECK(census(p.branches) == std::vector<std::pair<int, int>>{{1, 1}});
    }

    auto enn = zero_section_points(graph({1.0}));
    REQUIRE(enn.size() == 1);
    CHECK(enn[0].location.is_infinity());
    CHECK(enn[0].total_multiplicity == 4);
    CHECK(census(enn[0].branches) == std::vector<std::pair<int, int>>{{1, 4}});

    auto costa = zero_section_points(costa1());
    int total = 0;
    int finite_simple = 0;
    for (const auto& p : costa) {
        total += p.total_multiplicity;
        if (p.location.is_infinity()) {
            CHECK(p.total_multiplicity == 4);
            CHECK(census(p.branches) == std::vector<std::pair<int, int>>{{1, 2}, {1, 2}});
        } else if (std::abs(p.location.coord) < 1e-12) {
            CHECK(p.total_multiplicity == 4);
            CHECK(census(p.branches) == std::vector<std::pair<int, int>>{{3, 4}});
        } else {
            ++finite_simple;
            CHECK(std::abs(std::pow(p.location.coord, 4) - 27.0 / 4.0) < 1e-10);
            CHECK(census(p.branches) == std::vector<std::pair<int, int>>{{2, 1}});
        }
    }
    CHECK(finite_simple == 4);
    CHECK(total == 12);
}

TEST_CASE("branch data")
{
    auto cat = branch_local_data(graph({0, 0, 1.0}), {Chart::U, 0.0});
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].k == 1);
    CHECK(cat[0].l == 2);

    auto cusp = branch_local_data(normalize({2, {PolyU{0, 0, 0, 1.0}, PolyU{}, PolyU{-1.0}}, ""}), {Chart::U, 0.0});
    REQUIRE(cusp.size() == 1);
    CHECK(cusp[0].k == 2);
    CHECK(cusp[0].l == 3);

    // q = u: leads are 1 and 1
    auto line = branch_local_data(graph({0, 1.0}), {Chart::U, 0.0});
    REQUIRE(line.size() == 1);
    CHECK(std::abs(line[0].puiseux_q_lead / line[0].puiseux_u_lead - 1.0) < 1e-12);

    // a point off the curve has no branch data
    CHECK_THROWS_AS(branch_local_data(graph({1.0, 1.0}), {Chart::U, 0.0}), Error);
}

TEST_CASE("branch data oracle on random hyperelliptic curves")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> un(-1.5, 1.5);
    for (int t = 0; t < 5; ++t) {
        std::vector<Complex> zs;
        for (int i = 0; i < 8; ++i)
            zs.emplace_back(un(rng), un(rng));
        const CurveSpec s = normalize({2, {from_roots(zs, 1.0), PolyU{}, PolyU{-1.0}}, ""});
        auto pts = zero_section_points(s);
        CHECK(pts.size() == 8);
        for (const auto& p : pts) {
            REQUIRE(p.branches.size() == 1);
            CHECK(p.branches[0].k == 2);
            CHECK(p.branches[0].l == 1);
            CHECK(sheets_through(s, p.location.coord, 1e-10) == 2);
            // chart covariance
            auto v = branch_local_data(s, {Chart::V, 1.0 / p.location.coord});
            CHECK(census(v) == census(p.branches));
        }
        auto rep = validate(s);
        CHECK(rep.verdict == Verdict::SmoothImmersion);
    }
}

TEST_CASE("costa sheets oracle")
{
    const CurveSpec c = costa1();
    CHECK(sheets_through(c, 0.0, 1e-4) == 3);
    CHECK(sheets_through(c.in_opposite_chart(), 0.0, 1e-4) == 2);
}

TEST_CASE("validate")
{
    auto cusp = validate(normalize({2, {PolyU{0, 0, 0, 1.0}, PolyU{}, PolyU{-1.0}}, ""}));
    CHECK(cusp.verdict == Verdict::SmoothImmersion);
    CHECK(cusp.flat_points_ok);

    auto quiet = validate(normalize({2, {PolyU{2.0, 0, 2.0, 0, 1.0}, PolyU{}, PolyU{-1.0}}, ""}));
    CHECK(quiet.critical_points.empty());
    CHECK(quiet.transversal);

    // -q^2 + u q + 1: f = f_q = 0 at u = +-2i, q = +-i
    auto bad = validate(normalize({2, {PolyU{1.0}, PolyU{0, 1.0}, PolyU{-1.0}}, ""}));
    CHECK_FALSE(bad.transversal);
    CHECK(bad.verdict == Verdict::NotImmersed);
    CHECK(bad.transversality_violations.size() == 2);
    for (const auto& v : bad.transversality_violations) {
        // reported in whichever chart has |coordinate| <= 1
        const bool in_u = v.u.chart == Chart::U;
        const Complex u = in_u ? v.u.coord : 1.0 / v.u.coord;
        const Complex q = in_u ? v.q : v.q * u * u * u * u;
        CHECK(std::abs(u * u + 4.0) < 1e-8);
        CHECK(std::abs(q - u / 2.0) < 1e-8);
        CHECK(v.branch_k == std::vector<int>{2});
    }

    // (q - u)^2 is not reduced
    auto sq = validate(normalize({2, {PolyU{0, 0, -1.0}, PolyU{0, 2.0}, PolyU{-1.0}}, ""}));
    CHECK_FALSE(sq.reduced);
    CHECK(sq.verdict == Verdict::NotImmersed);

    // Costa has nodes off the zero section but every branch is transversal
    auto costa = validate(costa1());
    CHECK(costa.verdict == Verdict::SmoothImmersion);
    CHECK_FALSE(costa.critical_points.empty());
}

TEST_CASE("discriminant")
{
    // -q^2 + f0: Res_q(f, f_q) is a multiple of f0
    const PolyU f0{1.0, 2.0, 0, 3.0};
    const PolyU R = discriminant(normalize({2, {f0, PolyU{}, PolyU{-1.0}}, ""}));
    CHECK(R.degree() == 3);
    for (int i = 0; i <= 3; ++i)
        CHECK(std::abs(R[i] / R[3] - f0[i] / f0[3]) < 1e-10);
}

TEST_CASE("meeks symmetry")
{
    const std::vector<Complex> a{1.0, I, 2.0, 2.0 * I};
    std::vector<Complex> zs;
    Complex prod = 1.0;
    for (const auto& x : a) {
        zs.push_back(x);
        zs.push_back(-1.0 / std::conj(x));
        prod *= x;
    }
    // c prod(a_j) real
    const Complex c = std::conj(prod) / std::abs(prod);
    CHECK(meeks_symmetric(normalize({2, {from_roots(zs, c), PolyU{}, PolyU{-1.0}}, ""})));
    CHECK_FALSE(meeks_symmetric(normalize({2, {from_roots(zs, c * I), PolyU{}, PolyU{-1.0}}, ""})));
    CHECK_FALSE(meeks_symmetric(normalize({2, {PolyU{0, 1.0, 0, 0, 0, 0, 0, 0, 1.0}, PolyU{}, PolyU{-1.0}}, ""})));
    CHECK(meeks_symmetric(graph(PolyU{-I, 0, 0, 0, I})));
    CHECK_FALSE(meeks_symmetric(graph(PolyU{-1.0, 0, 0, 0, 1.0})));
}
