#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/ends.hpp"
#include "minsurf/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace minsurf;

namespace {

constexpr double pi = std::numbers::pi;
const Complex J{0.0, 1.0};

CurveSpec graph(PolyU f0) { return normalize({1, {std::move(f0), PolyU{-1.0}}, ""}); }

CurveSpec costa1()
{
    return normalize({3, {PolyU{0, 0, 0, 0, -27.0, 0, 0, 0, 4.0}, PolyU{}, PolyU{0, 0, 0, 0, -1.0}, PolyU{1.0}}, ""});
}

LaurentData at(const CurveSpec& s, SpherePoint p, int n, int which = 0)
{
    const auto bs = branch_local_data(s, p);
    return laurent_coeffs(s, p, bs.at(static_cast<std::size_t>(which)), n);
}

// Power series of (-2 / f(z)) (1 - z^2, i (1 + z^2), 2z) for f with a zero
// of order m at 0, shifted by z^m: returns coefficients of z^(i - m).
std::vector<CVec3> series_oracle(const std::vector<Complex>& f, int m, int n)
{
    // 1 / (f(z) / z^m) by long division
    std::vector<Complex> g(f.begin() + m, f.end());
    std::vector<Complex> inv(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        Complex acc = i == 0 ? 1.0 : 0.0;
        for (int j = 1; j <= i && j < static_cast<int>(g.size()); ++j)
            acc -= g[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(i - j)];
        inv[static_cast<std::size_t>(i)] = acc / g[0];
    }
    std::vector<CVec3> out(static_cast<std::size_t>(n) + 1, CVec3::Zero());
    const CVec3 p0{1.0, J, 0.0}, p1{0.0, 0.0, 2.0}, p2{-1.0, J, 0.0};
    for (int i = 0; i <= n; ++i) {
        CVec3 c = inv[static_cast<std::size_t>(i)] * p0;
        if (i >= 1)
            c += inv[static_cast<std::size_t>(i - 1)] * p1;
        if (i >= 2)
            c += inv[static_cast<std::size_t>(i - 2)] * p2;
        out[static_cast<std::size_t>(i)] = -2.0 * c;
    }
    return out;
}

}  // namespace

TEST_CASE("classification table")
{
    CHECK(classify_branch({2, 1}).kind == BranchKind::FiniteFlat);
    const auto strip = classify_branch({1, 1});
    CHECK(strip.kind == BranchKind::FlatEnd);
    CHECK(strip.spin == 0);
    const auto cat = classify_branch({1, 2});
    CHECK(cat.kind == BranchKind::FlatEnd);
    CHECK(cat.spin == 1);
    CHECK(classify_branch({4, 2}).kind == BranchKind::Singular);
    CHECK(classify_branch({3, 4}).spin == 1);
}

TEST_CASE("q = u expansion")
{
    const auto d = at(graph({0.0, 1.0}), {Chart::U, 0.0}, 3);
    CHECK((d.coefficients[0] - CVec3(-2.0, -2.0 * J, 0.0)).norm() < 1e-12);
    CHECK((d.coefficients[1] - CVec3(0.0, 0.0, -4.0)).norm() < 1e-12);
    CHECK((d.coefficients[2] - CVec3(2.0, -2.0 * J, 0.0)).norm() < 1e-12);
    CHECK(d.coefficients[3].norm() < 1e-12);
    const auto p = end_period(d, 0);
    CHECK((p.p - Vec3(0.0, 4.0 * pi, 0.0)).norm() < 1e-10);
    CHECK(end_type(d, 0) == EndType::Strip);
}

TEST_CASE("catenoid and associated family")
{
    const auto d = at(graph({0.0, 0.0, 1.0}), {Chart::U, 0.0}, 2);
    CHECK((d.coefficients[1] - CVec3(0.0, 0.0, -4.0)).norm() < 1e-12);
    CHECK(end_type(d, 1) == EndType::Catenoid);
    CHECK(end_period(d, 1).p.norm() < 1e-10);
    for (double th : {0.3, 1.0, 2.0, -0.7}) {
        const auto a = at(graph({0.0, 0.0, std::polar(1.0, th)}), {Chart::U, 0.0}, 1);
        CHECK((end_period(a, 1).p - Vec3(0.0, 0.0, -8.0 * pi * std::sin(th))).norm() < 1e-9);
    }
    CHECK_THROWS_AS(end_period(d, 5), Error);
    CHECK_THROWS_AS(end_type(d, 3), Error);
}

TEST_CASE("Enneper end over -e3 is planar")
{
    const CurveSpec s = graph({1.0});
    const auto d = at(s, SpherePoint::infinity(), 3);
    CHECK(d.k == 1);
    CHECK(d.l == 4);
    CHECK((d.frame_to_global * Vec3::UnitZ() + Vec3::UnitZ()).norm() < 1e-12);
    CHECK(end_type(d, 3) == EndType::Planar);
    CHECK(end_period(d, 3).p.norm() < 1e-10);
    // c0 direction (1, i, 0)
    CHECK(std::abs(d.coefficients[0](1) - J * d.coefficients[0](0)) < 1e-12);
    CHECK(std::abs(d.coefficients[0](2)) < 1e-12);
}

TEST_CASE("contour coefficients match series division")
{
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 1 + trial % 3;
        std::vector<Complex> f(static_cast<std::size_t>(m), 0.0);
        f.push_back(Complex(1.0 + std::abs(nd(rng)), nd(rng)));
        for (int j = m + 1; j <= 4; ++j)
            f.push_back(0.3 * Complex(nd(rng), nd(rng)));
        const CurveSpec s = graph(PolyU(f));
        const int n = 6;
        const auto d = at(s, {Chart::U, 0.0}, n);
        const auto want = series_oracle(f, m, n);
        for (int i = 0; i <= n; ++i)
            CHECK((d.coefficients[static_cast<std::size_t>(i)] - want[static_cast<std::size_t>(i)]).norm() <=
                  1e-8 * want[static_cast<std::size_t>(i)].norm() + 1e-14 * std::pow(d.radius, -i) * want[0].norm());
    }
}

TEST_CASE("section periods at simple zeros")
{
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 25; ++trial) {
        const Complex a(nd(rng), nd(rng));
        std::vector<Complex> gc{Complex(1.0 + nd(rng), nd(rng)), Complex(nd(rng), nd(rng)), 0.5 * Complex(nd(rng), nd(rng))};
        const PolyU g(gc);
        const CurveSpec s = graph(g * PolyU{-a, 1.0});
        const auto d = at(s, {Chart::U, a}, 0);
        const Complex ga = g(a);
        const CVec3 v = CVec3(1.0 - a * a, J * (1.0 + a * a), 2.0 * a) / ga;
        const Vec3 want = 4.0 * pi * v.imag();
        CHECK((end_period(d, 0).p - want).norm() < 1e-8 * (1.0 + want.norm()));
        CHECK((d.frame_to_global * Vec3::UnitZ() - gauss_point(a)).norm() < 1e-12);
    }
}

TEST_CASE("end periods rotate with the spec")
{
    const CurveSpec s = graph(PolyU{Complex(0.3, -0.2), 1.0} * PolyU{-0.5, 0.0, 1.0});
    const Complex a(-0.3, 0.2);
    const Vec3 axis = Vec3(0.3, -1.0, 0.4).normalized();
    const CMat2 g = su2_from_axis_angle(axis, 1.1);
    const CurveSpec t = apply_automorphism(s, {g, 1.0});
    const Mat3 M = isotropic_action(g).real();
    for (const Complex z : {a, Complex(std::sqrt(0.5)), Complex(-std::sqrt(0.5))}) {
        const auto p = end_period(at(s, {Chart::U, z}, 0), 0).p;
        const Complex gz = (g(0, 0) * z + g(0, 1)) / (g(1, 0) * z + g(1, 1));
        const SpherePoint loc = std::abs(gz) <= 1.0 ? SpherePoint{Chart::U, gz} : SpherePoint{Chart::V, 1.0 / gz};
        const auto q = end_period(at(t, loc, 0), 0).p;
        CHECK((q - M * p).norm() < 1e-8 * (1.0 + p.norm()));
    }
}

TEST_CASE("contour radius guard")
{
    const CurveSpec s = graph({0.0, -0.5, 1.0});
    const auto b = branch_local_data(s, {Chart::U, 0.0}).front();
    const auto d = laurent_coeffs(s, {Chart::U, 0.0}, b, 1);
    CHECK(d.radius == doctest::Approx(0.1));
    try {
        laurent_coeffs(s, {Chart::U, 0.0}, b, 1, 0.6);
        FAIL("expected ContourTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ContourTooLarge);
    }
    CHECK_NOTHROW(laurent_coeffs(s, {Chart::U, 0.0}, b, 1, 0.3));
}

TEST_CASE("Costa census of ends")
{
    const auto all = classify_zero_section(costa1());
    int finite = 0, planar = 0, catenoid = 0, spin = 0;
    for (const auto& c : all) {
        if (c.cls.kind == BranchKind::FiniteFlat) {
            ++finite;
            continue;
        }
        REQUIRE(c.cls.kind == BranchKind::FlatEnd);
        spin += c.cls.spin;
        REQUIRE(c.cls.period.has_value());
        CHECK(c.cls.period->norm() < 1e-8);
        if (*c.cls.end_type == EndType::Planar)
            ++planar;
        if (*c.cls.end_type == EndType::Catenoid)
            ++catenoid;
    }
    CHECK(finite == 4);
    CHECK(planar == 1);
    CHECK(catenoid == 2);
    CHECK(spin == 3);
}
