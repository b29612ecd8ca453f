#include "minsurf/bundle.hpp"

#include "minsurf/error.hpp"

#include <cmath>

namespace minsurf {

namespace {

CVec3 isotropic_vector(Complex u)
{
    return CVec3(1.0 - u * u, I * (1.0 + u * u), 2.0 * u);
}

// p as a binary form of degree n evaluated on linear polynomials:
// sum_i p_i X^i Y^(n-i).
PolyU binary_form(const PolyU& p, int n, const PolyU& x, const PolyU& y)
{
    std::vector<PolyU> xp{PolyU::constant(1.0)};
    std::vector<PolyU> yp{PolyU::constant(1.0)};
    for (int i = 1; i <= n; ++i) {
        xp.push_back(xp.back() * x);
        yp.push_back(yp.back() * y);
    }
    PolyU out;
    for (int i = 0; i <= p.degree(); ++i)
        out += xp[i] * yp[n - i] * p[i];
    return out;
}

}  // namespace

FormValue omega_density(Complex u, Complex q)
{
    if (q == 0.0)
        throw Error(ErrorCode::OnZeroSection, "omega_density: q = 0 is a pole of Omega");
    return {(-2.0 / q) * isotropic_vector(u)};
}

FormValue omega_density(const ChartPoint& p)
{
    FormValue v = omega_density(p.first, p.second);
    if (p.chart == Chart::V) {
        v.density(1) = -v.density(1);
        v.density(2) = -v.density(2);
    }
    return v;
}

ChartPoint chart_transfer(const ChartPoint& p)
{
    if (p.first == 0.0)
        throw Error(ErrorCode::AtChartOrigin, "chart_transfer: first coordinate is 0");
    const Complex inv = 1.0 / p.first;
    const Complex inv2 = inv * inv;
    return {p.chart == Chart::U ? Chart::V : Chart::U, inv, p.second * inv2 * inv2};
}

Vec3 gauss_point(Complex u)
{
    const double u1 = u.real();
    const double u2 = u.imag();
    const double n2 = u1 * u1 + u2 * u2;
    if (!std::isfinite(n2))
        return gauss_point_at_infinity();
    return Vec3(-2.0 * u1, -2.0 * u2, 1.0 - n2) / (1.0 + n2);
}

Vec3 gauss_point_at_infinity() { return Vec3(0.0, 0.0, -1.0); }

Vec3 gauss_point(Chart chart, Complex coordinate)
{
    if (chart == Chart::U)
        return gauss_point(coordinate);
    Vec3 n = gauss_point(coordinate);
    n(1) = -n(1);
    n(2) = -n(2);
    return n;
}

CurvatureArea curvature_area_density(Complex u, Complex q)
{
    if (q == 0.0)
        throw Error(ErrorCode::OnZeroSection, "curvature_area_density: area density has a pole at q = 0");
    const double w = 1.0 + std::norm(u);
    const double q2 = std::norm(q);
    return {-q2 / (w * w * w * w), 4.0 * w * w / q2};
}

double gauss_curvature(Complex u, Complex q)
{
    const double w = 1.0 + std::norm(u);
    return -std::norm(q) / (w * w * w * w);
}

CMat3 isotropic_action(const CMat2& g)
{
    const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    // Basis of the quadratic vector x(u) = e0 + u e1 + u^2 e2.
    CMat3 e;
    e.col(0) = CVec3(1.0, I, 0.0);
    e.col(1) = CVec3(0.0, 0.0, 2.0);
    e.col(2) = CVec3(-1.0, I, 0.0);
    // (c u + d)^2 x(g u) expanded in powers of u.
    CMat3 coeff;
    coeff.col(0) = CVec3(d * d, b * d, b * b);
    coeff.col(1) = CVec3(2.0 * c * d, a * d + b * c, 2.0 * a * b);
    coeff.col(2) = CVec3(c * c, a * c, a * a);
    return e * coeff * e.inverse();
}

ChartPoint transform_point(const Automorphism& a, Complex u, Complex q)
{
    const CMat2& g = a.moebius;
    const Complex den = g(1, 0) * u + g(1, 1);
    const Complex den2 = den * den;
    return {Chart::U, (g(0, 0) * u + g(0, 1)) / den, a.fiber_scale * q / (den2 * den2)};
}

CurveSpec apply_automorphism(const CurveSpec& spec, const Automorphism& a)
{
    const CMat2& g = a.moebius;
    if (std::abs(g.determinant() - 1.0) > 1e-12)
        throw Error(ErrorCode::DegenerateMatrix, "apply_automorphism: Moebius matrix must have unit determinant");
    if (a.fiber_scale == 0.0)
        throw Error(ErrorCode::DegenerateMatrix, "apply_automorphism: fiber scale must be nonzero");

    // Inverse map: u = (delta u' - beta)/(alpha - gamma u'),
    // gamma u + delta = 1/(alpha - gamma u').
    const PolyU x{-g(0, 1), g(1, 1)};
    const PolyU y{g(0, 0), -g(1, 0)};

    CurveSpec out;
    out.d = spec.d;
    out.name = spec.name;
    out.coeffs.resize(static_cast<std::size_t>(spec.d) + 1);
    Complex cpow = 1.0;
    for (int j = spec.d; j >= 0; --j) {
        out.coeffs[static_cast<std::size_t>(j)] = binary_form(spec.f(j), 4 * (spec.d - j), x, y) * cpow;
        cpow *= a.fiber_scale;
    }
    return out;
}

CMat2 rotation_to_origin(Complex u0)
{
    const double n = std::sqrt(1.0 + std::norm(u0));
    CMat2 g;
    g << 1.0 / n, -u0 / n, std::conj(u0) / n, 1.0 / n;
    return g;
}

CMat2 rotation_from_infinity()
{
    CMat2 g;
    g << 0.0, I, I, 0.0;
    return g;
}

CMat2 su2_from_axis_angle(const Vec3& axis, double angle)
{
    const Vec3 n = axis.normalized();
    // diag(e^{i phi/2}, e^{-i phi/2}) rotates about e3; conjugate by an
    // element carrying the axis to e3.
    CMat2 h;
    if (1.0 + n(2) < 1e-12)
        h = rotation_from_infinity();
    else
        h = rotation_to_origin(-Complex(n(0), n(1)) / (1.0 + n(2)));
    CMat2 z = CMat2::Zero();
    z(0, 0) = std::polar(1.0, 0.5 * angle);
    z(1, 1) = std::polar(1.0, -0.5 * angle);
    return h.inverse() * z * h;
}

}  // namespace minsurf
