#pragma once

#include "minsurf/curve_spec.hpp"
#include "minsurf/poly.hpp"

#include <Eigen/Dense>

namespace minsurf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Matrix<Complex, 3, 1>;
using CMat3 = Eigen::Matrix<Complex, 3, 3>;
using CMat2 = Eigen::Matrix<Complex, 2, 2>;

// Chart U covers the sphere minus -e3 with coordinates (u, q). Chart V covers
// the sphere minus e3 with (v, r) = (1/u, q/u^4).
enum class Chart { U, V };

struct ChartPoint {
    Chart chart = Chart::U;
    Complex first;   // u or v
    Complex second;  // q or r
};

// A point of the u-sphere in one of the two charts. The point over -e3 is
// {Chart::V, 0}.
struct SpherePoint {
    Chart chart = Chart::U;
    Complex coord;

    static SpherePoint infinity() { return {Chart::V, 0.0}; }
    bool is_infinity() const { return chart == Chart::V && coord == 0.0; }
};

// Omega = density * d(first) at a point of Q minus the zero section.
struct FormValue {
    CVec3 density;
};

struct Automorphism {
    CMat2 moebius = CMat2::Identity();  // (alpha, beta; gamma, delta), det 1
    Complex fiber_scale{1.0, 0.0};

    static Automorphism identity() { return {}; }
};

struct CurvatureArea {
    double K = 0.0;
    double dA_factor = 0.0;
};

/// Density of Omega in chart U: (-2/q) (1 - u^2, i (1 + u^2), 2u).
/// Throws OnZeroSection for q == 0.
FormValue omega_density(Complex u, Complex q);

/// Density of Omega with respect to d(first) in the point's own chart. In
/// chart V this is diag(1, -1, -1) applied to the chart-U expression in (v, r).
FormValue omega_density(const ChartPoint& p);

/// (u, q) -> (1/u, q/u^4), mapping U to V and back. Throws AtChartOrigin
/// when first == 0.
ChartPoint chart_transfer(const ChartPoint& p);

/// Stereographic image (1 + |u|^2)^-1 (-2 u1, -2 u2, 1 - |u|^2) on the unit
/// sphere; u = 0 gives e3.
Vec3 gauss_point(Complex u);
Vec3 gauss_point_at_infinity();
Vec3 gauss_point(Chart chart, Complex coordinate);

/// Gauss curvature K = -|q|^2 / (1 + |u|^2)^4 and the area density
/// 4 (1 + |u|^2)^2 / |q|^2 with respect to Lebesgue measure in u. The same
/// formulas hold verbatim in chart V. Throws OnZeroSection for q == 0.
CurvatureArea curvature_area_density(Complex u, Complex q);

/// K alone; zero on the zero section.
double gauss_curvature(Complex u, Complex q);

/// The linear map M of C^3 induced by the Moebius matrix g: the pullback of
/// Omega under (u, q) -> (g u, q / (gamma u + delta)^4) equals M Omega.
/// For g in SU(2), M is a real rotation.
CMat3 isotropic_action(const CMat2& g);

/// Image of a chart-U point under the automorphism,
/// (u, q) -> ((alpha u + beta)/(gamma u + delta), c q / (gamma u + delta)^4).
ChartPoint transform_point(const Automorphism& a, Complex u, Complex q);

/// Transports the curve by the automorphism (same formula as
/// transform_point), returning the normalized spec of the image curve.
/// Throws DegenerateMatrix when det != 1 within 1e-12 or c == 0.
CurveSpec apply_automorphism(const CurveSpec& spec, const Automorphism& a);

/// SU(2) element moving u0 to the origin of chart U.
CMat2 rotation_to_origin(Complex u0);
/// SU(2) element moving the point over -e3 to the origin of chart U. Its
/// action is the chart transfer.
CMat2 rotation_from_infinity();

/// SU(2) lift of the rotation about the unit axis n by angle phi.
CMat2 su2_from_axis_angle(const Vec3& axis, double angle);

}  // namespace minsurf
