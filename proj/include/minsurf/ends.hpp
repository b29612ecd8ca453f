#pragma once

#include "minsurf/bundle.hpp"
#include "minsurf/curve.hpp"

#include <optional>
#include <vector>

namespace minsurf {

enum class BranchKind { FiniteFlat, FlatEnd, Singular };
enum class EndType { Planar, Catenoid, Strip };

const char* to_string(BranchKind k);
const char* to_string(EndType t);

struct BranchClass {
    BranchKind kind = BranchKind::FiniteFlat;
    int spin = 0;                       // l - k, ends only
    std::optional<EndType> end_type;    // ends only
    std::optional<Vec3> period;         // ends only
};

/// Kind and spin from (k, l): l = k - 1 finite flat point, l >= k end.
BranchClass classify_branch(const BranchLocal& b);

/// Coefficients c_0..c_n of the pullback sum_i z^(i - l + k - 1) c_i dz of
/// Omega along a branch, in the frame where the branch sits over e3.
struct LaurentData {
    SpherePoint location;
    int k = 1;
    int l = 1;
    double radius = 0.0;                 // contour radius in z
    std::vector<CVec3> coefficients;     // frame coefficients
    Mat3 frame_to_global = Mat3::Identity();

    CVec3 global(int i) const { return frame_to_global.cast<Complex>() * coefficients.at(static_cast<std::size_t>(i)); }
};

/// Rotates the branch over the chart-U origin (u = z^k there), follows q
/// around |z| = radius and evaluates the coefficients by the trapezoid rule.
/// Default radius: half the distance to the nearest other special point in
/// z, capped at max(0.1, (1e-3/|q_lead|)^(1/l)). Throws ContourTooLarge, InvalidParams (branch not found).
LaurentData laurent_coeffs(const CurveSpec& spec, const SpherePoint& location, const BranchLocal& branch, int n,
                           std::optional<double> radius = std::nullopt);

struct EndPeriod {
    Vec3 p = Vec3::Zero();
    CVec3 complex_period = CVec3::Zero();
};

/// complex_period = 2 pi i c_spin in global coordinates, p its real part.
/// Throws InsufficientCoefficients.
EndPeriod end_period(const LaurentData& data, int spin);

/// STRIP for spin 0; CATENOID when the frame coefficients c_i, 0 < i < spin,
/// have vanishing third component and Re(c_spin)_3 != 0; PLANAR otherwise.
/// Throws InsufficientCoefficients.
EndType end_type(const LaurentData& data, int spin);

struct ClassifiedBranch {
    SpherePoint location;
    BranchLocal branch;
    BranchClass cls;
};

/// Every branch over the zero section with kind, spin, end type and period.
std::vector<ClassifiedBranch> classify_zero_section(const CurveSpec& spec, double tol = 1e-8);

}  // namespace minsurf
