#pragma once

#include "minsurf/bundle.hpp"
#include "minsurf/curve_spec.hpp"
#include "minsurf/tracker.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace minsurf {

struct IntegrationResult {
    CVec3 value = CVec3::Zero();
    double error_estimate = 0.0;
};

/// Integral of Omega along the lifted path. Each pair of consecutive samples
/// is joined by a straight segment in the chart of the first one, with q
/// followed by Newton's method from Hermite interpolation. Adaptive
/// Gauss-Kronrod (7/15) with bisection. The error estimate is compared
/// against tol * (1 + sum of segment integral norms).
/// Throws PoleOnPath (q reaches 0), ToleranceNotMet.
IntegrationResult integrate_omega(const CurveSpec& spec, const LiftedPath& path, double tol = 1e-10);

struct MeshVertex {
    Vec3 position;           // Re(complex_position)
    CVec3 complex_position;  // point of the isotropic curve
    Vec3 normal;             // gauss_point(u)
    ChartPoint param;        // (u, q) or (v, r)
    int sheet = 0;
};

struct SurfaceMesh {
    std::vector<MeshVertex> vertices;
    std::vector<std::array<int, 3>> faces;
    SpherePoint base;
    std::vector<SpherePoint> exclusion_centers;
    double exclusion_radius = 0.0;
    int sheet_count = 0;
    int grid_nodes = 0;
    int skipped_cells = 0;
};

struct MeshConfig {
    int resolution = 24;            // latitude bands; longitude uses twice as many
    double exclusion_radius = 0.05; // disks around zero-section and branch u-values
    std::optional<SpherePoint> base;
    double tol = 1e-10;
};

/// Lifts a latitude/longitude grid on the u-sphere (chart U for |u| <= 1,
/// chart V beyond) to every sheet, integrates Omega along grid edges and
/// accumulates complex positions over a spanning tree rooted at the base
/// point. Faces connect grid neighbours on the same sheet.
/// Throws DisconnectedDomain when the exclusions split the grid.
SurfaceMesh reconstruct_mesh(const CurveSpec& spec, const MeshConfig& config = {});

/// Integral of K dA over all sheets: sum over q-roots of K dA_factor on a
/// Gauss-Legendre (in cos of the polar angle) by trapezoid (azimuth) grid.
double total_curvature(const CurveSpec& spec, int n_polar = 64, int n_azimuth = 128);

/// Default mesh base: the grid node maximizing |f_0(u)| / (1 + |u|^2)^(2d).
SpherePoint default_base_point(const CurveSpec& spec, int resolution);

void write_obj(const SurfaceMesh& mesh, std::ostream& out);
void write_ply(const SurfaceMesh& mesh, std::ostream& out);

}  // namespace minsurf
