#pragma once

#include "minsurf/bundle.hpp"
#include "minsurf/curve_spec.hpp"

#include <vector>

namespace minsurf {

/// A continuous lift of a path on the sphere to C. Each sample carries its
/// own chart: the tracker moves to chart V when |u| > 2 and back when |v| > 2.
/// Consecutive samples share a chart or are related by the chart transfer.
struct LiftedPath {
    std::vector<ChartPoint> samples;

    std::size_t size() const { return samples.size(); }
    const ChartPoint& front() const { return samples.front(); }
    const ChartPoint& back() const { return samples.back(); }
};

struct Monodromy {
    SpherePoint base;
    std::vector<Complex> sheets;               // fiber roots over base, in base chart
    std::vector<int> sheet_permutation;        // sheet i ends on sheet_permutation[i]
    std::vector<int> cycle_length_per_sheet;
};

struct ClosedLoop {
    LiftedPath path;
    int traversals = 1;
};

struct TrackerOptions {
    double tol = 1e-10;              // residual bound relative to the magnitude of f
    double branch_threshold = 1e-6;  // NearBranchPoint when |f_q| < this * scale
    double max_step = 0.05;          // largest step in the chart coordinate
    double min_step = 1e-12;
};

/// Same point expressed in the given chart; throws AtChartOrigin when the
/// point is the origin of the other chart.
Complex coordinate_in(const SpherePoint& p, Chart chart);

/// Roots of the fiber polynomial over p, in p's chart, sorted by real then
/// imaginary part.
std::vector<Complex> sheets_at(const CurveSpec& spec, const SpherePoint& p);

/// Continues q along the polyline through the points of path (each segment
/// straight in the chart of its first point), starting from q_start given in
/// the chart of path[0].
/// Throws NearBranchPoint, StepCollapse, InvalidParams (q_start off the curve).
LiftedPath lift_path(const CurveSpec& spec, const std::vector<SpherePoint>& path, Complex q_start,
                     const TrackerOptions& opt = {});

/// Repeats the closed loop until the starting sheet recurs.
ClosedLoop close_loop(const CurveSpec& spec, const std::vector<SpherePoint>& loop, Complex q_start,
                      const TrackerOptions& opt = {});

/// Sheet permutation of a closed loop based at loop[0].
Monodromy monodromy(const CurveSpec& spec, const std::vector<SpherePoint>& loop, const TrackerOptions& opt = {});

/// Samples a circle of the given radius around center (in center's chart),
/// counterclockwise, starting and ending at angle phase.
std::vector<SpherePoint> circle_path(const SpherePoint& center, double radius, int n, double phase = 0.0);

}  // namespace minsurf
