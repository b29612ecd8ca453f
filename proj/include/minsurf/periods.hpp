#pragma once

#include "minsurf/bundle.hpp"
#include "minsurf/curve.hpp"
#include "minsurf/ends.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minsurf {

/// A closed path on the sphere from the base point: out along a straight
/// stem, once counterclockwise around center, back along the stem.
struct Lasso {
    Complex center;
    double radius = 0.0;
    std::vector<SpherePoint> path;
};

/// One lasso lifted from a sheet over the base point.
struct LassoLift {
    int lasso = 0;
    int sheet = 0;
    int end_sheet = 0;
    CVec3 integral = CVec3::Zero();
};

/// A closed 1-chain: integer multiplicities of lasso lifts.
struct HomologyCycle {
    std::vector<int> multiplicity;  // indexed like HomologyData::lifts
    CVec3 period = CVec3::Zero();
    std::string description;
};

struct HomologyData {
    SpherePoint base;
    std::vector<Complex> sheets;  // q over the base
    std::vector<Lasso> lassos;
    std::vector<LassoLift> lifts;
    std::vector<HomologyCycle> cycles;
};

/// Generators for the periods of closed loops on C minus its ends. For d = 1
/// one lasso per finite zero of f_0. For d > 1, lassos around every finite
/// special point, lifted to every sheet; the cycles of the resulting sheet
/// graph are reduced to a Z-basis of their complex periods (nonzero only).
/// Tracker and integration errors propagate.
HomologyData homology_loops(const CurveSpec& spec, double tol = 1e-10);

struct PeriodGroup {
    std::vector<CVec3> complex_generators;
    std::vector<Vec3> real_generators;
    std::vector<std::string> provenance;
    std::optional<double> closed_form_deviation;  // d = 1, simple zeros
};

PeriodGroup period_group(const CurveSpec& spec, double tol = 1e-10);
PeriodGroup period_group(const HomologyData& h);

/// 4 pi Im((1/g(a)) (1 - a^2, i (1 + a^2), 2a)) with g = f_0 / (u - a).
/// Throws NotSimpleRoot.
Vec3 section_period_closed_form(const PolyU& f0, Complex a);

enum class LatticeVerdict { Trivial, Lattice, LikelyDense, Inconclusive };
const char* to_string(LatticeVerdict v);

struct LatticeOptions {
    double height = 1e4;
    double tol = 1e-8;
};

struct LatticeAnalysis {
    LatticeVerdict verdict = LatticeVerdict::Trivial;
    int rank = 0;
    std::vector<Vec3> basis;
    std::vector<std::vector<long long>> relations;  // integer relations among real generators
    int imaginary_rank = 0;
};

LatticeAnalysis lattice_analysis(const PeriodGroup& group, const LatticeOptions& opt = {});

struct FlatPointEntry {
    SpherePoint location;
    int k = 0;
    int l = 0;
};

struct TopologyReport {
    int d = 0;
    std::vector<FlatPointEntry> flat_points;
    std::vector<ClassifiedBranch> ends;
    int r = 0;
    int s = 0;
    int genus = 0;
    int genus_rh = 0;
    int euler_char = 0;
    double expected_total_curvature = 0.0;
    double kchi_total_curvature = 0.0;  // 2 pi (chi - s), equal to the above when P = {0}
};

/// Census of branches, genus from the end count and from Riemann-Hurwitz.
/// Throws InconsistentCensus when they disagree.
TopologyReport topology_report(const CurveSpec& spec, double tol = 1e-8);

}  // namespace minsurf
