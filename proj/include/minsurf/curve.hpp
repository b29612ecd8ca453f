#pragma once

#include "minsurf/bundle.hpp"
#include "minsurf/curve_spec.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace minsurf {

/// One local component of C at a point of the zero section. In the
/// local parameter z the branch reads u - u0 = u_lead z^k + ..., q =
/// q_lead z^l + ... (chart V coordinates for the point at infinity).
struct BranchLocal {
    int k = 1;
    int l = 1;
    Complex puiseux_u_lead{1.0, 0.0};
    Complex puiseux_q_lead{1.0, 0.0};
};

struct ZeroSectionPoint {
    SpherePoint location;
    int total_multiplicity = 0;
    std::vector<BranchLocal> branches;
};

/// Parses the curve-spec JSON document
///   {"d": 2, "coeffs": [[[re, im], ...], ...], "name": "..."}
/// (coefficient lists for f_0 .. f_d, ascending powers of u) and normalizes.
/// Throws MalformedInput, NonConstantLeading, DegreeBoundViolated.
CurveSpec parse_and_normalize(std::string_view json_text);

/// Scales so that f_d = -1 and checks deg f_j <= 4(d - j).
CurveSpec normalize(CurveSpec raw);

/// Serializes a spec in the same format parse_and_normalize reads.
std::string to_json_text(const CurveSpec& spec);

enum class Verdict { SmoothImmersion, NotImmersed };

// A point off the zero section where C is singular or tangent to the fiber.
struct CriticalPoint {
    SpherePoint u;
    Complex q;
    std::vector<int> branch_k;
};

struct FlatPointViolation {
    SpherePoint location;
    BranchLocal branch;
};

struct ValidationReport {
    bool contained_in_q = true;    // (a), structural after normalization
    bool reduced = true;           // f has no repeated factor
    bool transversal = true;       // (b)
    bool flat_points_ok = true;    // (c)
    std::vector<CriticalPoint> critical_points;        // every f = f_q = 0 point with q != 0
    std::vector<CriticalPoint> transversality_violations;
    std::vector<FlatPointViolation> flat_point_violations;
    std::vector<ZeroSectionPoint> zero_section;
    Verdict verdict = Verdict::SmoothImmersion;
};

/// Checks conditions (a)-(c): containment, smoothness and transversality to
/// the fibers off the zero section, and l >= k - 1 on the zero section.
ValidationReport validate(const CurveSpec& spec, double tol = 1e-8);

/// Roots of f_0 plus the point at infinity when deg f_0 < 4d, each with its
/// branches. Multiplicities sum to 4d.
std::vector<ZeroSectionPoint> zero_section_points(const CurveSpec& spec, double tol = 1e-8);

/// Branches of C at a zero-section point by Newton-Puiseux. Throws
/// DegenerateBranch when C contains the fiber or the zero section there.
std::vector<BranchLocal> branch_local_data(const CurveSpec& spec, const SpherePoint& location, double tol = 1e-8);

/// Branches of C at an arbitrary point (u0, q0) of the curve in chart U.
std::vector<BranchLocal> branches_at(const CurveSpec& spec, Complex u0, Complex q0, double tol = 1e-8);

/// Res_q(f, df/dq) as a polynomial in u.
PolyU discriminant(const CurveSpec& spec);

/// Finite u where the fiber polynomial has a repeated root, deduplicated.
std::vector<Complex> discriminant_points(const CurveSpec& spec);

/// Zero-section points and branch points of the projection to the sphere:
/// distinct roots of f_0, finite discriminant roots, and the point at infinity
/// when C meets the zero section or branches there.
std::vector<SpherePoint> special_points(const CurveSpec& spec);

/// Invariance under A: (u, q) -> (-1/conj(u), conj(q)/conj(u)^4), tested on
/// sample points of C.
bool meeks_symmetric(const CurveSpec& spec, double tol = 1e-8);

}  // namespace minsurf
