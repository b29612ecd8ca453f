#include "minsurf/ends.hpp"

#include "minsurf/error.hpp"
#include "minsurf/tracker.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace minsurf {

namespace {

constexpr int kNodes = 256;

// Moebius matrix taking the location's chart coordinate to the origin of chart U.
CMat2 to_origin(const SpherePoint& loc, CMat2& g)
{
    CMat2 swap;
    swap << 0.0, 1.0, 1.0, 0.0;
    if (loc.chart == Chart::U) {
        g = rotation_to_origin(loc.coord);
        return g;
    }
    g = loc.coord == 0.0 ? rotation_from_infinity() : rotation_to_origin(1.0 / loc.coord);
    return g * swap;
}

double third_tol(const CVec3& c, const CVec3& c0) { return 1e-8 * c.norm() + 1e-13 * c0.norm(); }

}  // namespace

const char* to_string(BranchKind k)
{
    switch (k) {
    case BranchKind::FiniteFlat: return "FINITE_FLAT";
    case BranchKind::FlatEnd: return "FLAT_END";
    case BranchKind::Singular: return "SINGULAR";
    }
    return "?";
}

const char* to_string(EndType t)
{
    switch (t) {
    case EndType::Planar: return "PLANAR";
    case EndType::Catenoid: return "CATENOID";
    case EndType::Strip: return "STRIP";
    }
    return "?";
}

BranchClass classify_branch(const BranchLocal& b)
{
    BranchClass c;
    if (b.l >= b.k) {
        c.kind = BranchKind::FlatEnd;
        c.spin = b.l - b.k;
    } else if (b.l == b.k - 1) {
        c.kind = BranchKind::FiniteFlat;
    } else {
        c.kind = BranchKind::Singular;
    }
    return c;
}

LaurentData laurent_coeffs(const CurveSpec& spec, const SpherePoint& location, const BranchLocal& branch, int n,
                           std::optional<double> radius)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidParams, "laurent_coeffs: n must be nonnegative");
    const int k = branch.k, l = branch.l;
    CMat2 g;
    const CMat2 G = to_origin(location, g);
    const CurveSpec rotated = apply_automorphism(spec, {g, 1.0});

    // Leading terms of the branch after the rotation, up to reparametrization.
    const Complex den = G(1, 0) * location.coord + G(1, 1);
    const Complex u_lead = G.determinant() * branch.puiseux_u_lead / (den * den);
    const Complex q_lead = branch.puiseux_q_lead / std::pow(den, 4);
    const Complex want = std::pow(q_lead, k) / std::pow(u_lead, l);

    const BranchLocal* match = nullptr;
    double best = std::numeric_limits<double>::infinity();
    const auto candidates = branch_local_data(rotated, {Chart::U, 0.0});
    for (const auto& c : candidates) {
        if (c.k != k || c.l != l)
            continue;
        const double score = std::abs(std::pow(c.puiseux_q_lead, k) / std::pow(c.puiseux_u_lead, l) - want) / std::abs(want);
        if (score < best) {
            best = score;
            match = &c;
        }
    }
    if (!match || best > 1e-4)
        throw Error(ErrorCode::InvalidParams, "laurent_coeffs: branch not found at the location");
    const Complex cu = match->puiseux_u_lead, cq = match->puiseux_q_lead;

    double delta = std::numeric_limits<double>::infinity();
    for (const auto& p : special_points(rotated)) {
        double r;
        if (p.chart == Chart::U)
            r = std::abs(p.coord);
        else
            r = p.coord == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(p.coord);
        if (r > 1e-8)
            delta = std::min(delta, r);
    }
    const double rho_max = std::pow(delta / std::abs(cu), 1.0 / k);
    // large l: keep q on the contour well above noise
    double rho = std::min(std::max(0.1, std::pow(1e-3 / std::abs(cq), 1.0 / l)), 0.5 * rho_max);
    if (radius) {
        if (!(*radius > 0.0) || *radius >= rho_max)
            throw Error(ErrorCode::ContourTooLarge, "laurent_coeffs: contour meets another special point");
        rho = *radius;
    }

    std::vector<Complex> z(kNodes + 1), qs(kNodes + 1);
    for (int j = 0; j <= kNodes; ++j)
        z[static_cast<std::size_t>(j)] = std::polar(rho, 2.0 * std::numbers::pi * j / kNodes);
    auto u_at = [&](int j) { return cu * std::pow(z[static_cast<std::size_t>(j)], k); };
    {
        const auto sh = sheets_at(rotated, {Chart::U, u_at(0)});
        const Complex guess = cq * std::pow(rho, l);
        Complex q0 = sh.front();
        for (const auto& s : sh)
            if (std::abs(s - guess) < std::abs(q0 - guess))
                q0 = s;
        qs[0] = q0;
    }
    try {
        for (int j = 0; j < kNodes; ++j) {
            const LiftedPath p = lift_path(rotated, {{Chart::U, u_at(j)}, {Chart::U, u_at(j + 1)}}, qs[static_cast<std::size_t>(j)]);
            const ChartPoint e = p.back().chart == Chart::U ? p.back() : chart_transfer(p.back());
            qs[static_cast<std::size_t>(j) + 1] = e.second;
        }
    } catch (const Error&) {
        throw Error(ErrorCode::ContourTooLarge, "laurent_coeffs: could not follow the branch around the contour");
    }
    if (std::abs(qs[kNodes] - qs[0]) > 1e-6 * std::abs(qs[0]))
        throw Error(ErrorCode::ContourTooLarge, "laurent_coeffs: branch does not close up on the contour");

    LaurentData out;
    out.location = location;
    out.k = k;
    out.l = l;
    out.radius = rho;
    out.coefficients.assign(static_cast<std::size_t>(n) + 1, CVec3::Zero());
    for (int j = 0; j < kNodes; ++j) {
        const Complex zj = z[static_cast<std::size_t>(j)];
        const CVec3 h = omega_density(u_at(j), qs[static_cast<std::size_t>(j)]).density *
                        (static_cast<double>(k) * cu * std::pow(zj, k - 1));
        for (int i = 0; i <= n; ++i)
            out.coefficients[static_cast<std::size_t>(i)] += h * std::pow(zj, l - k + 1 - i);
    }
    for (auto& c : out.coefficients)
        c /= static_cast<double>(kNodes);
    out.frame_to_global = isotropic_action(g).inverse().real();
    return out;
}

EndPeriod end_period(const LaurentData& data, int spin)
{
    if (spin < 0 || spin >= static_cast<int>(data.coefficients.size()))
        throw Error(ErrorCode::InsufficientCoefficients, "end_period: coefficient c_spin not available");
    EndPeriod p;
    p.complex_period = Complex(0.0, 2.0 * std::numbers::pi) * data.global(spin);
    p.p = p.complex_period.real();
    return p;
}

EndType end_type(const LaurentData& data, int spin)
{
    if (spin < 0 || spin >= static_cast<int>(data.coefficients.size()))
        throw Error(ErrorCode::InsufficientCoefficients, "end_type: coefficients through c_spin not available");
    if (spin == 0)
        return EndType::Strip;
    const auto& c = data.coefficients;
    for (int i = 1; i < spin; ++i)
        if (std::abs(c[static_cast<std::size_t>(i)](2)) > third_tol(c[static_cast<std::size_t>(i)], c[0]))
            return EndType::Planar;
    const CVec3& cs = c[static_cast<std::size_t>(spin)];
    if (std::abs(cs(2).real()) > third_tol(cs, c[0]))
        return EndType::Catenoid;
    return EndType::Planar;
}

std::vector<ClassifiedBranch> classify_zero_section(const CurveSpec& spec, double tol)
{
    std::vector<ClassifiedBranch> out;
    for (const auto& p : zero_section_points(spec, tol))
        for (const auto& b : p.branches) {
            ClassifiedBranch cb{p.location, b, classify_branch(b)};
            if (cb.cls.kind == BranchKind::FlatEnd) {
                const LaurentData data = laurent_coeffs(spec, p.location, b, cb.cls.spin);
                cb.cls.end_type = end_type(data, cb.cls.spin);
                cb.cls.period = end_period(data, cb.cls.spin).p;
            }
            out.push_back(std::move(cb));
        }
    return out;
}

}  // namespace minsurf
