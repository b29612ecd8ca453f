#include "minsurf/curve.hpp"

#include "bipoly.hpp"
#include "minsurf/error.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace minsurf {

namespace {

using json = nlohmann::json;

Complex parse_complex(const json& v)
{
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw Error(ErrorCode::MalformedInput, "coefficient must be a number or an [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

struct Derivs {
    Complex f, fu, fq, fuu, fuq, fqq;
};

Derivs derivs(const CurveSpec& spec, Complex u, Complex q)
{
    Derivs r{};
    Complex qp = 1.0;   // q^j
    Complex qp1 = 0.0;  // j q^(j-1)
    Complex qp2 = 0.0;  // j (j-1) q^(j-2)
    for (int j = 0; j <= spec.d; ++j) {
        const PolyU& p = spec.f(j);
        const PolyU dp = p.derivative();
        const Complex a = p(u), b = dp(u), c = dp.derivative()(u);
        r.f += a * qp;
        r.fu += b * qp;
        r.fuu += c * qp;
        r.fq += a * qp1;
        r.fuq += b * qp1;
        r.fqq += a * qp2;
        qp2 = qp2 * q + 2.0 * qp1;
        qp1 = qp1 * q + qp;
        qp *= q;
    }
    return r;
}

// Newton on (f, f_q), or on (f_u, f_q) near singular points of C.
void refine_critical(const CurveSpec& spec, Complex& u, Complex& q)
{
    for (int it = 0; it < 40; ++it) {
        const Derivs d = derivs(spec, u, q);
        const double mag = spec.magnitude(u, q) + 1e-300;
        Complex a11, a12, a21, a22, r1, r2;
        if (std::abs(d.fu) < 1e-6 * mag) {
            a11 = d.fuu, a12 = d.fuq, r1 = d.fu;
        } else {
            a11 = d.fu, a12 = d.fq, r1 = d.f;
        }
        a21 = d.fuq, a22 = d.fqq, r2 = d.fq;
        const Complex det = a11 * a22 - a12 * a21;
        if (std::abs(det) == 0.0)
            return;
        const Complex du = (r1 * a22 - r2 * a12) / det;
        const Complex dq = (a11 * r2 - a21 * r1) / det;
        u -= du;
        q -= dq;
        if (std::abs(du) + std::abs(dq) < 1e-15 * (1.0 + std::abs(u) + std::abs(q)))
            return;
    }
}

PolyU discriminant_impl(const CurveSpec& spec)
{
    const int d = spec.d;
    if (d == 1)
        return PolyU::constant(1.0);
    const int n = 2 * d - 1;
    const int npts = 4 * d * (d - 1) + 1;
    std::vector<Complex> vals(static_cast<std::size_t>(npts));
    double hadamard_max = 0.0;
    for (int k = 0; k < npts; ++k) {
        const Complex u = std::polar(1.0, 2.0 * std::numbers::pi * k / npts);
        std::vector<Complex> fc(static_cast<std::size_t>(d) + 1);
        for (int j = 0; j <= d; ++j)
            fc[static_cast<std::size_t>(j)] = spec.f(j)(u);
        Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
        // rows 0..d-2: shifts of f; rows d-1..2d-2: shifts of f_q
        for (int r = 0; r < d - 1; ++r)
            for (int j = 0; j <= d; ++j)
                S(r, r + d - j) = fc[static_cast<std::size_t>(j)];
        for (int r = 0; r < d; ++r)
            for (int j = 1; j <= d; ++j)
                S(d - 1 + r, r + d - j) = static_cast<double>(j) * fc[static_cast<std::size_t>(j)];
        double h = 1.0;
        for (int r = 0; r < n; ++r)
            h *= S.row(r).norm();
        hadamard_max = std::max(hadamard_max, h);
        vals[static_cast<std::size_t>(k)] = S.determinant();
    }
    std::vector<Complex> coeffs(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) {
        Complex acc = 0.0;
        for (int k = 0; k < npts; ++k)
            acc += vals[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * i * k / npts);
        coeffs[static_cast<std::size_t>(i)] = acc / static_cast<double>(npts);
    }
    for (auto& c : coeffs)
        if (std::abs(c) <= 1e-11 * hadamard_max)
            c = 0.0;
    return PolyU(std::move(coeffs));
}

// Groups values closer than rad * (1 + |z|).
std::vector<std::vector<Complex>> clusters(const std::vector<Complex>& zs, double rad)
{
    std::vector<std::vector<Complex>> out;
    std::vector<char> used(zs.size(), 0);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (used[i])
            continue;
        std::vector<Complex> c{zs[i]};
        used[i] = 1;
        for (std::size_t j = i + 1; j < zs.size(); ++j)
            if (!used[j] && std::abs(zs[j] - zs[i]) <= rad * (1.0 + std::abs(zs[i]))) {
                c.push_back(zs[j]);
                used[j] = 1;
            }
        out.push_back(std::move(c));
    }
    return out;
}

// Critical points of the projection off the zero section, in one chart.
std::vector<CriticalPoint> critical_points_in_chart(const CurveSpec& spec, Chart chart, double tol)
{
    std::vector<CriticalPoint> out;
    if (spec.d == 1)
        return out;
    const PolyU R = discriminant_impl(spec);
    if (R.degree() < 1)
        return out;
    std::vector<std::pair<Complex, Complex>> found;
    for (const Root& r : roots(R, 1e-8)) {
        const bool mine = chart == Chart::U ? std::abs(r.value) <= 1.0 + 1e-3 : std::abs(r.value) < 1.0 - 1e-3;
        if (!mine)
            continue;
        std::vector<Complex> qs;
        for (const Root& q : roots(spec.fiber_poly(r.value), 1e-10))
            for (int m = 0; m < q.multiplicity; ++m)
                qs.push_back(q.value);
        for (const auto& c : clusters(qs, 1e-3)) {
            if (c.size() < 2)
                continue;
            Complex u = r.value;
            Complex q = 0.0;
            for (const auto& x : c)
                q += x;
            q /= static_cast<double>(c.size());
            refine_critical(spec, u, q);
            const double scale = spec.coeff_scale();
            if (std::abs(q) <= 1e-6 * std::max(1.0, std::pow(scale, 1.0 / spec.d)))
                continue;
            bool dup = false;
            for (const auto& [fu, fq] : found)
                dup = dup || (std::abs(fu - u) < 1e-6 * (1.0 + std::abs(u)) && std::abs(fq - q) < 1e-6 * (1.0 + std::abs(q)));
            if (dup)
                continue;
            found.emplace_back(u, q);
            CriticalPoint cp{{chart, u}, q, {}};
            for (const auto& b : branches_at(spec, u, q, std::max(tol, 1e-7)))
                cp.branch_k.push_back(b.k);
            out.push_back(std::move(cp));
        }
    }
    return out;
}

}  // namespace

CurveSpec normalize(CurveSpec raw)
{
    if (raw.d < 1)
        throw Error(ErrorCode::MalformedInput, "d must be a positive integer");
    if (static_cast<int>(raw.coeffs.size()) != raw.d + 1)
        throw Error(ErrorCode::MalformedInput, "coeffs must list f_0 .. f_d");
    for (const auto& p : raw.coeffs)
        for (const auto& c : p.coeffs())
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw Error(ErrorCode::MalformedInput, "non-finite coefficient");
    const PolyU& lead = raw.coeffs.back();
    if (lead.is_zero())
        throw Error(ErrorCode::MalformedInput, "leading coefficient f_d vanishes");
    if (lead.degree() > 0)
        throw Error(ErrorCode::NonConstantLeading, "leading coefficient f_d must be a nonzero constant");
    if (raw.coeffs.front().is_zero())
        throw Error(ErrorCode::MalformedInput, "f_0 vanishes identically: the curve contains the zero section");
    for (int j = 0; j < raw.d; ++j)
        if (raw.coeffs[static_cast<std::size_t>(j)].degree() > 4 * (raw.d - j))
            throw Error(ErrorCode::DegreeBoundViolated,
                        "deg f_" + std::to_string(j) + " exceeds " + std::to_string(4 * (raw.d - j)));
    const Complex s = -1.0 / lead[0];
    for (auto& p : raw.coeffs)
        p *= s;
    raw.coeffs.back() = PolyU::constant(-1.0);
    return raw;
}

CurveSpec parse_and_normalize(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("coeffs"))
        throw Error(ErrorCode::MalformedInput, "curve spec needs fields \"d\" and \"coeffs\"");
    if (!doc["d"].is_number_integer())
        throw Error(ErrorCode::MalformedInput, "\"d\" must be an integer");
    if (!doc["coeffs"].is_array())
        throw Error(ErrorCode::MalformedInput, "\"coeffs\" must be a list");
    CurveSpec raw;
    raw.d = doc["d"].get<int>();
    for (const auto& fj : doc["coeffs"]) {
        if (!fj.is_array())
            throw Error(ErrorCode::MalformedInput, "each f_j must be a list of coefficients");
        std::vector<Complex> c;
        for (const auto& x : fj)
            c.push_back(parse_complex(x));
        raw.coeffs.emplace_back(std::move(c));
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            throw Error(ErrorCode::MalformedInput, "\"name\" must be a string");
        raw.name = doc["name"].get<std::string>();
    }
    return normalize(std::move(raw));
}

std::string to_json_text(const CurveSpec& spec)
{
    json doc;
    doc["d"] = spec.d;
    json cs = json::array();
    for (const auto& p : spec.coeffs) {
        json row = json::array();
        for (const auto& c : p.coeffs())
            row.push_back({c.real(), c.imag()});
        cs.push_back(row);
    }
    doc["coeffs"] = cs;
    if (!spec.name.empty())
        doc["name"] = spec.name;
    return doc.dump();
}

std::vector<BranchLocal> branches_at(const CurveSpec& spec, Complex u0, Complex q0, double tol)
{
    const detail::BiPoly F = detail::local_expansion(spec, u0, q0);
    std::vector<BranchLocal> out;
    for (const auto& b : detail::branches_at_origin(F, tol, q0 != 0.0))
        out.push_back({b.k, b.l, b.s_lead, b.t_lead});
    return out;
}

std::vector<BranchLocal> branch_local_data(const CurveSpec& spec, const SpherePoint& location, double tol)
{
    const CurveSpec local = location.chart == Chart::U ? spec : spec.in_opposite_chart();
    const Complex u0 = location.coord;
    const PolyU& f0 = local.f(0);
    const double floor = 1e-4 * f0.max_coeff() * std::pow(std::max(1.0, std::abs(u0)), f0.degree());
    if (std::abs(f0(u0)) > 1e-6 * std::max({f0.magnitude_at(u0), floor, 1e-300}))
        throw Error(ErrorCode::InvalidParams, "branch_local_data: location is not on the zero section");
    return branches_at(local, u0, 0.0, tol);
}

std::vector<ZeroSectionPoint> zero_section_points(const CurveSpec& spec, double tol)
{
    std::vector<ZeroSectionPoint> out;
    const PolyU& f0 = spec.f(0);
    if (f0.degree() >= 1) {
        for (const Root& r : roots(f0, 1e-10)) {
            ZeroSectionPoint p{{Chart::U, r.value}, r.multiplicity, {}};
            p.branches = branch_local_data(spec, p.location, tol);
            out.push_back(std::move(p));
        }
    }
    const int at_inf = 4 * spec.d - f0.degree();
    if (at_inf > 0) {
        ZeroSectionPoint p{SpherePoint::infinity(), at_inf, {}};
        p.branches = branch_local_data(spec, p.location, tol);
        out.push_back(std::move(p));
    }
    for (const auto& p : out) {
        int sum = 0;
        for (const auto& b : p.branches)
            sum += b.l;
        if (sum != p.total_multiplicity)
            throw Error(ErrorCode::DegenerateBranch, "branch intersection numbers do not add up to the multiplicity");
    }
    return out;
}

PolyU discriminant(const CurveSpec& spec) { return discriminant_impl(spec); }

std::vector<Complex> discriminant_points(const CurveSpec& spec)
{
    const PolyU R = discriminant_impl(spec);
    if (R.is_zero())
        throw Error(ErrorCode::DegenerateBranch, "discriminant vanishes identically: the curve is not reduced");
    std::vector<Complex> out;
    if (R.degree() < 1)
        return out;
    for (const Root& r : roots(R, 1e-8))
        out.push_back(r.value);
    return out;
}

ValidationReport validate(const CurveSpec& spec, double tol)
{
    ValidationReport rep;
    if (discriminant_impl(spec).is_zero()) {
        rep.reduced = false;
        rep.transversal = false;
    } else {
        for (Chart ch : {Chart::U, Chart::V}) {
            const CurveSpec local = ch == Chart::U ? spec : spec.in_opposite_chart();
            for (auto& cp : critical_points_in_chart(local, ch, tol)) {
                const bool bad = std::any_of(cp.branch_k.begin(), cp.branch_k.end(), [](int k) { return k > 1; });
                if (bad)
                    rep.transversality_violations.push_back(cp);
                rep.critical_points.push_back(std::move(cp));
            }
        }
        rep.transversal = rep.transversality_violations.empty();
    }
    try {
        rep.zero_section = zero_section_points(spec, tol);
        for (const auto& p : rep.zero_section)
            for (const auto& b : p.branches)
                if (b.l < b.k - 1)
                    rep.flat_point_violations.push_back({p.location, b});
        rep.flat_points_ok = rep.flat_point_violations.empty();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateBranch)
            throw;
        rep.flat_points_ok = false;
    }
    rep.verdict = rep.reduced && rep.transversal && rep.flat_points_ok ? Verdict::SmoothImmersion : Verdict::NotImmersed;
    return rep;
}

std::vector<SpherePoint> special_points(const CurveSpec& spec)
{
    std::vector<SpherePoint> out;
    auto add = [&](Complex u) {
        for (const auto& p : out)
            if (p.chart == Chart::U && std::abs(p.coord - u) <= 1e-9 * (1.0 + std::abs(u)))
                return;
        out.push_back({Chart::U, u});
    };
    if (spec.f(0).degree() >= 1)
        for (const Root& r : roots(spec.f(0), 1e-10))
            add(r.value);
    for (const Complex& u : discriminant_points(spec))
        add(u);
    bool at_inf = 4 * spec.d > spec.f(0).degree();
    if (!at_inf && spec.d > 1) {
        for (const Root& r : roots(spec.in_opposite_chart().fiber_poly(0.0), 1e-10))
            at_inf = at_inf || r.multiplicity > 1;
    }
    if (at_inf)
        out.push_back(SpherePoint::infinity());
    return out;
}

bool meeks_symmetric(const CurveSpec& spec, double tol)
{
    for (double radius : {0.8, 1.3}) {
        for (int k = 0; k < 7; ++k) {
            const Complex u = std::polar(radius, 2.0 * std::numbers::pi * k / 7.0 + 0.3);
            for (const Root& q : roots(spec.fiber_poly(u), 1e-12)) {
                const Complex ub = std::conj(u);
                const Complex u2 = -1.0 / ub;
                const Complex q2 = std::conj(q.value) / (ub * ub * ub * ub);
                if (std::abs(spec.eval(u2, q2)) > tol * spec.magnitude(u2, q2))
                    return false;
            }
        }
    }
    return true;
}

}  // namespace minsurf
