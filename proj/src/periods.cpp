#include "minsurf/periods.hpp"

#include "lattice.hpp"
#include "minsurf/error.hpp"
#include "minsurf/integrate.hpp"
#include "minsurf/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <sstream>

namespace minsurf {

namespace {

constexpr int kCircleNodes = 64;

std::string fmt(Complex z)
{
    std::ostringstream o;
    o.precision(6);
    o << '(' << z.real() << ", " << z.imag() << ')';
    return o.str();
}

double segment_distance(Complex p, Complex a, Complex b)
{
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

Complex stem_end(Complex base, Complex center, double radius)
{
    const Complex dir = base - center;
    return center + radius * dir / std::abs(dir);
}

// Worst ratio distance / radius over all stems and all other centers.
double clearance(Complex base, const std::vector<Complex>& c, const std::vector<double>& r)
{
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double di = std::abs(base - c[i]) / r[i];
        if (di <= 1.0)
            return 0.0;
        worst = std::min(worst, di - 1.0);
        const Complex e = stem_end(base, c[i], r[i]);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (j != i)
                worst = std::min(worst, segment_distance(c[j], base, e) / r[j]);
    }
    return worst;
}

Complex choose_base(const std::vector<Complex>& c, const std::vector<double>& r)
{
    Complex centroid = 0.0;
    double spread = 0.0;
    for (const auto& z : c)
        centroid += z;
    centroid /= static_cast<double>(c.size());
    for (const auto& z : c)
        spread = std::max(spread, std::abs(z - centroid));
    spread = std::max(spread, 0.5);
    Complex best = centroid + spread;
    double best_score = -1.0;
    for (int ring = 1; ring <= 10; ++ring)
        for (int k = 0; k < 24; ++k) {
            const double rad = spread * (0.15 + 0.25 * ring);
            const Complex b = centroid + std::polar(rad, 2.0 * std::numbers::pi * (k + 0.37 + 0.11 * ring) / 24.0);
            const double s = clearance(b, c, r);
            if (s > best_score) {
                best_score = s;
                best = b;
            }
        }
    return best;
}

int nearest(const std::vector<Complex>& zs, Complex q)
{
    int best = 0;
    for (int i = 1; i < static_cast<int>(zs.size()); ++i)
        if (std::abs(zs[i] - q) < std::abs(zs[best] - q))
            best = i;
    return best;
}

Eigen::VectorXd as_real6(const CVec3& v)
{
    Eigen::VectorXd x(6);
    x << v.real(), v.imag();
    return x;
}

Eigen::VectorXd as_vec(const Vec3& v) { return Eigen::VectorXd(v); }

}  // namespace

HomologyData homology_loops(const CurveSpec& spec, double tol)
{
    std::vector<Complex> centers;
    if (spec.d == 1) {
        if (spec.f(0).degree() >= 1)
            for (const Root& r : roots(spec.f(0), 1e-10))
                centers.push_back(r.value);
    } else {
        for (const auto& p : special_points(spec)) {
            if (p.chart == Chart::U)
                centers.push_back(p.coord);
            else if (p.coord != 0.0)
                centers.push_back(1.0 / p.coord);
        }
    }

    HomologyData h;
    if (centers.empty()) {
        h.base = {Chart::U, 0.0};
        h.sheets = sheets_at(spec, h.base);
        return h;
    }
    std::vector<double> radii;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centers.size(); ++j)
            if (j != i)
                dmin = std::min(dmin, std::abs(centers[i] - centers[j]));
        radii.push_back(std::min(0.25, 0.4 * dmin));
    }
    const Complex b = choose_base(centers, radii);
    h.base = {Chart::U, b};
    h.sheets = sheets_at(spec, h.base);
    const int d = spec.d;

    for (std::size_t i = 0; i < centers.size(); ++i) {
        Lasso L;
        L.center = centers[i];
        L.radius = radii[i];
        L.path.push_back(h.base);
        for (const auto& p : circle_path({Chart::U, centers[i]}, radii[i], kCircleNodes, std::arg(b - centers[i])))
            L.path.push_back(p);
        L.path.push_back(h.base);
        h.lassos.push_back(std::move(L));
    }

    for (int i = 0; i < static_cast<int>(h.lassos.size()); ++i)
        for (int s = 0; s < d; ++s) {
            LiftedPath lp;
            try {
                lp = lift_path(spec, h.lassos[static_cast<std::size_t>(i)].path, h.sheets[static_cast<std::size_t>(s)]);
            } catch (const Error& e) {
                throw Error(e.code(), std::string(e.what()) + " (lasso around u = " + fmt(centers[static_cast<std::size_t>(i)]) +
                                          " from base " + fmt(b) + ")");
            }
            const ChartPoint end = lp.back().chart == Chart::U ? lp.back() : chart_transfer(lp.back());
            const int t = nearest(h.sheets, end.second);
            if (std::abs(h.sheets[static_cast<std::size_t>(t)] - end.second) > 1e-6 * (1.0 + std::abs(end.second)))
                throw Error(ErrorCode::NonConvergence, "homology_loops: lifted lasso does not return to a sheet");
            h.lifts.push_back({i, s, t, integrate_omega(spec, lp, tol).value});
        }

    const std::size_t nl = h.lifts.size();
    auto period_of = [&](const std::vector<int>& m) {
        CVec3 p = CVec3::Zero();
        for (std::size_t e = 0; e < nl; ++e)
            p += static_cast<double>(m[e]) * h.lifts[e].integral;
        return p;
    };

    if (d == 1) {
        for (std::size_t e = 0; e < nl; ++e) {
            HomologyCycle c;
            c.multiplicity.assign(nl, 0);
            c.multiplicity[e] = 1;
            c.period = h.lifts[e].integral;
            c.description = "loop around u = " + fmt(h.lassos[static_cast<std::size_t>(h.lifts[e].lasso)].center);
            h.cycles.push_back(std::move(c));
        }
        return h;
    }

    // Spanning forest of the sheet graph; every other edge closes a cycle.
    std::vector<std::vector<int>> chain(static_cast<std::size_t>(d));
    std::vector<char> reached(static_cast<std::size_t>(d), 0);
    std::vector<char> tree_edge(nl, 0);
    for (int root = 0; root < d; ++root) {
        if (reached[static_cast<std::size_t>(root)])
            continue;
        reached[static_cast<std::size_t>(root)] = 1;
        chain[static_cast<std::size_t>(root)].assign(nl, 0);
        std::deque<int> queue{root};
        while (!queue.empty()) {
            const int s = queue.front();
            queue.pop_front();
            for (std::size_t e = 0; e < nl; ++e) {
                const auto& L = h.lifts[e];
                int next = -1, sign = 0;
                if (L.sheet == s && !reached[static_cast<std::size_t>(L.end_sheet)])
                    next = L.end_sheet, sign = 1;
                else if (L.end_sheet == s && !reached[static_cast<std::size_t>(L.sheet)])
                    next = L.sheet, sign = -1;
                if (next < 0)
                    continue;
                reached[static_cast<std::size_t>(next)] = 1;
                tree_edge[e] = 1;
                chain[static_cast<std::size_t>(next)] = chain[static_cast<std::size_t>(s)];
                chain[static_cast<std::size_t>(next)][e] += sign;
                queue.push_back(next);
            }
        }
    }
    std::vector<std::vector<int>> raw;
    for (std::size_t e = 0; e < nl; ++e) {
        if (tree_edge[e])
            continue;
        std::vector<int> m(nl, 0);
        for (std::size_t t = 0; t < nl; ++t)
            m[t] = chain[static_cast<std::size_t>(h.lifts[e].sheet)][t] - chain[static_cast<std::size_t>(h.lifts[e].end_sheet)][t];
        m[e] += 1;
        raw.push_back(std::move(m));
    }

    // Z-basis of the complex periods of the cycles.
    std::vector<Eigen::VectorXd> gens;
    double scale = 0.0;
    for (const auto& m : raw) {
        gens.push_back(as_real6(period_of(m)));
        scale = std::max(scale, gens.back().norm());
    }
    if (scale == 0.0)
        return h;
    const double rel = 1e-8;
    const auto rows = detail::integer_reduce(gens, 1.0 / (rel * scale));
    int index = 0;
    for (const auto& c : rows) {
        const Eigen::VectorXd img = detail::combine(c, gens);
        double c1 = 0.0;
        for (long long x : c)
            c1 += std::abs(static_cast<double>(x));
        if (img.norm() <= rel * scale * (1.0 + 1e-2 * c1))
            continue;
        HomologyCycle cyc;
        cyc.multiplicity.assign(nl, 0);
        for (std::size_t j = 0; j < raw.size(); ++j)
            for (std::size_t t = 0; t < nl; ++t)
                cyc.multiplicity[t] += static_cast<int>(c[j]) * raw[j][t];
        cyc.period = period_of(cyc.multiplicity);
        cyc.description = "cycle " + std::to_string(index++) + " of the sheet graph over base u = " + fmt(b);
        h.cycles.push_back(std::move(cyc));
    }
    return h;
}

PeriodGroup period_group(const HomologyData& h)
{
    PeriodGroup g;
    for (const auto& c : h.cycles) {
        g.complex_generators.push_back(c.period);
        g.real_generators.push_back(c.period.real());
        g.provenance.push_back(c.description);
    }
    return g;
}

PeriodGroup period_group(const CurveSpec& spec, double tol)
{
    const HomologyData h = homology_loops(spec, tol);
    PeriodGroup g = period_group(h);
    if (spec.d == 1 && !h.cycles.empty()) {
        double dev = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < h.cycles.size(); ++i) {
            try {
                const Vec3 p = section_period_closed_form(spec.f(0), h.lassos[i].center);
                dev = std::max(dev, (p - g.real_generators[i]).norm());
                any = true;
            } catch (const Error&) {
            }
        }
        if (any)
            g.closed_form_deviation = dev;
    }
    return g;
}

Vec3 section_period_closed_form(const PolyU& f0, Complex a)
{
    const double floor = 1e-8 * f0.max_coeff() * std::pow(std::max(1.0, std::abs(a)), f0.degree());
    if (std::abs(f0(a)) > std::max(1e-8 * f0.magnitude_at(a), floor))
        throw Error(ErrorCode::NotSimpleRoot, "section_period_closed_form: a is not a root of f0");
    const PolyU df = f0.derivative();
    const Complex ga = df(a);
    if (std::abs(ga) <= std::max(1e-8 * df.magnitude_at(a), floor))
        throw Error(ErrorCode::NotSimpleRoot, "section_period_closed_form: a is a multiple root of f0");
    const Complex I(0.0, 1.0);
    const CVec3 v = CVec3(1.0 - a * a, I * (1.0 + a * a), 2.0 * a) / ga;
    return 4.0 * std::numbers::pi * v.imag();
}

const char* to_string(LatticeVerdict v)
{
    switch (v) {
    case LatticeVerdict::Trivial: return "TRIVIAL";
    case LatticeVerdict::Lattice: return "LATTICE";
    case LatticeVerdict::LikelyDense: return "LIKELY_DENSE";
    case LatticeVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

LatticeAnalysis lattice_analysis(const PeriodGroup& group, const LatticeOptions& opt)
{
    LatticeAnalysis out;
    double cscale = 0.0;
    for (const auto& c : group.complex_generators)
        cscale = std::max(cscale, c.norm());
    for (const auto& r : group.real_generators)
        cscale = std::max(cscale, r.norm());
    const double zero = 100.0 * opt.tol * (1.0 + cscale);

    // imaginary rank: integer relations among real parts give purely
    // imaginary elements
    if (!group.complex_generators.empty()) {
        std::vector<Eigen::VectorXd> re, im;
        double rscale = 0.0;
        for (const auto& c : group.complex_generators) {
            re.push_back(as_vec(c.real()));
            im.push_back(as_vec(c.imag()));
            rscale = std::max(rscale, c.real().norm());
        }
        std::vector<Eigen::VectorXd> imaginary;
        if (rscale <= zero) {
            imaginary = im;
        } else {
            for (const auto& c : detail::integer_reduce(re, 1.0 / (opt.tol * rscale))) {
                double c1 = 0.0, cinf = 0.0;
                for (long long x : c) {
                    c1 += std::abs(static_cast<double>(x));
                    cinf = std::max(cinf, std::abs(static_cast<double>(x)));
                }
                if (cinf <= opt.height && detail::combine(c, re).norm() <= opt.tol * rscale * (1.0 + 1e-2 * c1))
                    imaginary.push_back(detail::combine(c, im));
            }
        }
        std::erase_if(imaginary, [&](const Eigen::VectorXd& v) { return v.norm() <= zero; });
        out.imaginary_rank = std::min(3, detail::numerical_rank(imaginary, 1e-6));
    }

    std::vector<Eigen::VectorXd> gens;
    double scale = 0.0;
    for (const auto& r : group.real_generators)
        if (r.norm() > zero) {
            gens.push_back(as_vec(r));
            scale = std::max(scale, r.norm());
        }
    if (gens.empty()) {
        out.verdict = LatticeVerdict::Trivial;
        return out;
    }
    const int m = static_cast<int>(gens.size());
    const int rank_r = detail::numerical_rank(gens, 1e-6);
    const auto rows = detail::integer_reduce(gens, 1.0 / (opt.tol * scale));
    std::vector<Eigen::VectorXd> images;
    bool over_height = false;
    for (const auto& c : rows) {
        const Eigen::VectorXd img = detail::combine(c, gens);
        double c1 = 0.0, cinf = 0.0;
        for (long long x : c) {
            c1 += std::abs(static_cast<double>(x));
            cinf = std::max(cinf, std::abs(static_cast<double>(x)));
        }
        if (img.norm() <= opt.tol * scale * (1.0 + 1e-2 * c1)) {
            if (cinf > opt.height) {
                over_height = true;
                continue;
            }
            auto rel = c;
            const auto first = std::find_if(rel.begin(), rel.end(), [](long long x) { return x != 0; });
            if (first != rel.end() && *first < 0)
                for (auto& x : rel)
                    x = -x;
            out.relations.push_back(std::move(rel));
        } else {
            images.push_back(img);
        }
    }
    const int count = m - static_cast<int>(out.relations.size());
    if (!over_height && count == rank_r && static_cast<int>(images.size()) == count &&
        detail::numerical_rank(images, 1e-6) == count) {
        out.verdict = LatticeVerdict::Lattice;
        out.rank = count;
        for (const auto& v : images)
            out.basis.push_back(v);
    } else if (!over_height && count > rank_r) {
        out.verdict = LatticeVerdict::LikelyDense;
        out.rank = rank_r;
    } else {
        out.verdict = LatticeVerdict::Inconclusive;
        out.rank = rank_r;
    }
    return out;
}

TopologyReport topology_report(const CurveSpec& spec, double tol)
{
    TopologyReport t;
    t.d = spec.d;
    int ramification = 0;
    for (auto& c : classify_zero_section(spec, tol)) {
        ramification += c.branch.k - 1;
        switch (c.cls.kind) {
        case BranchKind::FiniteFlat:
            t.flat_points.push_back({c.location, c.branch.k, c.branch.l});
            break;
        case BranchKind::FlatEnd:
            ++t.r;
            t.s += c.cls.spin;
            t.ends.push_back(std::move(c));
            break;
        case BranchKind::Singular:
            throw Error(ErrorCode::InconsistentCensus, "topology_report: singular branch on the zero section");
        }
    }
    const int twice_g = 2 + 2 * t.d - t.r - t.s;
    const int twice_g_rh = 2 - 2 * t.d + ramification;
    if (twice_g % 2 != 0 || twice_g_rh % 2 != 0 || twice_g != twice_g_rh || twice_g < 0)
        throw Error(ErrorCode::InconsistentCensus, "topology_report: genus from ends and spin differs from Riemann-Hurwitz");
    t.genus = twice_g / 2;
    t.genus_rh = twice_g_rh / 2;
    t.euler_char = 2 - 2 * t.genus - t.r;
    t.expected_total_curvature = -4.0 * std::numbers::pi * t.d;
    t.kchi_total_curvature = 2.0 * std::numbers::pi * (t.euler_char - t.s);
    return t;
}

}  // namespace minsurf
