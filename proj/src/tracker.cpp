#include "minsurf/tracker.hpp"

#include "minsurf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace minsurf {

namespace {

constexpr double kSwitchRadius = 2.0;

class ChartSpecs {
public:
    explicit ChartSpecs(const CurveSpec& spec) : u_(spec), v_(spec.in_opposite_chart()) {}
    const CurveSpec& operator[](Chart c) const { return c == Chart::U ? u_ : v_; }

private:
    const CurveSpec& u_;
    CurveSpec v_;
};

double fq_scale(const CurveSpec& s, Complex x, Complex q)
{
    double acc = 0.0;
    const double aq = std::abs(q);
    for (int j = s.d; j >= 1; --j)
        acc = acc * aq + j * s.f(j).magnitude_at(x);
    return acc;
}

bool newton(const CurveSpec& s, Complex x, Complex& q, int iterations, double tol)
{
    for (int it = 0; it < iterations; ++it) {
        const Complex f = s.eval(x, q);
        const Complex fq = s.d_dq(x, q);
        if (fq == 0.0)
            return false;
        const Complex dq = f / fq;
        q -= dq;
        if (std::abs(dq) <= 1e-14 * (1.0 + std::abs(q)))
            break;
    }
    return std::abs(s.eval(x, q)) <= tol * s.magnitude(x, q);
}

ChartPoint in_chart(const ChartPoint& p, Chart c) { return p.chart == c ? p : chart_transfer(p); }

std::vector<Complex> fiber_roots(const CurveSpec& s, Complex x)
{
    std::vector<Complex> out;
    for (const Root& r : roots(s.fiber_poly(x), 1e-12))
        for (int m = 0; m < r.multiplicity; ++m)
            out.push_back(r.value);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

int nearest(const std::vector<Complex>& zs, Complex q)
{
    int best = 0;
    for (int i = 1; i < static_cast<int>(zs.size()); ++i)
        if (std::abs(zs[i] - q) < std::abs(zs[best] - q))
            best = i;
    return best;
}

void maybe_switch(ChartPoint& p)
{
    if (std::abs(p.first) > kSwitchRadius)
        p = chart_transfer(p);
}

void track_segment(const ChartSpecs& specs, const SpherePoint& A, const SpherePoint& B, ChartPoint& cur,
                   std::vector<ChartPoint>& samples, const TrackerOptions& opt)
{
    const Chart seg = A.chart;
    const Complex a = A.coord;
    const Complex b = coordinate_in(B, seg);
    const double len = std::abs(b - a);
    if (len == 0.0)
        return;
    const int d = specs[Chart::U].d;
    double t = 0.0;
    double h = std::min(1.0, opt.max_step / len);
    while (t < 1.0) {
        const bool last = h >= 1.0 - t;
        h = std::min(h, 1.0 - t);
        if (h * len < opt.min_step && !last)
            throw Error(ErrorCode::StepCollapse, "lift_path: step size underflow");
        const CurveSpec& s = specs[cur.chart];
        const Complex x = cur.first;
        const Complex q = cur.second;

        const Complex fq = s.d_dq(x, q);
        if (std::abs(fq) < opt.branch_threshold * fq_scale(s, x, q))
            throw Error(ErrorCode::NearBranchPoint, "lift_path: path passes too close to a branch point");

        const double t1 = last ? 1.0 : t + h;
        const Complex useg = a + t1 * (b - a);
        Complex x1;
        if (cur.chart == seg) {
            x1 = useg;
        } else {
            if (useg == 0.0)
                throw Error(ErrorCode::AtChartOrigin, "lift_path: segment passes through the chart origin");
            x1 = 1.0 / useg;
        }
        const Complex dqdx = -s.d_du(x, q) / fq;
        const Complex q_pred = q + (x1 - x) * dqdx;
        Complex q1 = q_pred;
        if (!newton(s, x1, q1, 4, opt.tol) || std::abs(q1 - q) > 0.1 * std::abs(q) + 1e-300) {
            h *= 0.5;
            continue;
        }
        if (d >= 2) {
            const auto zs = fiber_roots(s, x1);
            const int k = nearest(zs, q1);
            double sep = std::numeric_limits<double>::infinity();
            for (int i = 0; i < static_cast<int>(zs.size()); ++i)
                if (i != k)
                    sep = std::min(sep, std::abs(zs[i] - zs[k]));
            if (std::abs(q_pred - q1) > 0.25 * sep || std::abs(q1 - q) > 0.5 * sep) {
                h *= 0.5;
                continue;
            }
        }
        cur = {cur.chart, x1, q1};
        t = t1;
        maybe_switch(cur);
        samples.push_back(cur);
        h = std::min(2.0 * h, opt.max_step / len);
    }
}

}  // namespace

Complex coordinate_in(const SpherePoint& p, Chart chart)
{
    if (p.chart == chart)
        return p.coord;
    if (p.coord == 0.0)
        throw Error(ErrorCode::AtChartOrigin, "coordinate_in: point is the origin of the other chart");
    return 1.0 / p.coord;
}

std::vector<Complex> sheets_at(const CurveSpec& spec, const SpherePoint& p)
{
    if (p.chart == Chart::U)
        return fiber_roots(spec, p.coord);
    return fiber_roots(spec.in_opposite_chart(), p.coord);
}

LiftedPath lift_path(const CurveSpec& spec, const std::vector<SpherePoint>& path, Complex q_start,
                     const TrackerOptions& opt)
{
    if (path.empty())
        throw Error(ErrorCode::InvalidParams, "lift_path: empty path");
    const ChartSpecs specs(spec);
    ChartPoint cur{path[0].chart, path[0].coord, q_start};
    if (!newton(specs[cur.chart], cur.first, cur.second, 20, 1e-8) ||
        std::abs(cur.second - q_start) > 1e-6 * (1.0 + std::abs(q_start)))
        throw Error(ErrorCode::InvalidParams, "lift_path: starting point is not on the curve");
    maybe_switch(cur);
    LiftedPath out;
    out.samples.push_back(cur);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        track_segment(specs, path[i], path[i + 1], cur, out.samples, opt);
    return out;
}

ClosedLoop close_loop(const CurveSpec& spec, const std::vector<SpherePoint>& loop, Complex q_start,
                      const TrackerOptions& opt)
{
    if (loop.empty())
        throw Error(ErrorCode::InvalidParams, "close_loop: empty loop");
    std::vector<SpherePoint> closed = loop;
    const SpherePoint& base = loop.front();
    const SpherePoint& last = loop.back();
    if (last.chart != base.chart || last.coord != base.coord)
        closed.push_back(base);

    const auto sheets = sheets_at(spec, base);
    const int start = nearest(sheets, q_start);
    ClosedLoop out;
    Complex q = sheets[static_cast<std::size_t>(start)];
    for (int trav = 1; trav <= spec.d; ++trav) {
        LiftedPath piece = lift_path(spec, closed, q, opt);
        if (out.path.samples.empty())
            out.path = std::move(piece);
        else
            out.path.samples.insert(out.path.samples.end(), piece.samples.begin() + 1, piece.samples.end());
        const ChartPoint end = in_chart(out.path.back(), base.chart);
        const int k = nearest(sheets, end.second);
        if (k == start) {
            out.traversals = trav;
            return out;
        }
        q = end.second;
    }
    throw Error(ErrorCode::NonConvergence, "close_loop: starting sheet did not recur");
}

Monodromy monodromy(const CurveSpec& spec, const std::vector<SpherePoint>& loop, const TrackerOptions& opt)
{
    Monodromy m;
    m.base = loop.front();
    m.sheets = sheets_at(spec, m.base);
    std::vector<SpherePoint> closed = loop;
    if (loop.back().chart != loop.front().chart || loop.back().coord != loop.front().coord)
        closed.push_back(loop.front());
    const int n = static_cast<int>(m.sheets.size());
    for (int i = 0; i < n; ++i) {
        const LiftedPath p = lift_path(spec, closed, m.sheets[static_cast<std::size_t>(i)], opt);
        const ChartPoint end = in_chart(p.back(), m.base.chart);
        m.sheet_permutation.push_back(nearest(m.sheets, end.second));
    }
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (int j : m.sheet_permutation)
        if (seen[static_cast<std::size_t>(j)]++)
            throw Error(ErrorCode::NonConvergence, "monodromy: lifted endpoints do not form a permutation");
    for (int i = 0; i < n; ++i) {
        int len = 1;
        for (int j = m.sheet_permutation[static_cast<std::size_t>(i)]; j != i; j = m.sheet_permutation[static_cast<std::size_t>(j)])
            ++len;
        m.cycle_length_per_sheet.push_back(len);
    }
    return m;
}

std::vector<SpherePoint> circle_path(const SpherePoint& center, double radius, int n, double phase)
{
    std::vector<SpherePoint> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k < n; ++k)
        out.push_back({center.chart, center.coord + std::polar(radius, phase + 2.0 * std::numbers::pi * k / n)});
    out.push_back(out.front());
    return out;
}

}  // namespace minsurf
