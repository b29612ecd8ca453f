#include "bipoly.hpp"

#include "minsurf/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minsurf::detail {

namespace {

constexpr int kMaxDepth = 12;

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Complex ipow(Complex z, int n)
{
    Complex r = 1.0;
    for (int i = 0; i < n; ++i)
        r *= z;
    return r;
}

struct Lattice {
    int i;
    int j;
};

// F(s1^q, s1^p (c + t1)) / s1^n
BiPoly substitute(const BiPoly& F, int p, int q, Complex c, int n, double thresh)
{
    int top = 0;
    for (int i = 0; i < F.s_size(); ++i)
        for (int j = 0; j < F.t_size(); ++j)
            if (std::abs(F(i, j)) > thresh)
                top = std::max(top, q * i + p * j - n);
    BiPoly G(top + 1, F.t_size());
    for (int i = 0; i < F.s_size(); ++i) {
        for (int j = 0; j < F.t_size(); ++j) {
            const Complex a = F(i, j);
            if (std::abs(a) <= thresh)
                continue;
            const int e = q * i + p * j - n;
            if (e < 0)
                throw Error(ErrorCode::DegenerateBranch, "Newton polygon: support point below an edge");
            Complex cp = 1.0;
            for (int m = j; m >= 0; --m) {
                // term C(j, m) c^(j-m) t1^m
                G(e, m) += a * binomial(j, m) * cp;
                cp *= c;
            }
        }
    }
    return G;
}

std::vector<PuiseuxBranch> branches(BiPoly F, double rel_tol, bool allow_t_factor, int depth)
{
    if (depth > kMaxDepth)
        throw Error(ErrorCode::DegenerateBranch, "Newton-Puiseux: recursion depth exceeded");
    const double thresh = rel_tol * F.max_abs();
    auto nz = [&](int i, int j) { return std::abs(F(i, j)) > thresh; };

    std::vector<PuiseuxBranch> out;

    int j0 = -1;
    for (int j = 0; j < F.t_size() && j0 < 0; ++j)
        if (nz(0, j))
            j0 = j;
    if (j0 < 0)
        throw Error(ErrorCode::DegenerateBranch, "branch contained in a fiber");

    // Components inside t = 0.
    int m = 0;
    for (bool zero = true; zero && m < F.t_size(); ++m)
        for (int i = 0; i < F.s_size(); ++i)
            if (nz(i, m)) {
                zero = false;
                break;
            }
    --m;
    if (m > 0) {
        if (!allow_t_factor)
            throw Error(ErrorCode::DegenerateBranch, "branch contained in the zero section");
        for (int r = 0; r < m; ++r)
            out.push_back({1, 0, 1.0, 0.0});
        BiPoly G(F.s_size(), F.t_size() - m);
        for (int i = 0; i < F.s_size(); ++i)
            for (int j = m; j < F.t_size(); ++j)
                G(i, j - m) = F(i, j);
        F = std::move(G);
        j0 -= m;
    }
    if (j0 == 0)
        return out;

    int i0 = -1;
    for (int i = 0; i < F.s_size() && i0 < 0; ++i)
        if (nz(i, 0))
            i0 = i;

    Lattice P{0, j0};
    while (P.j > 0) {
        Lattice best{-1, -1};
        double best_slope = 0.0;
        for (int i = P.i + 1; i <= i0; ++i) {
            for (int j = 0; j < P.j; ++j) {
                if (!nz(i, j))
                    continue;
                const double slope = static_cast<double>(j - P.j) / (i - P.i);
                if (best.i < 0 || slope < best_slope - 1e-12 ||
                    (std::abs(slope - best_slope) <= 1e-12 && i > best.i)) {
                    best = {i, j};
                    best_slope = slope;
                }
            }
        }
        const int di = best.i - P.i;
        const int dj = P.j - best.j;
        const int g = std::gcd(di, dj);
        const int p = di / g;
        const int q = dj / g;

        std::vector<Complex> e(static_cast<std::size_t>(g) + 1);
        for (int s = 0; s <= g; ++s)
            e[static_cast<std::size_t>(g - s)] = F(P.i + p * s, P.j - q * s);
        const PolyU edge(std::move(e));
        for (const Root& xi : roots(edge, 1e-9)) {
            const Complex c = std::pow(xi.value, 1.0 / q);
            if (xi.multiplicity == 1) {
                out.push_back({q, p, 1.0, c});
                continue;
            }
            const BiPoly F1 = substitute(F, p, q, c, q * P.i + p * P.j, thresh);
            for (const auto& b : branches(F1, rel_tol, true, depth + 1)) {
                out.push_back({q * b.k, p * b.k, ipow(b.s_lead, q), c * ipow(b.s_lead, p)});
            }
        }
        P = best;
    }
    return out;
}

}  // namespace

double BiPoly::max_abs() const
{
    double m = 0.0;
    for (const auto& x : a_)
        m = std::max(m, std::abs(x));
    return m;
}

BiPoly local_expansion(const CurveSpec& spec, Complex u0, Complex q0)
{
    int ns = 1;
    for (const auto& f : spec.coeffs)
        ns = std::max(ns, f.degree() + 1);
    BiPoly F(ns, spec.d + 1);
    for (int j = 0; j <= spec.d; ++j) {
        const PolyU g = spec.f(j).taylor_shift(u0);
        for (int m = 0; m <= j; ++m) {
            const Complex w = binomial(j, m) * ipow(q0, j - m);
            for (int i = 0; i <= g.degree(); ++i)
                F(i, m) += g[i] * w;
        }
    }
    return F;
}

std::vector<PuiseuxBranch> branches_at_origin(const BiPoly& F, double rel_tol, bool allow_t_factor)
{
    return branches(F, rel_tol, allow_t_factor, 0);
}

}  // namespace minsurf::detail
