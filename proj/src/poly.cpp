#include "minsurf/poly.hpp"

#include "minsurf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace minsurf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Evaluates p and p' together by Horner's rule.
void horner2(std::span<const Complex> a, Complex z, Complex& p, Complex& dp)
{
    p = 0.0;
    dp = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

double magnitude(std::span<const Complex> a, double r)
{
    double s = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        s = s * r + std::abs(*it);
    return s;
}

// Initial approximations from the upper convex hull of (i, log|a_i|).
std::vector<Complex> initial_guesses(std::span<const Complex> a)
{
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<int> hull;
    auto lg = [&](int i) {
        const double m = std::abs(a[i]);
        return m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
    };
    for (int i = 0; i <= n; ++i) {
        if (!std::isfinite(lg(i)))
            continue;
        while (hull.size() >= 2) {
            const int i1 = hull[hull.size() - 2];
            const int i2 = hull.back();
            // Drop i2 when it lies on or below the chord i1 -> i.
            const double cross = (i2 - i1) * (lg(i) - lg(i1)) - (i - i1) * (lg(i2) - lg(i1));
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    std::vector<Complex> z;
    z.reserve(n);
    const double sigma = 0.7;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const int i = hull[h];
        const int j = hull[h + 1];
        const int count = j - i;
        const double r = std::pow(std::abs(a[i]) / std::abs(a[j]), 1.0 / count);
        for (int k = 0; k < count; ++k) {
            const double ang = 2.0 * std::numbers::pi * k / count
                + 2.0 * std::numbers::pi * i / n + sigma;
            z.push_back(std::polar(r, ang));
        }
    }
    return z;
}

std::vector<Complex> aberth(std::span<const Complex> a, double tol)
{
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<Complex> z = initial_guesses(a);
    std::vector<char> done(n, 0);
    const int max_iter = 1500;

    for (int iter = 0; iter < max_iter; ++iter) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k])
                continue;
            Complex p, dp;
            horner2(a, z[k], p, dp);
            const double scale = magnitude(a, std::abs(z[k]));
            if (std::abs(p) <= 4.0 * kEps * scale) {
                done[k] = 1;
                continue;
            }
            all_done = false;
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    sum += 1.0 / (z[k] - z[j]);
            const Complex w = p / dp;
            Complex corr = w / (1.0 - w * sum);
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag()))
                corr = Complex(1e-3 * (1.0 + std::abs(z[k])), 0.0);
            z[k] -= corr;
            if (std::abs(corr) <= 2.0 * kEps * std::abs(z[k]))
                done[k] = 1;
        }
        if (all_done)
            break;
    }

    for (int k = 0; k < n; ++k) {
        Complex p, dp;
        horner2(a, z[k], p, dp);
        const double scale = magnitude(a, std::abs(z[k]));
        if (!(std::abs(p) <= std::max(tol, 1e3 * kEps) * scale))
            throw Error(ErrorCode::NonConvergence, "root finder: iteration budget exhausted");
    }
    return z;
}

Complex newton_refine(const PolyU& p, Complex z, int iterations)
{
    const PolyU dp = p.derivative();
    for (int i = 0; i < iterations; ++i) {
        const Complex d = dp(z);
        if (d == 0.0)
            break;
        const Complex step = p(z) / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
            break;
        const double before = std::abs(p(z));
        const Complex cand = z - step;
        if (std::abs(p(cand)) > before)
            break;
        z = cand;
        if (std::abs(step) <= 2.0 * kEps * std::abs(z))
            break;
    }
    return z;
}

// Taylor-coefficient test for an m-fold zero near c within radius rho.
bool consistent_with_multiple_zero(const PolyU& p, Complex c, int m, double rho)
{
    const PolyU b = p.taylor_shift(c);
    const double bm = std::abs(b[m]);
    const int n = p.degree();
    for (int j = 0; j < m; ++j) {
        double roundoff = 0.0;
        for (int i = j; i <= n; ++i)
            roundoff += std::abs(p[i]) * binomial(i, j) * std::pow(std::abs(c), i - j);
        const double bound = 4.0 * binomial(m, j) * std::pow(rho, m - j) * bm + 1e3 * kEps * roundoff;
        if (std::abs(b[j]) > bound)
            return false;
    }
    return true;
}

}  // namespace

PolyU::PolyU(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PolyU::PolyU(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

PolyU PolyU::constant(Complex c) { return PolyU(std::vector<Complex>{c}); }

PolyU PolyU::monomial(Complex c, int power)
{
    std::vector<Complex> v(static_cast<std::size_t>(power) + 1, 0.0);
    v.back() = c;
    return PolyU(std::move(v));
}

void PolyU::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0.0)
        coeffs_.pop_back();
}

Complex PolyU::operator[](int i) const
{
    if (i < 0 || i > degree())
        return 0.0;
    return coeffs_[static_cast<std::size_t>(i)];
}

Complex PolyU::leading() const { return is_zero() ? Complex(0.0) : coeffs_.back(); }

Complex PolyU::operator()(Complex u) const
{
    Complex r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * u + *it;
    return r;
}

double PolyU::magnitude_at(Complex u) const { return magnitude(coeffs_, std::abs(u)); }

double PolyU::max_coeff() const
{
    double m = 0.0;
    for (const Complex& c : coeffs_)
        m = std::max(m, std::abs(c));
    return m;
}

PolyU PolyU::derivative() const
{
    if (degree() < 1)
        return {};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return PolyU(std::move(d));
}

PolyU PolyU::taylor_shift(Complex a) const
{
    std::vector<Complex> b = coeffs_;
    const int n = degree();
    for (int k = 0; k < n; ++k)
        for (int i = n - 1; i >= k; --i)
            b[i] += a * b[i + 1];
    return PolyU(std::move(b));
}

PolyU PolyU::scaled_argument(Complex c) const
{
    std::vector<Complex> b = coeffs_;
    Complex pw = 1.0;
    for (auto& x : b) {
        x *= pw;
        pw *= c;
    }
    return PolyU(std::move(b));
}

PolyU PolyU::reversed(int n) const
{
    std::vector<Complex> b(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= degree(); ++i)
        b[static_cast<std::size_t>(n - i)] = coeffs_[i];
    return PolyU(std::move(b));
}

PolyU PolyU::chopped(double rel_tol) const
{
    const double cut = rel_tol * max_coeff();
    std::vector<Complex> b = coeffs_;
    for (auto& x : b)
        if (std::abs(x) <= cut)
            x = 0.0;
    return PolyU(std::move(b));
}

PolyU& PolyU::operator+=(const PolyU& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

PolyU& PolyU::operator-=(const PolyU& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

PolyU& PolyU::operator*=(Complex c)
{
    for (auto& x : coeffs_)
        x *= c;
    trim();
    return *this;
}

PolyU operator*(const PolyU& a, const PolyU& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Complex> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolyU(std::move(r));
}

std::vector<Root> roots(const PolyU& p, double tol)
{
    if (p.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "roots: zero polynomial");
    if (p.degree() < 1)
        throw Error(ErrorCode::ZeroPolynomial, "roots: polynomial has degree < 1");

    std::vector<Root> out;
    auto c = p.coeffs();
    int zeros_at_origin = 0;
    while (c[static_cast<std::size_t>(zeros_at_origin)] == 0.0)
        ++zeros_at_origin;
    if (zeros_at_origin > 0)
        out.push_back({0.0, zeros_at_origin});

    const PolyU rest(std::vector<Complex>(c.begin() + zeros_at_origin, c.end()));
    const int n = rest.degree();
    if (n == 0)
        return out;
    if (n == 1) {
        out.push_back({-rest[0] / rest[1], 1});
        return out;
    }

    std::vector<Complex> z = aberth(rest.coeffs(), tol);
    std::vector<char> used(n, 0);

    for (int m = n; m >= 2; --m) {
        const double rad_base = std::pow(tol, 1.0 / m);
        for (int k = 0; k < n; ++k) {
            if (used[k])
                continue;
            std::vector<int> cand;
            for (int j = 0; j < n; ++j)
                if (!used[j])
                    cand.push_back(j);
            if (static_cast<int>(cand.size()) < m)
                break;
            std::sort(cand.begin(), cand.end(), [&](int x, int y) {
                return std::abs(z[x] - z[k]) < std::abs(z[y] - z[k]);
            });
            cand.resize(m);
            Complex centroid = 0.0;
            for (int j : cand)
                centroid += z[j];
            centroid /= static_cast<double>(m);
            const double radius = rad_base * std::max(1.0, std::abs(centroid));
            bool tight = true;
            for (int j : cand)
                tight = tight && std::abs(z[j] - centroid) <= radius;
            if (!tight || !consistent_with_multiple_zero(rest, centroid, m, radius))
                continue;

            // Refine on p^(m-1), where the cluster is a simple zero.
            PolyU dm = rest;
            for (int i = 0; i < m - 1; ++i)
                dm = dm.derivative();
            Complex center = newton_refine(dm, centroid, 30);
            if (std::abs(center - centroid) > radius)
                center = centroid;
            for (int j : cand)
                used[j] = 1;
            out.push_back({center, m});
        }
    }
    for (int k = 0; k < n; ++k)
        if (!used[k])
            out.push_back({newton_refine(rest, z[k], 3), 1});

    // Roots that landed on the origin merge with the stripped factor.
    if (zeros_at_origin > 0) {
        const double r0 = std::pow(tol, 1.0 / (zeros_at_origin + 1));
        for (std::size_t i = 1; i < out.size();) {
            if (std::abs(out[i].value) <= r0 * 1e-3) {
                out[0].multiplicity += out[i].multiplicity;
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
    }
    return out;
}

bool has_simple_zeros(const PolyU& p, double tol)
{
    if (p.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "has_simple_zeros: zero polynomial");
    if (p.degree() < 1)
        return true;
    for (const Root& r : roots(p, tol))
        if (r.multiplicity > 1)
            return false;
    return true;
}

}  // namespace minsurf
