#include "minsurf/gallery.hpp"

#include "minsurf/curve.hpp"
#include "minsurf/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace minsurf {

namespace {

constexpr double pi = std::numbers::pi;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidParams, msg); }

CurveSpec build(int d, std::vector<std::pair<int, PolyU>> terms, const std::string& name)
{
    CurveSpec s{d, std::vector<PolyU>(static_cast<std::size_t>(d + 1)), name};
    for (auto& [j, p] : terms)
        s.coeffs[static_cast<std::size_t>(j)] = std::move(p);
    CurveSpec n = normalize(std::move(s));
    n.name = name;
    return n;
}

PolyU from_roots(const std::vector<Complex>& zs, Complex c)
{
    PolyU p{c};
    for (const auto& z : zs)
        p = p * PolyU{-z, 1.0};
    return p;
}

// r, s, genus from a branch census; ends are the branches with l >= k
void fill_topology(ExpectedFacts& e)
{
    std::sort(e.census.begin(), e.census.end());
    int r = 0, s = 0, flat = 0;
    for (auto [k, l] : e.census) {
        if (l >= k) {
            ++r;
            s += l - k;
        } else if (l == k - 1 && k > 1) {
            ++flat;
        }
    }
    e.r = r;
    e.s = s;
    e.genus = (2 + 2 * e.d - r - s) / 2;
    e.finite_flat_points = flat;
    e.total_curvature = -4.0 * pi * e.d;
}

GalleryEntry section(const std::string& name, const PolyU& f0)
{
    GalleryEntry g;
    g.name = name;
    g.spec = build(1, {{0, f0}, {1, PolyU{-1.0}}}, name);
    g.expected.d = 1;
    return g;
}

GalleryEntry associated(double theta, const std::string& name)
{
    GalleryEntry g = section(name, PolyU{0, 0, std::polar(1.0, theta)});
    g.expected.census = {{1, 2}, {1, 2}};
    fill_topology(g.expected);
    const bool vanish = std::abs(std::sin(theta)) < 1e-12;
    g.expected.real_periods_vanish = vanish;
    if (vanish)
        g.expected.lattice_verdict = "TRIVIAL";
    g.notes.push_back("end period (0, 0, -8 pi sin theta)");
    return g;
}

GalleryEntry bour(int a, int b, Complex c)
{
    if (b <= 0)
        bad("bour: b must be positive");
    if (a < 0 || a > 2 * b)
        bad("bour: a/b must lie in [0, 2]");
    if (std::gcd(a, b) != 1)
        bad("bour: gcd(a, b) must be 1");
    if (c == 0.0)
        bad("bour: c must be nonzero");
    if (a > 0 && a < b - 1)
        bad("bour: branch at u = 0 has l < k - 1, not an immersion");
    std::ostringstream nm;
    nm << "bour(" << a << "," << b << ")";
    GalleryEntry g;
    g.name = nm.str();
    g.spec = build(b, {{0, PolyU::monomial(c, a)}, {b, PolyU{-1.0}}}, g.name);
    g.expected.d = b;
    if (a > 0)
        g.expected.census.push_back({b, a});
    g.expected.census.push_back({b, 4 * b - a});
    fill_topology(g.expected);
    if (a == 1 && b == 1) {
        g.expected.real_periods_vanish = false;
        g.notes.push_back("period nonzero and horizontal");
    } else if (a == 2 && b == 1) {
        g.expected.real_periods_vanish = std::abs(c.imag()) < 1e-12 * std::abs(c);
        g.notes.push_back("catenoid family");
    } else {
        g.expected.real_periods_vanish = true;
        g.expected.lattice_verdict = "TRIVIAL";
    }
    return g;
}

GalleryEntry hyperelliptic_from(const std::string& name, const PolyU& f0)
{
    if (f0.degree() != 7 && f0.degree() != 8)
        bad("hyperelliptic: deg f0 must be 7 or 8");
    if (!has_simple_zeros(f0))
        bad("hyperelliptic: f0 must have simple zeros");
    GalleryEntry g;
    g.name = name;
    g.spec = build(2, {{0, f0}, {2, PolyU{-1.0}}}, name);
    g.expected.d = 2;
    g.expected.census.assign(8, {2, 1});
    fill_topology(g.expected);
    g.expected.real_periods_vanish = false;
    return g;
}

std::vector<Complex> random_roots(unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    for (;;) {
        std::vector<Complex> zs;
        for (int i = 0; i < 8; ++i)
            zs.push_back(Complex(nd(rng), nd(rng)));
        double dmin = 1e300;
        for (std::size_t i = 0; i < zs.size(); ++i)
            for (std::size_t j = i + 1; j < zs.size(); ++j)
                dmin = std::min(dmin, std::abs(zs[i] - zs[j]));
        if (dmin > 0.25)
            return zs;
    }
}

GalleryEntry meeks(const std::vector<Complex>& a)
{
    if (a.size() != 4)
        bad("hyperelliptic meeks form needs four roots a_j");
    std::vector<Complex> zs;
    Complex prod = 1.0;
    for (const auto& x : a) {
        if (x == 0.0)
            bad("hyperelliptic meeks form: a_j must be nonzero");
        zs.push_back(x);
        zs.push_back(-1.0 / std::conj(x));
        prod *= x;
    }
    GalleryEntry g = hyperelliptic_from("hyperelliptic(meeks)", from_roots(zs, std::conj(prod) / std::abs(prod)));
    g.expected.meeks_symmetric = true;
    g.expected.lattice_verdict = "LATTICE";
    g.expected.imaginary_rank = 3;
    g.notes.push_back("triply periodic");
    return g;
}

GalleryEntry schwarz(const std::string& variant)
{
    GalleryEntry g;
    if (variant.empty() || variant == "printed") {
        g = hyperelliptic_from("schwarz(printed)", 4.0 * PolyU{1.0, 0, -14.0, 0, 0, 0, 0, 0, 1.0});
        g.notes.push_back("q^2/4 = u^8 - 14 u^2 + 1 as printed; not Meeks symmetric");
        g.expected.meeks_symmetric = false;
    } else if (variant == "symmetric") {
        g = hyperelliptic_from("schwarz(symmetric)", 4.0 * PolyU{1.0, 0, 0, 0, -14.0, 0, 0, 0, 1.0});
        g.notes.push_back("q^2/4 = u^8 - 14 u^4 + 1, the antipodally symmetric reading");
        g.expected.meeks_symmetric = true;
    } else {
        bad("schwarz: variant must be printed or symmetric");
    }
    g.flagged = true;
    g.expected.real_periods_vanish.reset();
    return g;
}

GalleryEntry costa(Complex c)
{
    if (c == 0.0)
        bad("costa: c must be nonzero");
    const Complex c2 = c * c, c4 = c2 * c2, c5 = c4 * c;
    GalleryEntry g;
    g.name = "costa";
    g.spec = build(3, {{0, PolyU{0, 0, 0, 0, -27.0 * c4, 0, 0, 0, 4.0}}, {2, PolyU{0, 0, 0, 0, -c2}}, {3, PolyU{c5}}}, "costa");
    g.expected.d = 3;
    g.expected.census = {{3, 4}, {1, 2}, {1, 2}, {2, 1}, {2, 1}, {2, 1}, {2, 1}};
    fill_topology(g.expected);
    g.notes.push_back("finite flat points at u^4 = 27 c^4 / 4");
    g.notes.push_back("periods vanish only for one positive c");
    return g;
}

// "1.5", "-2i", "0.5+0.25i"
Complex parse_complex(std::string t)
{
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (t.empty())
        bad("empty number");
    auto num = [&](const std::string& s) {
        if (s.empty() || s == "+")
            return 1.0;
        if (s == "-")
            return -1.0;
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            bad("not a number: " + t);
        }
        if (pos != s.size())
            bad("not a number: " + t);
        return v;
    };
    if (t.back() != 'i')
        return num(t);
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < t.size(); ++i)
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E')
            split = i;
    if (split == std::string::npos)
        return Complex(0.0, num(t));
    return Complex(num(t.substr(0, split)), num(t.substr(split)));
}

int parse_int(const std::string& s)
{
    int v = 0;
    const auto* b = s.data();
    const auto [p, ec] = std::from_chars(b, b + s.size(), v);
    if (ec != std::errc{} || p != b + s.size())
        bad("not an integer: " + s);
    return v;
}

std::string trim(std::string s)
{
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

}  // namespace

GalleryEntry get_example(const std::string& name, const GalleryParams& p)
{
    if (name == "enneper") {
        GalleryEntry g = section("enneper", PolyU{p.c.value_or(1.0)});
        g.expected.census = {{1, 4}};
        fill_topology(g.expected);
        g.expected.real_periods_vanish = true;
        g.expected.lattice_verdict = "TRIVIAL";
        g.notes.push_back("one end of multiplicity 4 over -e3");
        return g;
    }
    if (name == "catenoid") {
        GalleryEntry g = associated(0.0, "catenoid");
        g.expected.lattice_verdict = "TRIVIAL";
        return g;
    }
    if (name == "helicoid")
        return associated(pi / 2, "helicoid");
    if (name == "associated") {
        if (!p.theta)
            bad("associated needs theta");
        std::ostringstream nm;
        nm.precision(17);
        nm << "associated(" << *p.theta << ")";
        return associated(*p.theta, nm.str());
    }
    if (name == "scherk") {
        GalleryEntry g = section("scherk", PolyU{-1.0, 0, 0, 0, 1.0});
        g.expected.census = {{1, 1}, {1, 1}, {1, 1}, {1, 1}};
        fill_topology(g.expected);
        g.expected.real_periods_vanish = false;
        g.expected.lattice_verdict = "LATTICE";
        g.notes.push_back("loop periods (0, +-2 pi, 0), (+-2 pi, 0, 0)");
        return g;
    }
    if (name == "bour") {
        if (!p.a || !p.b)
            bad("bour needs a and b");
        return bour(*p.a, *p.b, p.c.value_or(1.0));
    }
    if (name == "hyperelliptic") {
        if (p.meeks)
            return meeks(*p.meeks);
        if (p.f0)
            return hyperelliptic_from("hyperelliptic", PolyU(*p.f0));
        const unsigned seed = p.seed.value_or(1);
        return hyperelliptic_from("hyperelliptic(seed=" + std::to_string(seed) + ")", from_roots(random_roots(seed), 1.0));
    }
    if (name == "schwarz")
        return schwarz(p.variant);
    if (name == "costa")
        return costa(p.c.value_or(1.0));
    throw Error(ErrorCode::UnknownName, "unknown gallery name: " + name);
}

GalleryEntry parse_example(std::string_view call)
{
    const std::string s = trim(std::string(call));
    const auto open = s.find('(');
    if (open == std::string::npos)
        return get_example(s, GalleryParams{});
    if (s.back() != ')')
        throw Error(ErrorCode::UnknownName, "malformed gallery call: " + s);
    const std::string name = trim(s.substr(0, open));
    std::vector<std::string> args;
    std::stringstream in(s.substr(open + 1, s.size() - open - 2));
    for (std::string tok; std::getline(in, tok, ',');)
        args.push_back(trim(tok));
    if (args.size() == 1 && args[0].empty())
        args.clear();

    GalleryParams p;
    if (name == "associated") {
        if (args.size() != 1)
            bad("associated(theta)");
        p.theta = parse_complex(args[0]).real();
    } else if (name == "bour") {
        if (args.size() < 2 || args.size() > 3)
            bad("bour(a, b[, c])");
        p.a = parse_int(args[0]);
        p.b = parse_int(args[1]);
        if (args.size() == 3)
            p.c = parse_complex(args[2]);
    } else if (name == "costa" || name == "enneper") {
        if (args.size() > 1)
            bad(name + "(c)");
        if (args.size() == 1)
            p.c = parse_complex(args[0]);
    } else if (name == "hyperelliptic") {
        if (args.size() == 1 && args[0].rfind("seed=", 0) == 0) {
            const int v = parse_int(args[0].substr(5));
            if (v < 0)
                bad("seed must be nonnegative");
            p.seed = static_cast<unsigned>(v);
        } else if (args.size() == 1 && args[0] == "meeks") {
            p.meeks = std::vector<Complex>{1.0, Complex(0, 1), 2.0, Complex(0, 2)};
        } else if (!args.empty() && args[0].rfind("meeks", 0) == 0) {
            bad("hyperelliptic(meeks) takes no roots in this form");
        } else if (!args.empty()) {
            std::vector<Complex> f;
            for (const auto& a : args)
                f.push_back(parse_complex(a));
            p.f0 = std::move(f);
        }
    } else if (name == "schwarz") {
        if (args.size() > 1)
            bad("schwarz(printed | symmetric)");
        if (args.size() == 1)
            p.variant = args[0];
    } else if (!args.empty()) {
        bad(name + " takes no parameters");
    }
    return get_example(name, p);
}

std::vector<std::string> gallery_names()
{
    return {"enneper", "catenoid", "helicoid", "associated(theta)", "scherk", "bour(a,b[,c])",
            "hyperelliptic(seed=N | meeks | c0,...,c8)", "schwarz(printed | symmetric)", "costa(c)"};
}

}  // namespace minsurf
