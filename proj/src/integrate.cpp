#include "minsurf/integrate.hpp"

#include "minsurf/curve.hpp"
#include "minsurf/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <ostream>

namespace minsurf {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    const CurveSpec* s;
    Chart chart;
    Complex x0, x1, q0, q1, dq0, dq1;
    double q_floor;

    Complex q_at(double t) const
    {
        const Complex h = x1 - x0;
        const double t2 = t * t, t3 = t2 * t;
        Complex q = (2 * t3 - 3 * t2 + 1) * q0 + (t3 - 2 * t2 + t) * h * dq0 + (-2 * t3 + 3 * t2) * q1 +
                    (t3 - t2) * h * dq1;
        const Complex x = x0 + t * h;
        const Complex guess = q;
        for (int it = 0; it < 10; ++it) {
            const Complex fq = s->d_dq(x, q);
            if (fq == 0.0)
                break;
            const Complex dq = s->eval(x, q) / fq;
            q -= dq;
            if (std::abs(dq) <= 1e-15 * (1.0 + std::abs(q)))
                break;
        }
        if (std::abs(q - guess) > 0.25 * std::abs(guess) + 1e-300 ||
            std::abs(s->eval(x, q)) > 1e-8 * s->magnitude(x, q))
            throw Error(ErrorCode::NonConvergence, "integrate_omega: lost the sheet between samples");
        return q;
    }

    CVec3 f(double t) const
    {
        const Complex q = q_at(t);
        if (std::abs(q) <= q_floor)
            throw Error(ErrorCode::PoleOnPath, "integrate_omega: path meets the zero section");
        return omega_density(ChartPoint{chart, x0 + t * (x1 - x0), q}).density * (x1 - x0);
    }
};

struct GkResult {
    CVec3 value;
    double err;
};

GkResult gk15(const Segment& seg, double a, double b)
{
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    CVec3 fv[15];
    fv[7] = seg.f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = seg.f(c - hl * kXgk[j]);
        fv[14 - j] = seg.f(c + hl * kXgk[j]);
    }
    CVec3 k = kWgk[7] * fv[7];
    CVec3 g = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        k += kWgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1)
            g += kWg[j / 2] * (fv[j] + fv[14 - j]);
    }
    const CVec3 mean = 0.5 * k;
    double resasc = kWgk[7] * (fv[7] - mean).norm();
    double resabs = kWgk[7] * fv[7].norm();
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * ((fv[j] - mean).norm() + (fv[14 - j] - mean).norm());
        resabs += kWgk[j] * (fv[j].norm() + fv[14 - j].norm());
    }
    resasc *= hl;
    resabs *= hl;
    double err = ((k - g) * hl).norm();
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs);
    return {k * hl, err};
}

GkResult adaptive(const Segment& seg, double tol)
{
    struct Piece {
        double a, b;
        GkResult r;
    };
    std::vector<Piece> done;
    std::vector<Piece> todo{{0.0, 1.0, gk15(seg, 0.0, 1.0)}};
    int evaluations = 1;
    while (!todo.empty()) {
        Piece p = todo.back();
        todo.pop_back();
        const double allowed = tol * (1.0 + p.r.value.norm()) * std::max(p.b - p.a, 1e-3);
        if (p.r.err <= allowed || p.b - p.a < 1e-9 || evaluations > 4000) {
            done.push_back(p);
            continue;
        }
        const double m = 0.5 * (p.a + p.b);
        todo.push_back({p.a, m, gk15(seg, p.a, m)});
        todo.push_back({m, p.b, gk15(seg, m, p.b)});
        evaluations += 2;
    }
    GkResult out{CVec3::Zero(), 0.0};
    for (const auto& p : done) {
        out.value += p.r.value;
        out.err += p.r.err;
    }
    return out;
}

// Equal-angle latitude/longitude grid on the u-sphere.
struct Grid {
    int R = 0;
    std::vector<SpherePoint> nodes;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> cells;  // counterclockwise seen from outside

    int ring_node(int i, int j) const { return 1 + (i - 1) * 2 * R + ((j % (2 * R)) + 2 * R) % (2 * R); }
};

SpherePoint sphere_node(double phi, double theta)
{
    const Complex u = std::polar(std::tan(0.5 * phi), theta);
    if (std::abs(u) <= 1.0)
        return {Chart::U, u};
    return {Chart::V, 1.0 / u};
}

Grid make_grid(int R)
{
    if (R < 2)
        throw Error(ErrorCode::InvalidParams, "mesh resolution must be at least 2");
    Grid g;
    g.R = R;
    const int M = 2 * R;
    g.nodes.push_back({Chart::U, 0.0});
    for (int i = 1; i < R; ++i)
        for (int j = 0; j < M; ++j)
            g.nodes.push_back(sphere_node(std::numbers::pi * i / R, 2.0 * std::numbers::pi * j / M));
    g.nodes.push_back(SpherePoint::infinity());
    const int south = static_cast<int>(g.nodes.size()) - 1;
    for (int j = 0; j < M; ++j) {
        g.edges.emplace_back(0, g.ring_node(1, j));
        g.cells.push_back({0, g.ring_node(1, j), g.ring_node(1, j + 1)});
    }
    for (int i = 1; i < R; ++i)
        for (int j = 0; j < M; ++j) {
            g.edges.emplace_back(g.ring_node(i, j), g.ring_node(i, j + 1));
            if (i + 1 < R) {
                g.edges.emplace_back(g.ring_node(i, j), g.ring_node(i + 1, j));
                g.cells.push_back({g.ring_node(i, j), g.ring_node(i + 1, j), g.ring_node(i + 1, j + 1),
                                   g.ring_node(i, j + 1)});
            }
        }
    for (int j = 0; j < M; ++j) {
        g.edges.emplace_back(g.ring_node(R - 1, j), south);
        g.cells.push_back({g.ring_node(R - 1, j), south, g.ring_node(R - 1, j + 1)});
    }
    return g;
}

double chordal(const SpherePoint& a, const SpherePoint& b)
{
    return 0.5 * (gauss_point(a.chart, a.coord) - gauss_point(b.chart, b.coord)).norm();
}

SpherePoint midpoint(const SpherePoint& a, const SpherePoint& b)
{
    return {a.chart, 0.5 * (a.coord + coordinate_in(b, a.chart))};
}

// |f_0| in units of the fiber metric; the same expression in either chart.
double zero_section_distance(const CurveSpec& u_spec, const CurveSpec& v_spec, const SpherePoint& p)
{
    const CurveSpec& s = p.chart == Chart::U ? u_spec : v_spec;
    return std::abs(s.f(0)(p.coord)) / std::pow(1.0 + std::norm(p.coord), 2.0 * s.d);
}

ChartPoint to_chart(const ChartPoint& p, Chart c) { return p.chart == c ? p : chart_transfer(p); }

int nearest_index(const std::vector<Complex>& zs, Complex q)
{
    int best = 0;
    for (int i = 1; i < static_cast<int>(zs.size()); ++i)
        if (std::abs(zs[i] - q) < std::abs(zs[best] - q))
            best = i;
    return best;
}

}  // namespace

IntegrationResult integrate_omega(const CurveSpec& spec, const LiftedPath& path, double tol)
{
    const CurveSpec opposite = spec.in_opposite_chart();
    const double q_floor = 1e-12 * std::max(1.0, std::pow(spec.coeff_scale(), 1.0 / spec.d));
    IntegrationResult out;
    double total_norm = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const ChartPoint& a = path.samples[i];
        const ChartPoint b = to_chart(path.samples[i + 1], a.chart);
        const CurveSpec& s = a.chart == Chart::U ? spec : opposite;
        if (std::abs(a.second) <= q_floor || std::abs(b.second) <= q_floor)
            throw Error(ErrorCode::PoleOnPath, "integrate_omega: path meets the zero section");
        if (a.first == b.first)
            continue;
        Segment seg{&s, a.chart, a.first, b.first, a.second, b.second,
                    -s.d_du(a.first, a.second) / s.d_dq(a.first, a.second),
                    -s.d_du(b.first, b.second) / s.d_dq(b.first, b.second), q_floor};
        const GkResult r = adaptive(seg, tol);
        out.value += r.value;
        out.error_estimate += r.err;
        total_norm += r.value.norm();
    }
    if (!(out.error_estimate <= tol * (1.0 + total_norm)))
        throw Error(ErrorCode::ToleranceNotMet, "integrate_omega: error estimate above tolerance");
    return out;
}

SpherePoint default_base_point(const CurveSpec& spec, int resolution)
{
    const Grid g = make_grid(resolution);
    const CurveSpec opposite = spec.in_opposite_chart();
    SpherePoint best = g.nodes.front();
    double best_val = -1.0;
    for (const auto& n : g.nodes) {
        const double v = zero_section_distance(spec, opposite, n);
        if (v > best_val) {
            best_val = v;
            best = n;
        }
    }
    return best;
}

SurfaceMesh reconstruct_mesh(const CurveSpec& spec, const MeshConfig& config)
{
    const Grid g = make_grid(config.resolution);
    const int n_nodes = static_cast<int>(g.nodes.size());

    SurfaceMesh mesh;
    mesh.exclusion_radius = config.exclusion_radius;
    mesh.exclusion_centers = special_points(spec);
    mesh.sheet_count = spec.d;
    mesh.grid_nodes = n_nodes;

    auto excluded = [&](const SpherePoint& p) {
        for (const auto& c : mesh.exclusion_centers)
            if (chordal(p, c) < config.exclusion_radius)
                return true;
        return false;
    };

    std::vector<char> node_ok(static_cast<std::size_t>(n_nodes), 0);
    std::vector<std::vector<Complex>> sheets(static_cast<std::size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) {
        if (excluded(g.nodes[static_cast<std::size_t>(i)]))
            continue;
        auto zs = sheets_at(spec, g.nodes[static_cast<std::size_t>(i)]);
        bool ok = static_cast<int>(zs.size()) == spec.d;
        for (const auto& z : zs)
            ok = ok && z != 0.0;
        if (ok) {
            node_ok[static_cast<std::size_t>(i)] = 1;
            sheets[static_cast<std::size_t>(i)] = std::move(zs);
        }
    }

    // Base node: nearest usable grid node to the requested point.
    const SpherePoint want = config.base ? *config.base : default_base_point(spec, config.resolution);
    int base = -1;
    for (int i = 0; i < n_nodes; ++i)
        if (node_ok[static_cast<std::size_t>(i)] &&
            (base < 0 || chordal(g.nodes[static_cast<std::size_t>(i)], want) <
                             chordal(g.nodes[static_cast<std::size_t>(base)], want)))
            base = i;
    if (base < 0)
        throw Error(ErrorCode::DisconnectedDomain, "reconstruct_mesh: every grid node is excluded");
    mesh.base = g.nodes[static_cast<std::size_t>(base)];

    const int d = spec.d;
    auto vid = [d](int node, int sheet) { return node * d + sheet; };
    struct Link {
        int to;
        CVec3 value;
    };
    std::vector<std::vector<Link>> adj(static_cast<std::size_t>(n_nodes * d));
    std::vector<std::vector<int>> node_adj(static_cast<std::size_t>(n_nodes));

    for (const auto& [a, b] : g.edges) {
        if (!node_ok[static_cast<std::size_t>(a)] || !node_ok[static_cast<std::size_t>(b)])
            continue;
        const SpherePoint& pa = g.nodes[static_cast<std::size_t>(a)];
        const SpherePoint& pb = g.nodes[static_cast<std::size_t>(b)];
        if (excluded(midpoint(pa, pb)))
            continue;
        bool any = false;
        for (int s = 0; s < d; ++s) {
            try {
                const LiftedPath lp = lift_path(spec, {pa, pb}, sheets[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)]);
                const ChartPoint end = to_chart(lp.back(), pb.chart);
                const auto& zb = sheets[static_cast<std::size_t>(b)];
                const int t = nearest_index(zb, end.second);
                if (std::abs(zb[static_cast<std::size_t>(t)] - end.second) > 1e-6 * (1.0 + std::abs(end.second)))
                    continue;
                const IntegrationResult r = integrate_omega(spec, lp, config.tol);
                adj[static_cast<std::size_t>(vid(a, s))].push_back({vid(b, t), r.value});
                adj[static_cast<std::size_t>(vid(b, t))].push_back({vid(a, s), -r.value});
                any = true;
            } catch (const Error&) {
            }
        }
        if (any) {
            node_adj[static_cast<std::size_t>(a)].push_back(b);
            node_adj[static_cast<std::size_t>(b)].push_back(a);
        }
    }

    // Every usable node must be reachable from the base.
    {
        std::vector<char> seen(static_cast<std::size_t>(n_nodes), 0);
        std::deque<int> queue{base};
        seen[static_cast<std::size_t>(base)] = 1;
        while (!queue.empty()) {
            const int n = queue.front();
            queue.pop_front();
            for (int m : node_adj[static_cast<std::size_t>(n)])
                if (!seen[static_cast<std::size_t>(m)]) {
                    seen[static_cast<std::size_t>(m)] = 1;
                    queue.push_back(m);
                }
        }
        for (int i = 0; i < n_nodes; ++i)
            if (node_ok[static_cast<std::size_t>(i)] && !seen[static_cast<std::size_t>(i)])
                throw Error(ErrorCode::DisconnectedDomain, "reconstruct_mesh: excluded disks disconnect the grid");
    }

    // Positions by breadth-first accumulation; sheets not reached from the
    // base sheet start their own tree at the base node.
    const int n_lifted = n_nodes * d;
    std::vector<char> placed(static_cast<std::size_t>(n_lifted), 0);
    std::vector<CVec3> pos(static_cast<std::size_t>(n_lifted), CVec3::Zero());
    std::vector<int> sources;
    for (int s = 0; s < d; ++s)
        sources.push_back(vid(base, s));
    for (int i = 0; i < n_lifted; ++i)
        sources.push_back(i);
    for (int src : sources) {
        if (placed[static_cast<std::size_t>(src)] || !node_ok[static_cast<std::size_t>(src / d)])
            continue;
        placed[static_cast<std::size_t>(src)] = 1;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (const auto& l : adj[static_cast<std::size_t>(v)])
                if (!placed[static_cast<std::size_t>(l.to)]) {
                    placed[static_cast<std::size_t>(l.to)] = 1;
                    pos[static_cast<std::size_t>(l.to)] = pos[static_cast<std::size_t>(v)] + l.value;
                    queue.push_back(l.to);
                }
        }
    }

    std::vector<int> out_index(static_cast<std::size_t>(n_lifted), -1);
    for (int v = 0; v < n_lifted; ++v) {
        if (!placed[static_cast<std::size_t>(v)])
            continue;
        const int node = v / d, s = v % d;
        const SpherePoint& p = g.nodes[static_cast<std::size_t>(node)];
        MeshVertex mv;
        mv.complex_position = pos[static_cast<std::size_t>(v)];
        mv.position = mv.complex_position.real();
        mv.normal = gauss_point(p.chart, p.coord);
        mv.param = {p.chart, p.coord, sheets[static_cast<std::size_t>(node)][static_cast<std::size_t>(s)]};
        mv.sheet = s;
        out_index[static_cast<std::size_t>(v)] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(mv);
    }

    auto step = [&](int v, int node) -> const Link* {
        for (const auto& l : adj[static_cast<std::size_t>(v)])
            if (l.to / d == node)
                return &l;
        return nullptr;
    };

    for (const auto& cell : g.cells) {
        bool usable = true;
        for (int n : cell)
            usable = usable && node_ok[static_cast<std::size_t>(n)];
        if (!usable) {
            mesh.skipped_cells += d;
            continue;
        }
        for (int s = 0; s < d; ++s) {
            std::vector<int> lifted{vid(cell[0], s)};
            bool ok = true;
            for (std::size_t k = 1; k <= cell.size() && ok; ++k) {
                const int cur = lifted.back();
                const Link* l = step(cur, cell[k % cell.size()]);
                if (!l) {
                    ok = false;
                    break;
                }
                const CVec3 jump = pos[static_cast<std::size_t>(l->to)] - pos[static_cast<std::size_t>(cur)] - l->value;
                const double scale = 1.0 + pos[static_cast<std::size_t>(cur)].norm() + l->value.norm();
                if (jump.real().norm() > 1e-7 * scale)
                    ok = false;
                if (k < cell.size())
                    lifted.push_back(l->to);
                else if (l->to != lifted.front())
                    ok = false;
            }
            if (!ok) {
                ++mesh.skipped_cells;
                continue;
            }
            std::vector<int> idx;
            for (int v : lifted)
                idx.push_back(out_index[static_cast<std::size_t>(v)]);
            auto emit = [&](int a, int b, int c) {
                const Vec3& pa = mesh.vertices[static_cast<std::size_t>(a)].position;
                const Vec3 nrm = (mesh.vertices[static_cast<std::size_t>(b)].position - pa)
                                     .cross(mesh.vertices[static_cast<std::size_t>(c)].position - pa);
                const Vec3 avg = mesh.vertices[static_cast<std::size_t>(a)].normal +
                                 mesh.vertices[static_cast<std::size_t>(b)].normal +
                                 mesh.vertices[static_cast<std::size_t>(c)].normal;
                if (nrm.dot(avg) < 0.0)
                    std::swap(b, c);
                mesh.faces.push_back({a, b, c});
            };
            emit(idx[0], idx[1], idx[2]);
            if (idx.size() == 4)
                emit(idx[0], idx[2], idx[3]);
        }
    }
    return mesh;
}

double total_curvature(const CurveSpec& spec, int n_polar, int n_azimuth)
{
    if (n_polar < 1 || n_azimuth < 1)
        throw Error(ErrorCode::InvalidParams, "total_curvature: grid sizes must be positive");
    // Gauss-Legendre nodes by Golub-Welsch.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_polar, n_polar);
    for (int i = 1; i < n_polar; ++i)
        J(i, i - 1) = J(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const CurveSpec opposite = spec.in_opposite_chart();
    double total = 0.0;
    for (int i = 0; i < n_polar; ++i) {
        const double z = es.eigenvalues()(i);
        const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        const double rho = std::sqrt((1.0 - z) / (1.0 + z));
        for (int j = 0; j < n_azimuth; ++j) {
            const double theta = 2.0 * std::numbers::pi * (j + 0.5) / n_azimuth;
            const bool in_u = rho <= 1.0;
            const Complex x = in_u ? std::polar(rho, theta) : std::polar(1.0 / rho, -theta);
            const CurveSpec& s = in_u ? spec : opposite;
            // area element of the sphere coordinate (dz dtheta) in the chart plane
            const double jac = std::pow(1.0 + std::norm(x), 2) / 4.0;
            double acc = 0.0;
            for (const Root& r : roots(s.fiber_poly(x), 1e-12)) {
                double kda;
                if (std::abs(r.value) == 0.0) {
                    kda = -4.0 / std::pow(1.0 + std::norm(x), 2);
                } else {
                    const CurvatureArea ca = curvature_area_density(x, r.value);
                    kda = ca.K * ca.dA_factor;
                }
                acc += r.multiplicity * kda * jac;
            }
            total += w * (2.0 * std::numbers::pi / n_azimuth) * acc;
        }
    }
    return total;
}

void write_obj(const SurfaceMesh& mesh, std::ostream& out)
{
    out.precision(12);
    for (const auto& v : mesh.vertices)
        out << "v " << v.position.x() << ' ' << v.position.y() << ' ' << v.position.z() << '\n';
    for (const auto& v : mesh.vertices)
        out << "vn " << v.normal.x() << ' ' << v.normal.y() << ' ' << v.normal.z() << '\n';
    std::map<int, std::vector<const std::array<int, 3>*>> by_sheet;
    for (const auto& f : mesh.faces)
        by_sheet[mesh.vertices[static_cast<std::size_t>(f[0])].sheet].push_back(&f);
    for (const auto& [sheet, faces] : by_sheet) {
        out << "o sheet_" << sheet << '\n';
        for (const auto* f : faces) {
            out << 'f';
            for (int i : *f)
                out << ' ' << i + 1 << "//" << i + 1;
            out << '\n';
        }
    }
}

void write_ply(const SurfaceMesh& mesh, std::ostream& out)
{
    out.precision(12);
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << '\n';
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "property double nx\nproperty double ny\nproperty double nz\n";
    out << "element face " << mesh.faces.size() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices)
        out << v.position.x() << ' ' << v.position.y() << ' ' << v.position.z() << ' ' << v.normal.x() << ' '
            << v.normal.y() << ' ' << v.normal.z() << '\n';
    for (const auto& f : mesh.faces)
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

}  // namespace minsurf
