#include "lattice.hpp"

#include <cmath>
#include <utility>

namespace minsurf::detail {

namespace {

using LD = long double;
using Row = std::vector<LD>;

LD dot(const Row& a, const Row& b)
{
    LD s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

void gram_schmidt(const std::vector<Row>& b, std::vector<Row>& bs, std::vector<std::vector<LD>>& mu, std::vector<LD>& norms)
{
    const std::size_t m = b.size();
    bs = b;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = norms[j] > 0 ? dot(b[i], bs[j]) / norms[j] : 0;
            for (std::size_t t = 0; t < b[i].size(); ++t)
                bs[i][t] -= mu[i][j] * bs[j][t];
        }
        norms[i] = dot(bs[i], bs[i]);
    }
}

}  // namespace

std::vector<IntVec> integer_reduce(const std::vector<Eigen::VectorXd>& gens, double weight)
{
    const std::size_t m = gens.size();
    if (m == 0)
        return {};
    const std::size_t n = static_cast<std::size_t>(gens[0].size());
    std::vector<Row> b(m, Row(m + n, 0));
    for (std::size_t i = 0; i < m; ++i) {
        b[i][i] = 1;
        for (std::size_t t = 0; t < n; ++t)
            b[i][m + t] = static_cast<LD>(weight) * gens[i](static_cast<Eigen::Index>(t));
    }
    std::vector<Row> bs;
    std::vector<std::vector<LD>> mu(m, std::vector<LD>(m, 0));
    std::vector<LD> norms(m, 0);
    gram_schmidt(b, bs, mu, norms);
    const LD delta = 0.99L;
    std::size_t k = 1;
    int guard = 0;
    while (k < m && guard++ < 200000) {
        for (std::size_t j = k; j-- > 0;) {
            const LD r = std::round(mu[k][j]);
            if (r != 0) {
                for (std::size_t t = 0; t < m + n; ++t)
                    b[k][t] -= r * b[j][t];
                for (std::size_t t = 0; t < j; ++t)
                    mu[k][t] -= r * mu[j][t];
                mu[k][j] -= r;
            }
        }
        if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt(b, bs, mu, norms);
            k = k > 1 ? k - 1 : 1;
        }
    }
    std::vector<IntVec> out(m, IntVec(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < m; ++t)
            out[i][t] = std::llround(b[i][t]);
    return out;
}

Eigen::VectorXd combine(const IntVec& c, const std::vector<Eigen::VectorXd>& gens)
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(gens.empty() ? 0 : gens[0].size());
    for (std::size_t i = 0; i < c.size(); ++i)
        v += static_cast<double>(c[i]) * gens[i];
    return v;
}

int numerical_rank(const std::vector<Eigen::VectorXd>& vs, double rel_tol)
{
    if (vs.empty())
        return 0;
    Eigen::MatrixXd A(vs[0].size(), static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        A.col(static_cast<Eigen::Index>(i)) = vs[i];
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        r += s(i) > rel_tol * s(0) ? 1 : 0;
    return r;
}

}  // namespace minsurf::detail
