#pragma once

#include "minsurf/curve_spec.hpp"

#include <vector>

namespace minsurf::detail {

// Dense F(s, t) = sum a(i, j) s^i t^j.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(int s_size, int t_size) : ns_(s_size), nt_(t_size), a_(static_cast<std::size_t>(s_size * t_size), 0.0) {}

    int s_size() const { return ns_; }
    int t_size() const { return nt_; }
    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * nt_ + j)]; }
    Complex operator()(int i, int j) const
    {
        if (i < 0 || j < 0 || i >= ns_ || j >= nt_)
            return 0.0;
        return a_[static_cast<std::size_t>(i * nt_ + j)];
    }
    double max_abs() const;

private:
    int ns_ = 0;
    int nt_ = 0;
    std::vector<Complex> a_;
};

// f(u0 + s, q0 + t).
BiPoly local_expansion(const CurveSpec& spec, Complex u0, Complex q0);

struct PuiseuxBranch {
    int k = 0;  // order of s along the branch
    int l = 0;  // order of t along the branch
    Complex s_lead;
    Complex t_lead;
};

// Branches of F = 0 through the origin, by Newton-Puiseux. Coefficients with
// |a| <= rel_tol * max|a| count as zero. When allow_t_factor is false a
// factor t (component inside t = 0) raises DegenerateBranch; a factor s
// always does.
std::vector<PuiseuxBranch> branches_at_origin(const BiPoly& F, double rel_tol, bool allow_t_factor);

}  // namespace minsurf::detail
