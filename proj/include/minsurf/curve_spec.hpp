#pragma once

#include "minsurf/poly.hpp"

#include <string>
#include <vector>

namespace minsurf {

/// Bivariate polynomial f(u, q) = sum_j f_j(u) q^j cutting out a curve in the
/// line bundle Q in the (u, q) trivialization.
///
/// After normalization f_d == -1 and deg f_j <= 4 (d - j). The same type is
/// used for the curve written in the opposite chart (v, r), where the
/// coefficients are u^(4(d-j)) f_j(1/u).
struct CurveSpec {
    int d = 0;
    std::vector<PolyU> coeffs;  // f_0 .. f_d
    std::string name;

    const PolyU& f(int j) const { return coeffs.at(static_cast<std::size_t>(j)); }

    Complex eval(Complex u, Complex q) const;
    Complex d_dq(Complex u, Complex q) const;
    Complex d_du(Complex u, Complex q) const;
    // Sum of |f_j(u)| |q|^j, the scale against which residuals are measured.
    double magnitude(Complex u, Complex q) const;
    // f(u, .) as a polynomial in q.
    PolyU fiber_poly(Complex u) const;
    // The same curve in the opposite chart: (u, q) -> (1/u, q/u^4).
    CurveSpec in_opposite_chart() const;
    // Largest coefficient modulus over all f_j.
    double coeff_scale() const;
};

}  // namespace minsurf
