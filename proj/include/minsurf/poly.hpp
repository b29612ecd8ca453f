#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace minsurf {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

/// Univariate complex polynomial, coefficients in ascending degree.
///
/// Exact trailing zeros are trimmed on construction, so the last stored
/// coefficient is nonzero unless the polynomial is zero. The zero polynomial
/// reports degree() == -1 (standing in for minus infinity).
class PolyU {
public:
    PolyU() = default;
    explicit PolyU(std::vector<Complex> coeffs);
    PolyU(std::initializer_list<Complex> coeffs);

    static PolyU constant(Complex c);
    static PolyU monomial(Complex c, int power);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const Complex> coeffs() const { return coeffs_; }

    // Coefficient of u^i; zero outside [0, degree].
    Complex operator[](int i) const;
    Complex leading() const;

    Complex operator()(Complex u) const;
    // Sum of |a_i| |u|^i: the natural magnitude against which |p(u)| is judged.
    double magnitude_at(Complex u) const;
    double max_coeff() const;

    PolyU derivative() const;
    // p(a + s) as a polynomial in s.
    PolyU taylor_shift(Complex a) const;
    // p(c u) as a polynomial in u.
    PolyU scaled_argument(Complex c) const;
    // u^n p(1/u); requires degree() <= n.
    PolyU reversed(int n) const;
    // Drops coefficients with |a_i| <= rel_tol * max_coeff().
    PolyU chopped(double rel_tol) const;

    PolyU& operator+=(const PolyU& o);
    PolyU& operator-=(const PolyU& o);
    PolyU& operator*=(Complex c);

    friend PolyU operator+(PolyU a, const PolyU& b) { return a += b; }
    friend PolyU operator-(PolyU a, const PolyU& b) { return a -= b; }
    friend PolyU operator*(PolyU a, Complex c) { return a *= c; }
    friend PolyU operator*(Complex c, PolyU a) { return a *= c; }
    friend PolyU operator*(const PolyU& a, const PolyU& b);
    friend bool operator==(const PolyU& a, const PolyU& b) = default;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

struct Root {
    Complex value;
    int multiplicity = 1;
};

/// All roots of p with multiplicities summing to degree(p).
///
/// Simultaneous (Aberth-Ehrlich) iteration followed by cluster detection:
/// m computed roots are merged into one root of multiplicity m when they lie
/// within tol^(1/m) * max(1, |center|) of their centroid and the Taylor
/// coefficients of p at the centroid are consistent with an m-fold zero.
/// Merged centers are refined by Newton iteration on p^(m-1).
///
/// Throws ZeroPolynomial for p == 0 or deg p < 1, NonConvergence when the
/// iteration budget runs out with residuals above tolerance.
std::vector<Root> roots(const PolyU& p, double tol = 1e-10);

/// True iff p has no zero of multiplicity > 1 (constants count as true).
bool has_simple_zeros(const PolyU& p, double tol = 1e-10);

}  // namespace minsurf
