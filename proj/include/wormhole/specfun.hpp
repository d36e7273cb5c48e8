#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace wormhole {

using Complex = std::complex<double>;
// Extended-precision scalar used inside residual evaluation paths, where
// closed forms near a singular endpoint cancel by many more digits than a
// double carries.
using ComplexL = std::complex<long double>;

namespace specfun {

// Dense polynomial with complex coefficients, c[k] multiplying x^k.
// Derivatives are exact coefficient manipulations, which is what the ODE
// residual checks rely on (no finite differencing of closed forms).
struct Poly {
    std::vector<Complex> c;

    Complex eval(Complex x) const;
    Poly derivative() const;
    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim(double rel_tol = 0.0);
};

// Terminating Gauss hypergeometric series 2F1(a, b; c; x). One of a, b must
// be a nonpositive integer within 1e-12; the sum then has that many terms.
Complex hyp2f1_poly(Complex a, Complex b, Complex c, Complex x);

// Series coefficients of the same terminating 2F1 as a polynomial in x.
Poly hyp2f1_poly_coeffs(Complex a, Complex b, Complex c);

// Generalized Laguerre L_n^alpha(x) by the three-term recurrence.
Complex laguerre(int n, Complex alpha, Complex x);
Poly laguerre_coeffs(int n, Complex alpha);

// Jacobi P_n^(alpha,beta)(x) by the three-term recurrence.
Complex jacobi_poly(int n, Complex alpha, Complex beta, Complex x);
Poly jacobi_poly_coeffs(int n, Complex alpha, Complex beta);

// Carlson symmetric elliptic integrals (real, nonnegative arguments; at most
// one of x, y may vanish; z > 0 for rd).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);

// Incomplete elliptic integrals F(phi | m), E(phi | m) with the parameter
// convention (m = k^2). m*sin^2(phi) must not exceed 1.
double ellip_f_inc(double phi, double m);
double ellip_e_inc(double phi, double m);

// Globally adaptive Gauss-Kronrod 7/15 quadrature to absolute tolerance.
// If nodes is non-null, every abscissa the integrand was evaluated at is
// appended (used by the embedding self-check).
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10, std::vector<double>* nodes = nullptr);

} // namespace specfun
} // namespace wormhole
