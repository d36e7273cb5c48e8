#pragma once

#include "wormhole/specfun.hpp"

#include <vector>

namespace wormhole {

// The closed-form eigenfunctions below are all built from one transcendental
// core variable V(u) (sinh, cosh, a squared half-angle sinh, a decaying
// exponential, or u itself) wrapped in power factors, an exponential, and a
// polynomial. Keeping that structure explicit lets us differentiate twice
// exactly, so ODE residuals measure the formulas and not a finite-difference
// scheme.

struct CoreVar {
    enum class Kind { Identity, SinhScaled, CoshScaled, SinhSqHalfScaled, ExpNegScaled };
    Kind kind = Kind::Identity;
    double r = 1.0; // scale in V(u) = f(u/r); SinhSqHalfScaled is sinh^2(u/(2r))

    void eval(double u, double& v, double& dv, double& ddv) const;
    void eval(double u, long double& v, long double& dv, long double& ddv) const;
};

struct PowerFactor {
    Complex base_const;          // base = base_const + base_lin * V
    Complex base_lin;
    Complex exponent;
    bool allow_cut = false;      // negative-real base allowed (principal side)
};

struct AnalyticTerm {
    Complex coeff{1.0, 0.0};
    std::vector<PowerFactor> factors;
    Complex exp_coeff{0.0, 0.0}; // times exp(exp_coeff * V)
    specfun::Poly poly;          // empty poly means the constant 1
    Complex arg_const{0.0, 0.0}; // polynomial argument = arg_const + arg_lin * V
    Complex arg_lin{1.0, 0.0};
};

struct ClosedForm {
    CoreVar core;
    std::vector<AnalyticTerm> terms;

    // Value and first two u-derivatives, all exact.  The extended-precision
    // overload is the primary implementation; residual checks need it because
    // a divergent factor V^p near the throat amplifies rounding in psi'' far
    // beyond the double tolerance they test against.
    void eval2(double u, ComplexL& f, ComplexL& df, ComplexL& ddf) const;
    void eval2(double u, Complex& f, Complex& df, Complex& ddf) const;
    Complex value(double u) const;
};

} // namespace wormhole
