#include "wormhole/closedform.hpp"
#include "wormhole/errors.hpp"

#include <cmath>

namespace wormhole {

void CoreVar::eval(double u, long double& v, long double& dv, long double& ddv) const {
    long double x = static_cast<long double>(u) / r;
    switch (kind) {
        case Kind::Identity:
            v = u;
            dv = 1.0L;
            ddv = 0.0L;
            return;
        case Kind::SinhScaled:
            v = std::sinh(x);
            dv = std::cosh(x) / r;
            ddv = v / (static_cast<long double>(r) * r);
            return;
        case Kind::CoshScaled:
            v = std::cosh(x);
            dv = std::sinh(x) / r;
            ddv = v / (static_cast<long double>(r) * r);
            return;
        case Kind::SinhSqHalfScaled: {
            // Full relative accuracy down to u = 0, where cosh-based bases like
            // 1 - cosh(u/r) = -2 sinh^2(u/(2r)) would cancel catastrophically.
            long double sh = std::sinh(0.5L * x);
            long double ch = std::cosh(0.5L * x);
            v = sh * sh;
            dv = sh * ch / r;
            ddv = (ch * ch + sh * sh) / (2.0L * r * r);
            return;
        }
        case Kind::ExpNegScaled:
            v = std::exp(-x);
            dv = -v / r;
            ddv = v / (static_cast<long double>(r) * r);
            return;
    }
}

void CoreVar::eval(double u, double& v, double& dv, double& ddv) const {
    long double lv = 0.0L, ldv = 0.0L, lddv = 0.0L;
    eval(u, lv, ldv, lddv);
    v = static_cast<double>(lv);
    dv = static_cast<double>(ldv);
    ddv = static_cast<double>(lddv);
}

namespace {

ComplexL widen(Complex z) { return ComplexL(z.real(), z.imag()); }

bool is_integer(Complex p) {
    return p.imag() == 0.0 && p.real() == std::round(p.real());
}

ComplexL principal_pow(ComplexL base, Complex p, bool allow_cut) {
    if (base.imag() == 0.0L) {
        if (base.real() == 0.0L) {
            if (p == Complex(0.0, 0.0)) return ComplexL(1.0L, 0.0L);
            fail(ErrorKind::ThroatSingularity,
                 "closed form evaluated where a power-factor base vanishes");
        }
        if (base.real() < 0.0L) {
            if (!is_integer(p) && !allow_cut)
                fail(ErrorKind::BranchCutHit,
                     "closed form evaluated on a branch cut of a power factor");
            // Pin the +i0 side so the principal value is deterministic.
            base = ComplexL(base.real(), +0.0L);
        }
    }
    return std::exp(widen(p) * std::log(base));
}

// Horner evaluation of the deriv-th derivative of a polynomial whose
// coefficients were produced in double precision.
ComplexL poly_deriv_eval(const specfun::Poly& poly, int deriv, ComplexL y) {
    ComplexL acc(0.0L, 0.0L);
    for (std::size_t i = poly.c.size(); i-- > static_cast<std::size_t>(deriv);) {
        long double fall = 1.0L;
        for (int k = 0; k < deriv; ++k) fall *= static_cast<long double>(i - k);
        acc = acc * y + fall * widen(poly.c[i]);
    }
    return acc;
}

} // namespace

void ClosedForm::eval2(double u, ComplexL& f, ComplexL& df, ComplexL& ddf) const {
    long double v, dv, ddv;
    core.eval(u, v, dv, ddv);
    f = df = ddf = ComplexL(0.0L, 0.0L);
    for (const auto& t : terms) {
        // W = coeff * prod(base^p) * exp(e*V); T = W * P(y).
        ComplexL w = widen(t.coeff);
        ComplexL logdot(0.0L, 0.0L);  // dW/du / W
        ComplexL logddot(0.0L, 0.0L); // d(logdot)/du
        for (const auto& pf : t.factors) {
            ComplexL lin = widen(pf.base_lin);
            ComplexL base = widen(pf.base_const) + lin * v;
            w *= principal_pow(base, pf.exponent, pf.allow_cut);
            ComplexL e = widen(pf.exponent);
            logdot += e * lin / base * dv;
            logddot += e * (lin * ddv * base - lin * lin * dv * dv) / (base * base);
        }
        if (t.exp_coeff != Complex(0.0, 0.0)) {
            ComplexL e = widen(t.exp_coeff);
            w *= std::exp(e * v);
            logdot += e * dv;
            logddot += e * ddv;
        }
        ComplexL p(1.0L, 0.0L), p1(0.0L, 0.0L), p2(0.0L, 0.0L);
        if (!t.poly.c.empty()) {
            ComplexL lin = widen(t.arg_lin);
            ComplexL y = widen(t.arg_const) + lin * v;
            ComplexL yd = lin * dv;
            ComplexL ydd = lin * ddv;
            ComplexL pv = poly_deriv_eval(t.poly, 0, y);
            ComplexL pd = poly_deriv_eval(t.poly, 1, y);
            ComplexL pdd = poly_deriv_eval(t.poly, 2, y);
            p = pv;
            p1 = pd * yd;
            p2 = pdd * yd * yd + pd * ydd;
        }
        f += w * p;
        df += w * (logdot * p + p1);
        ddf += w * ((logdot * logdot + logddot) * p + 2.0L * logdot * p1 + p2);
    }
}

void ClosedForm::eval2(double u, Complex& f, Complex& df, Complex& ddf) const {
    ComplexL lf, ldf, lddf;
    eval2(u, lf, ldf, lddf);
    f = Complex(static_cast<double>(lf.real()), static_cast<double>(lf.imag()));
    df = Complex(static_cast<double>(ldf.real()), static_cast<double>(ldf.imag()));
    ddf = Complex(static_cast<double>(lddf.real()), static_cast<double>(lddf.imag()));
}

Complex ClosedForm::value(double u) const {
    Complex f, df, ddf;
    eval2(u, f, df, ddf);
    return f;
}

} // namespace wormhole
