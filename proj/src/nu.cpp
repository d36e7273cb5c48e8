#include "wormhole/nu.hpp"
#include "wormhole/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wormhole {
namespace nu {

NuDerived nu_derive(const NuProblem& p, Sqrt8Branch branch) {
    NuDerived d{};
    d.d4 = 0.5 * (1.0 - p.d1);
    d.d5 = 0.5 * (p.d2 - 2.0 * p.d3);
    d.d6 = d.d5 * d.d5 + p.z1;
    d.d7 = 2.0 * d.d4 * d.d5 - p.z2;
    d.d8 = d.d4 * d.d4 + p.z3;
    d.d9 = p.d3 * d.d7 + p.d3 * p.d3 * d.d8 + d.d6;
    d.sqrt8 = std::sqrt(d.d8);
    if (branch == Sqrt8Branch::Minus) d.sqrt8 = -d.sqrt8;
    d.sqrt9 = std::sqrt(d.d9);
    d.d10 = p.d1 + 2.0 * d.d4 + 2.0 * d.sqrt8;
    d.d11 = p.d2 - 2.0 * d.d5 + 2.0 * (d.sqrt9 + p.d3 * d.sqrt8);
    d.d12 = d.d4 + d.sqrt8;
    d.d13 = d.d5 - d.sqrt9 - p.d3 * d.sqrt8;
    return d;
}

Complex nu_energy_residual(const NuProblem& p, int n, Sqrt8Branch branch) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "nu_energy_residual: n must be >= 0");
    NuDerived d = nu_derive(p, branch);
    double dn = double(n);
    return dn * p.d2 - (2.0 * dn + 1.0) * d.d5 + (2.0 * dn + 1.0) * (d.sqrt9 + p.d3 * d.sqrt8) +
           dn * (dn - 1.0) * p.d3 + d.d7 + 2.0 * p.d3 * d.d8 + 2.0 * d.sqrt8 * d.sqrt9;
}

ClosedForm nu_wavefunction_form(const NuProblem& p, int n, Sqrt8Branch branch) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "nu_wavefunction_form: n must be >= 0");
    NuDerived d = nu_derive(p, branch);
    ClosedForm cf;
    cf.core = {CoreVar::Kind::Identity, 1.0};
    AnalyticTerm t;
    t.coeff = Complex(1.0, 0.0);
    t.factors.push_back({Complex(0.0, 0.0), Complex(1.0, 0.0), d.d12, false});
    if (std::abs(p.d3) <= 1e-14) {
        t.exp_coeff = d.d13;
        t.poly = specfun::laguerre_coeffs(n, d.d10 - 1.0);
        t.arg_const = Complex(0.0, 0.0);
        t.arg_lin = d.d11;
    } else {
        t.factors.push_back({Complex(1.0, 0.0), -p.d3, -d.d12 - d.d13 / p.d3, false});
        t.poly = specfun::jacobi_poly_coeffs(n, d.d10 - 1.0, d.d11 / p.d3 - d.d10 - 1.0);
        t.arg_const = Complex(1.0, 0.0);
        t.arg_lin = -2.0 * p.d3;
    }
    cf.terms.push_back(std::move(t));
    return cf;
}

Complex nu_wavefunction(const NuProblem& p, int n, Complex x, Sqrt8Branch branch) {
    NuDerived d = nu_derive(p, branch);
    if (std::abs(p.d3) <= 1e-14)
        return std::pow(x, d.d12) * std::exp(d.d13 * x) * specfun::laguerre(n, d.d10 - 1.0, d.d11 * x);
    return std::pow(x, d.d12) * std::pow(Complex(1.0, 0.0) - p.d3 * x, -d.d12 - d.d13 / p.d3) *
           specfun::jacobi_poly(n, d.d10 - 1.0, d.d11 / p.d3 - d.d10 - 1.0, Complex(1.0, 0.0) - 2.0 * p.d3 * x);
}

namespace {

Complex axis_point(double t, bool imaginary_axis) {
    return imaginary_axis ? Complex(0.0, t) : Complex(t, 0.0);
}

// Bisection on Re(residual) over a sign-change bracket.
double bisect_re(const std::function<Complex(double)>& f, double a, double b) {
    double fa = f(a).real();
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        double fm = f(mid).real();
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Secant targeting |f|^2 -> 0 from the flanks of a local minimum. Works for
// tangential zeros where |f| ~ sqrt(|t - t*|) and plain bracketing fails.
double secant_sq(const std::function<Complex(double)>& f, double t0, double t1, double lo, double hi) {
    double g0 = std::norm(f(t0));
    double g1 = std::norm(f(t1));
    for (int it = 0; it < 80; ++it) {
        if (g1 == g0) break;
        double t2 = t1 - g1 * (t1 - t0) / (g1 - g0);
        t2 = std::clamp(t2, lo, hi);
        if (t2 == t1) break;
        t0 = t1;
        g0 = g1;
        t1 = t2;
        g1 = std::norm(f(t1));
        if (g1 == 0.0) break;
    }
    return g1 <= g0 ? t1 : t0;
}

// Exact zeros often sit on representable points (e.g. E = M); scan the few
// neighbouring doubles and keep the argmin of |f|.
double snap_ulp(const std::function<Complex(double)>& f, double t) {
    double best = t;
    double best_v = std::abs(f(t));
    for (int dir = -1; dir <= 1; dir += 2) {
        double s = t;
        for (int k = 0; k < 4; ++k) {
            s = std::nextafter(s, dir < 0 ? -1e308 : 1e308);
            double v = std::abs(f(s));
            if (v < best_v) {
                best_v = v;
                best = s;
            }
        }
    }
    return best;
}

} // namespace

std::vector<Complex> nu_solve_energy(const std::function<NuProblem(Complex)>& builder, int n,
                                     const EnergyScan& scan, Sqrt8Branch branch) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "nu_solve_energy: n must be >= 0");
    if (scan.nodes < 3 || !(scan.hi > scan.lo))
        fail(ErrorKind::InvalidArgument, "nu_solve_energy: bad scan window");

    auto f = [&](double t) { return nu_energy_residual(builder(axis_point(t, scan.imaginary_axis)), n, branch); };

    std::vector<double> ts(scan.nodes);
    std::vector<Complex> fs(scan.nodes);
    double fmax = 0.0;
    for (int k = 0; k < scan.nodes; ++k) {
        ts[k] = scan.lo + (scan.hi - scan.lo) * double(k) / double(scan.nodes - 1);
        fs[k] = f(ts[k]);
        fmax = std::max(fmax, std::abs(fs[k]));
    }
    double im_tol = 1e-8 * std::max(1.0, fmax);

    std::vector<double> roots_t;
    auto consider = [&](double t) {
        t = snap_ulp(f, t);
        if (std::abs(f(t)) > scan.accept_tol) return;
        for (double r0 : roots_t)
            if (std::fabs(r0 - t) <= 1e-9 * std::max(1.0, std::fabs(t))) return;
        roots_t.push_back(t);
    };

    for (int k = 0; k + 1 < scan.nodes; ++k) {
        bool re_flip = (fs[k].real() <= 0.0) != (fs[k + 1].real() <= 0.0);
        bool im_small = std::abs(fs[k].imag()) <= im_tol && std::abs(fs[k + 1].imag()) <= im_tol;
        if (re_flip && im_small) consider(bisect_re(f, ts[k], ts[k + 1]));
    }
    for (int k = 1; k + 1 < scan.nodes; ++k) {
        double v = std::abs(fs[k]);
        if (v < std::abs(fs[k - 1]) && v < std::abs(fs[k + 1]) && v < 0.5 * fmax)
            consider(secant_sq(f, ts[k - 1], ts[k + 1], scan.lo, scan.hi));
    }
    // Tangential zeros at the window edges (no interior flanking nodes).
    if (scan.nodes >= 2) {
        if (std::abs(fs[0]) < std::abs(fs[1])) consider(secant_sq(f, ts[1], ts[0], scan.lo, scan.hi));
        int last = scan.nodes - 1;
        if (std::abs(fs[last]) < std::abs(fs[last - 1]))
            consider(secant_sq(f, ts[last - 1], ts[last], scan.lo, scan.hi));
    }

    std::sort(roots_t.begin(), roots_t.end());
    std::vector<Complex> roots;
    roots.reserve(roots_t.size());
    for (double t : roots_t) roots.push_back(axis_point(t, scan.imaginary_axis));
    return roots;
}

} // namespace nu
} // namespace wormhole
