#include "wormhole/specfun.hpp"
#include "wormhole/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace wormhole {
namespace specfun {

Complex Poly::eval(Complex x) const {
    Complex acc(0.0, 0.0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

Poly Poly::derivative() const {
    Poly d;
    if (c.size() <= 1) {
        d.c.assign(1, Complex(0.0, 0.0));
        return d;
    }
    d.c.resize(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d.c[k - 1] = c[k] * double(k);
    return d;
}

void Poly::trim(double rel_tol) {
    double mx = 0.0;
    for (const auto& v : c) mx = std::max(mx, std::abs(v));
    double cut = rel_tol * mx;
    while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
}

namespace {

// Nonpositive integer within 1e-12, used to detect terminating series.
bool is_nonpos_int(Complex z, int& value) {
    if (std::abs(z.imag()) > 1e-12) return false;
    double r = std::round(z.real());
    if (r > 0.5 || std::abs(z.real() - r) > 1e-12) return false;
    value = static_cast<int>(r);
    return true;
}

int termination_degree(Complex a, Complex b) {
    int ia = 0, ib = 0;
    bool ta = is_nonpos_int(a, ia);
    bool tb = is_nonpos_int(b, ib);
    if (!ta && !tb)
        fail(ErrorKind::InvalidArgument,
             "hyp2f1_poly: neither numerator parameter is a nonpositive integer");
    if (ta && tb) return -std::max(ia, ib);
    return ta ? -ia : -ib;
}

} // namespace

Poly hyp2f1_poly_coeffs(Complex a, Complex b, Complex c) {
    int n = termination_degree(a, b);
    Poly p;
    p.c.assign(static_cast<size_t>(n) + 1, Complex(0.0, 0.0));
    Complex term(1.0, 0.0);
    p.c[0] = term;
    for (int k = 0; k < n; ++k) {
        Complex num = (a + double(k)) * (b + double(k));
        if (std::abs(num) == 0.0) break; // series ended early
        Complex den = c + double(k);
        if (std::abs(den) <= 1e-12)
            fail(ErrorKind::PochhammerPole,
                 "hyp2f1_poly: lower parameter hits a nonpositive integer inside the sum");
        term *= num / (den * double(k + 1));
        p.c[static_cast<size_t>(k) + 1] = term;
    }
    return p;
}

Complex hyp2f1_poly(Complex a, Complex b, Complex c, Complex x) {
    return hyp2f1_poly_coeffs(a, b, c).eval(x);
}

Complex laguerre(int n, Complex alpha, Complex x) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "laguerre: n must be >= 0");
    Complex lm1(1.0, 0.0);
    if (n == 0) return lm1;
    Complex l = Complex(1.0, 0.0) + alpha - x;
    for (int k = 1; k < n; ++k) {
        Complex next = ((double(2 * k + 1) + alpha - x) * l - (double(k) + alpha) * lm1) / double(k + 1);
        lm1 = l;
        l = next;
    }
    return l;
}

Poly laguerre_coeffs(int n, Complex alpha) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "laguerre_coeffs: n must be >= 0");
    Poly lm1;
    lm1.c = {Complex(1.0, 0.0)};
    if (n == 0) return lm1;
    Poly l;
    l.c = {Complex(1.0, 0.0) + alpha, Complex(-1.0, 0.0)};
    for (int k = 1; k < n; ++k) {
        // (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
        Poly next;
        next.c.assign(l.c.size() + 1, Complex(0.0, 0.0));
        Complex a0 = double(2 * k + 1) + alpha;
        for (size_t j = 0; j < l.c.size(); ++j) {
            next.c[j] += a0 * l.c[j];
            next.c[j + 1] -= l.c[j];
        }
        Complex b0 = double(k) + alpha;
        for (size_t j = 0; j < lm1.c.size(); ++j) next.c[j] -= b0 * lm1.c[j];
        for (auto& v : next.c) v /= double(k + 1);
        lm1 = l;
        l = next;
    }
    return l;
}

namespace {

// Shared scaffolding for the Jacobi recurrence: advance from (P_{k-1}, P_k)
// using gamma1, gamma0, denom at step k, either on values or on coefficients.
void jacobi_step_coeffs(int k, Complex alpha, Complex beta, const Poly& pkm1, const Poly& pk, Poly& out) {
    Complex s = double(2 * k) + alpha + beta;
    Complex denom = 2.0 * double(k) * (double(k) + alpha + beta) * (s - 2.0);
    if (std::abs(denom) <= 1e-250)
        fail(ErrorKind::RecurrenceBreakdown, "jacobi_poly: vanishing recurrence denominator");
    Complex g1x = (s - 1.0) * s * (s - 2.0);           // multiplies x * P_{k-1}
    Complex g1c = (s - 1.0) * (alpha * alpha - beta * beta); // constant part on P_{k-1}
    Complex g0 = -2.0 * (double(k) + alpha - 1.0) * (double(k) + beta - 1.0) * s;
    out.c.assign(pk.c.size() + 1, Complex(0.0, 0.0));
    for (size_t j = 0; j < pk.c.size(); ++j) {
        out.c[j + 1] += g1x * pk.c[j];
        out.c[j] += g1c * pk.c[j];
    }
    for (size_t j = 0; j < pkm1.c.size(); ++j) out.c[j] += g0 * pkm1.c[j];
    for (auto& v : out.c) v /= denom;
}

} // namespace

Complex jacobi_poly(int n, Complex alpha, Complex beta, Complex x) {
    Poly p = jacobi_poly_coeffs(n, alpha, beta);
    return p.eval(x);
}

Poly jacobi_poly_coeffs(int n, Complex alpha, Complex beta) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "jacobi_poly: n must be >= 0");
    Poly pkm1;
    pkm1.c = {Complex(1.0, 0.0)};
    if (n == 0) return pkm1;
    Poly pk;
    pk.c = {alpha + 1.0 - (alpha + beta + 2.0) * 0.5, (alpha + beta + 2.0) * 0.5};
    for (int k = 2; k <= n; ++k) {
        Poly next;
        jacobi_step_coeffs(k, alpha, beta, pkm1, pk, next);
        pkm1 = pk;
        pk = next;
    }
    return pk;
}

double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0 || (x + y) == 0.0 || (x + z) == 0.0 || (y + z) == 0.0)
        fail(ErrorKind::InvalidArgument, "carlson_rf: arguments out of domain");
    const double errtol = 0.0025;
    double xt = x, yt = y, zt = z;
    double ave = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
    for (int it = 0; it < 200; ++it) {
        double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        double lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = (xt + yt + zt) / 3.0;
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) <= errtol) {
            double e2 = dx * dy - dz * dz;
            double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
        }
    }
    fail(ErrorKind::NoConvergence, "carlson_rf: duplication did not converge");
}

double carlson_rd(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z <= 0.0 || (x + y) == 0.0)
        fail(ErrorKind::InvalidArgument, "carlson_rd: arguments out of domain");
    const double errtol = 0.0015;
    const double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
    const double c5 = 0.25 * c3, c6 = 1.5 * c4;
    double xt = x, yt = y, zt = z, sum = 0.0, fac = 1.0;
    for (int it = 0; it < 200; ++it) {
        double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lam));
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        double ave = 0.2 * (xt + yt + 3.0 * zt);
        double dx = (ave - xt) / ave;
        double dy = (ave - yt) / ave;
        double dz = (ave - zt) / ave;
        if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) <= errtol) {
            double ea = dx * dy;
            double eb = dz * dz;
            double ec = ea - eb;
            double ed = ea - 6.0 * eb;
            double ee = ed + ec + ec;
            return 3.0 * sum +
                   fac *
                       (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                        dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (ave * std::sqrt(ave));
        }
    }
    fail(ErrorKind::NoConvergence, "carlson_rd: duplication did not converge");
}

double ellip_f_inc(double phi, double m) {
    if (std::fabs(phi) > 1.5707963267948966 + 1e-12)
        fail(ErrorKind::InvalidArgument, "ellip_f_inc: |phi| must not exceed pi/2");
    double s = std::sin(phi), c = std::cos(phi);
    double y = 1.0 - m * s * s;
    if (y < -1e-12) fail(ErrorKind::InvalidArgument, "ellip_f_inc: m*sin^2(phi) exceeds 1");
    y = std::max(y, 0.0);
    return s * carlson_rf(c * c, y, 1.0);
}

double ellip_e_inc(double phi, double m) {
    if (std::fabs(phi) > 1.5707963267948966 + 1e-12)
        fail(ErrorKind::InvalidArgument, "ellip_e_inc: |phi| must not exceed pi/2");
    double s = std::sin(phi), c = std::cos(phi);
    double y = 1.0 - m * s * s;
    if (y < -1e-12) fail(ErrorKind::InvalidArgument, "ellip_e_inc: m*sin^2(phi) exceeds 1");
    y = std::max(y, 0.0);
    double s3 = s * s * s;
    return s * carlson_rf(c * c, y, 1.0) - (m / 3.0) * s3 * carlson_rd(c * c, y, 1.0);
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss weights.
const double kron_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kron_w[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double gauss_w[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b, std::vector<double>* nodes) {
    double h = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double fk = 0.0, fg = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (i == 7) {
            double v = f(mid);
            if (nodes) nodes->push_back(mid);
            fk += kron_w[7] * v;
            fg += gauss_w[3] * v;
            break;
        }
        double xl = mid - h * kron_x[i];
        double xr = mid + h * kron_x[i];
        double vl = f(xl), vr = f(xr);
        if (nodes) {
            nodes->push_back(xl);
            nodes->push_back(xr);
        }
        fk += kron_w[i] * (vl + vr);
        if (i % 2 == 1) fg += gauss_w[i / 2] * (vl + vr);
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = fk * h;
    // |Kronrod - Gauss| is a conservative error bound for smooth integrands.
    s.error = std::max(std::fabs((fk - fg) * h), 1e-300);
    return s;
}

} // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, std::vector<double>* nodes) {
    if (!(abs_tol > 0.0)) fail(ErrorKind::InvalidArgument, "adaptive_quad: tolerance must be positive");
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Segment> heap;
    Segment whole = gk15(f, a, b, nodes);
    double total_err = whole.error;
    heap.push(whole);
    const int max_segments = 20000;
    int segments = 1;
    while (total_err > abs_tol && segments < max_segments) {
        Segment worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval already at floating-point resolution; accept its value
            // and stop charging its error against the budget.
            total_err -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            continue;
        }
        Segment left = gk15(f, worst.a, mid, nodes);
        Segment right = gk15(f, mid, worst.b, nodes);
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    if (total_err > abs_tol)
        fail(ErrorKind::NoConvergence, "adaptive_quad: tolerance not reached within segment budget");
    double sum = 0.0;
    std::vector<Segment> leaves;
    leaves.reserve(heap.size());
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    // Sum smallest-contribution first to limit roundoff in long runs.
    std::sort(leaves.begin(), leaves.end(),
              [](const Segment& l, const Segment& r) { return std::fabs(l.value) < std::fabs(r.value); });
    for (const auto& s : leaves) sum += s.value;
    return sign * sum;
}

} // namespace specfun
} // namespace wormhole
