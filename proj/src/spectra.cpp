#include "wormhole/spectra.hpp"
#include "wormhole/errors.hpp"
#include "wormhole/nu.hpp"

#include <cmath>
#include <utility>

namespace wormhole {
namespace spectra {

Complex tau_from_coupling(const LsvCoupling& c) {
    return Complex(0.0, -1.0) * c.lambda * c.k_db_21 * c.b0;
}

Complex sector_tau(TauSector s) {
    return s == TauSector::Minus ? Complex(-0.5, 0.0) : Complex(0.5, 0.0);
}

TauSector sector_from_tau(Complex tau) {
    if (std::abs(tau - Complex(-0.5, 0.0)) <= 1e-12) return TauSector::Minus;
    if (std::abs(tau - Complex(0.5, 0.0)) <= 1e-12) return TauSector::Plus;
    fail(ErrorKind::UnsupportedCoupling,
         "closed-form spectra exist only at tau = -1/2 or tau = +1/2");
}

int corresponding_class(int solution_class) {
    if (solution_class < 1 || solution_class > 4)
        fail(ErrorKind::InvalidArgument, "solution class must be 1..4");
    return 5 - solution_class;
}

namespace {

void check_class_family_args(geometry::Family family, double r, double scale) {
    if (family != geometry::Family::Hyperbolic && family != geometry::Family::Elliptic)
        fail(ErrorKind::InvalidArgument,
             "ansatz classes exist for the hyperbolic and elliptic families only");
    if (!(r > 0.0) || !(scale > 0.0))
        fail(ErrorKind::InvalidArgument, "r and scale must be positive");
    if (family == geometry::Family::Elliptic && !(scale < r))
        fail(ErrorKind::EmptyDomain, "elliptic family requires scale < r");
}

} // namespace

std::array<SolutionClass, 4> ansatz_classes(geometry::Family family, TauSector sector,
                                            double m, double r, double scale) {
    check_class_family_args(family, r, scale);
    double h = 0.5 * m * r / scale; // half of a = m r / scale
    std::array<SolutionClass, 4> cls;
    if (family == geometry::Family::Hyperbolic) {
        cls[0] = {1, Complex(0.0, -h), Complex(0.0, h)};
        cls[1] = {2, Complex(0.0, -h), Complex(0.5, -h)};
        cls[2] = {3, Complex(0.5, h), Complex(0.0, h)};
        cls[3] = {4, Complex(0.5, h), Complex(0.5, -h)};
    } else {
        cls[0] = {1, Complex(-h, 0.0), Complex(h, 0.0)};
        cls[1] = {2, Complex(-h, 0.0), Complex(0.5 - h, 0.0)};
        cls[2] = {3, Complex(0.5 + h, 0.0), Complex(h, 0.0)};
        cls[3] = {4, Complex(0.5 + h, 0.0), Complex(0.5 - h, 0.0)};
    }
    if (sector == TauSector::Plus)
        for (auto& c : cls) {
            c.alpha_bar = -c.alpha_bar;
            c.beta_bar = -c.beta_bar;
        }
    return cls;
}

std::array<Complex, 2> ansatz_system_residual(geometry::Family family, TauSector sector,
                                              Complex alpha_bar, Complex beta_bar, double a) {
    const Complex i(0.0, 1.0);
    Complex a1 = alpha_bar, b1 = beta_bar;
    Complex r1, r2;
    if (family == geometry::Family::Hyperbolic) {
        if (sector == TauSector::Minus) {
            r1 = a - i * a1 + 2.0 * i * a1 * a1 + i * b1 - 2.0 * i * b1 * b1;
            r2 = -a * a - 2.0 * (a1 * a1 + b1 * b1) + a1 + b1;
        } else {
            r1 = a + i * a1 + 2.0 * i * a1 * a1 - i * b1 - 2.0 * i * b1 * b1;
            r2 = -a * a - 2.0 * (a1 * a1 + b1 * b1) - a1 - b1;
        }
    } else if (family == geometry::Family::Elliptic) {
        if (sector == TauSector::Minus) {
            r1 = a + a1 - 2.0 * a1 * a1 - b1 + 2.0 * b1 * b1;
            r2 = a * a - 2.0 * (a1 * a1 + b1 * b1) + a1 + b1;
        } else {
            r1 = a - a1 - 2.0 * a1 * a1 + b1 + 2.0 * b1 * b1;
            r2 = a * a - 2.0 * (a1 * a1 + b1 * b1) - a1 - b1;
        }
    } else {
        fail(ErrorKind::InvalidArgument, "ansatz residuals: hyperbolic or elliptic only");
    }
    return {r1, r2};
}

namespace {

void check_level_args(int solution_class, const QuantumNumbers& qn, double r, double scale) {
    if (solution_class < 1 || solution_class > 4)
        fail(ErrorKind::InvalidArgument, "solution class must be 1..4");
    if (qn.n < 0) fail(ErrorKind::InvalidArgument, "quantum number n must be >= 0");
    if (!(r > 0.0) || !(scale > 0.0))
        fail(ErrorKind::InvalidArgument, "r and scale must be positive");
}

EnergyPair finish_pair(Complex plus, int n) {
    EnergyPair e;
    e.plus = plus;
    e.minus = -plus;
    e.degenerate = (plus == Complex(0.0, 0.0));
    if (n == 0) e.note = "n=0 lies outside the published level range";
    if (e.degenerate) {
        if (!e.note.empty()) e.note += "; ";
        e.note += "degenerate pair: both branches vanish";
    }
    return e;
}

EnergyPair shift_family_energy(geometry::Family family, int solution_class, TauSector sector,
                               const QuantumNumbers& qn, double mass, double r, double scale) {
    check_level_args(solution_class, qn, r, scale);
    if (sector == TauSector::Plus) {
        // The tau = +1/2 levels coincide with the tau = -1/2 levels of the
        // partner class; evaluating through the partner keeps them bit-equal.
        return shift_family_energy(family, corresponding_class(solution_class), TauSector::Minus,
                                   qn, mass, r, scale);
    }
    auto cls = ansatz_classes(family, TauSector::Minus, qn.m(), r, scale);
    Complex w = cls[solution_class - 1].alpha_bar + cls[solution_class - 1].beta_bar;
    double n = double(qn.n);
    Complex rad = Complex(n * n - mass * mass * r * r, 0.0) + 2.0 * n * w + w * w;
    Complex plus = Complex(0.0, 1.0) * std::sqrt(rad) / r;
    return finish_pair(plus, qn.n);
}

} // namespace

EnergyPair energy_hyperbolic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                             double mass, double r, double b2) {
    return shift_family_energy(geometry::Family::Hyperbolic, solution_class, sector, qn, mass, r, b2);
}

EnergyPair energy_elliptic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                           double mass, double r, double b1) {
    return shift_family_energy(geometry::Family::Elliptic, solution_class, sector, qn, mass, r, b1);
}

EnergyPair energy_beltrami_paper(const QuantumNumbers& qn, double mass, double r) {
    if (qn.n < 0) fail(ErrorKind::InvalidArgument, "quantum number n must be >= 0");
    if (!(r > 0.0)) fail(ErrorKind::InvalidArgument, "r must be positive");
    double m = qn.m();
    double n = double(qn.n);
    double num = (1.0 + 2.0 * n) * std::fabs(m) * r -
                 m * r * (1.0 + 2.0 * n + 2.0 * n * n - 2.0 * mass * mass * r * r);
    Complex den = std::sqrt(Complex(2.0 * m, 0.0)) * std::pow(r, 1.5);
    Complex plus = std::sqrt(Complex(num, 0.0) / den);
    return finish_pair(plus, qn.n);
}

EnergyPair energy_beltrami_nu(const QuantumNumbers& qn, double mass, double r, double b) {
    if (qn.n < 0) fail(ErrorKind::InvalidArgument, "quantum number n must be >= 0");
    if (!(r > 0.0) || !(b > 0.0)) fail(ErrorKind::InvalidArgument, "r and b must be positive");
    double m = qn.m();
    auto builder = [&](Complex E) {
        nu::NuProblem p;
        p.d1 = Complex(1.0, 0.0); // tau = -1/2; the condition itself is tau-independent
        p.z1 = Complex(m * m * r * r / (b * b), 0.0);
        p.z2 = Complex(m * r / b, 0.0);
        p.z3 = (Complex(mass * mass, 0.0) - E * E) * (r * r);
        return p;
    };
    nu::EnergyScan scan;
    scan.lo = 0.0;
    scan.hi = mass + (2.0 * qn.n + 3.0) / r + 1.0;
    scan.nodes = 400;
    std::vector<Complex> roots = nu::nu_solve_energy(builder, qn.n, scan, nu::Sqrt8Branch::Minus);
    scan.imaginary_axis = true;
    for (Complex e : nu::nu_solve_energy(builder, qn.n, scan, nu::Sqrt8Branch::Minus)) {
        bool dup = false;
        for (Complex r0 : roots)
            if (std::abs(r0 - e) <= 1e-9) dup = true;
        if (!dup) roots.push_back(e);
    }
    if (roots.empty())
        fail(ErrorKind::RootNotBracketed,
             "beltrami quantization condition has no root in the scan window");
    Complex best = roots[0];
    for (Complex e : roots)
        if (std::abs(e) < std::abs(best)) best = e;
    EnergyPair pair = finish_pair(best, qn.n);
    if (roots.size() > 1) {
        if (!pair.note.empty()) pair.note += "; ";
        pair.note += "multiple scan roots; kept the smallest |E|";
    }
    return pair;
}

Complex magnetic_profile(const geometry::MeridianProfile& p, Complex b0, double u) {
    geometry::Meridian md = geometry::eval_meridian(p, u);
    if (md.R == 0.0)
        fail(ErrorKind::ThroatSingularity, "magnetic profile undefined where R(u) = 0");
    return b0 * (md.dR / md.R);
}

namespace {

struct QParams {
    Complex alpha, beta; // parameters the polynomial part is built from
};

// Polynomial part of the closed form. For the Plus sector the polynomial (and
// its companion prefactor exponent and 2^... coefficient) comes from the
// partner Minus class; the identity is exact, and routing through one code
// path keeps the two sectors bit-identical where they should coincide.
QParams q_params(geometry::Family family, TauSector sector, int solution_class, double m,
                 double r, double scale) {
    int cls = solution_class;
    if (sector == TauSector::Plus) cls = corresponding_class(solution_class);
    auto classes = ansatz_classes(family, TauSector::Minus, m, r, scale);
    return {classes[cls - 1].alpha_bar, classes[cls - 1].beta_bar};
}

ClosedForm psi1_closed_family(geometry::Family family, int solution_class, TauSector sector,
                              const QuantumNumbers& qn, double r, double scale,
                              const WavefunctionOptions& opt) {
    check_level_args(solution_class, qn, r, scale);
    double m = qn.m();
    auto own = ansatz_classes(family, sector, m, r, scale)[solution_class - 1];
    QParams qp = q_params(family, sector, solution_class, m, r, scale);
    Complex wq = qp.alpha + qp.beta;

    bool hyper = (family == geometry::Family::Hyperbolic);
    ClosedForm cf;
    cf.core = {hyper ? CoreVar::Kind::SinhScaled : CoreVar::Kind::SinhSqHalfScaled, r};

    // Hyperbolic prefactors stay in X = sinh(u/r): the bases 1 +- iX never
    // come close to zero. The elliptic bases 1 +- cosh(u/r) do, so they are
    // carried in V = sinh^2(u/(2r)) via 1 + chi = 2(1 + V) and 1 - chi = -2V,
    // which keeps full relative precision at the throat. The negative base
    // -2V is taken on the principal side, same as 1 - chi was. The polynomial
    // argument (1 - J)/2 becomes -V; the series is the Jacobi expansion about
    // J = 1 either way.
    Complex two_alpha =
        hyper ? Complex(1.0, 0.0) : std::pow(Complex(2.0, 0.0), own.alpha_bar);

    AnalyticTerm t1;
    t1.coeff = opt.c1 * two_alpha;
    if (hyper) {
        t1.factors.push_back({Complex(1.0, 0.0), Complex(0.0, 1.0), own.alpha_bar, false});
        t1.factors.push_back({Complex(1.0, 0.0), Complex(0.0, -1.0), own.beta_bar, false});
        t1.arg_const = Complex(0.5, 0.0);
        t1.arg_lin = Complex(0.0, -0.5);
    } else {
        t1.factors.push_back({Complex(1.0, 0.0), Complex(1.0, 0.0), own.alpha_bar, false});
        t1.factors.push_back({Complex(0.0, 0.0), Complex(-2.0, 0.0), own.beta_bar, true});
        t1.arg_const = Complex(0.0, 0.0);
        t1.arg_lin = Complex(-1.0, 0.0);
    }
    t1.poly = specfun::hyp2f1_poly_coeffs(Complex(-double(qn.n), 0.0), double(qn.n) + 2.0 * wq,
                                          Complex(0.5, 0.0) + 2.0 * qp.beta);
    cf.terms.push_back(t1);

    if (opt.c2 != Complex(0.0, 0.0)) {
        AnalyticTerm t2;
        t2.coeff = opt.c2 * two_alpha *
                   std::pow(Complex(2.0, 0.0), Complex(-0.5, 0.0) + 2.0 * qp.beta);
        t2.factors = t1.factors;
        // The companion branch carries (J - 1)^{1/2 - 2 beta}; hyperbolic sits
        // on the cut only at u = 0 exactly, elliptic has 2V > 0.
        if (hyper)
            t2.factors.push_back(
                {Complex(-1.0, 0.0), Complex(0.0, 1.0), Complex(0.5, 0.0) - 2.0 * qp.beta, false});
        else
            t2.factors.push_back(
                {Complex(0.0, 0.0), Complex(2.0, 0.0), Complex(0.5, 0.0) - 2.0 * qp.beta, false});
        t2.arg_const = t1.arg_const;
        t2.arg_lin = t1.arg_lin;
        t2.poly = specfun::hyp2f1_poly_coeffs(Complex(0.5 + double(qn.n), 0.0) + 2.0 * qp.alpha,
                                              Complex(0.5 - double(qn.n), 0.0) - 2.0 * qp.beta,
                                              Complex(1.5, 0.0) - 2.0 * qp.beta);
        cf.terms.push_back(std::move(t2));
    }
    return cf;
}

} // namespace

ClosedForm psi1_hyperbolic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                           double r, double b2, const WavefunctionOptions& opt) {
    return psi1_closed_family(geometry::Family::Hyperbolic, solution_class, sector, qn, r, b2, opt);
}

ClosedForm psi1_elliptic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                         double r, double b1, const WavefunctionOptions& opt) {
    return psi1_closed_family(geometry::Family::Elliptic, solution_class, sector, qn, r, b1, opt);
}

ClosedForm psi1_beltrami(const QuantumNumbers& qn, double r, double b, Complex tau,
                         Complex energy, double mass) {
    if (qn.n < 0) fail(ErrorKind::InvalidArgument, "quantum number n must be >= 0");
    if (!(r > 0.0) || !(b > 0.0)) fail(ErrorKind::InvalidArgument, "r and b must be positive");
    double m = qn.m();
    double c = std::fabs(m) * r / b;
    // Decaying Frobenius exponent: q^{tau + 1/2 - sigma} with
    // sigma = sqrt((M^2 - E^2) r^2) on the principal branch.
    Complex sigma = std::sqrt((Complex(mass * mass, 0.0) - energy * energy) * (r * r));
    ClosedForm cf;
    cf.core = {CoreVar::Kind::ExpNegScaled, r};
    AnalyticTerm t;
    t.coeff = Complex(1.0, 0.0);
    t.factors.push_back({Complex(0.0, 0.0), Complex(1.0, 0.0), tau + 0.5 - sigma, false});
    t.exp_coeff = Complex(-c, 0.0);
    t.poly = specfun::laguerre_coeffs(qn.n, -2.0 * sigma);
    t.arg_const = Complex(0.0, 0.0);
    t.arg_lin = Complex(2.0 * c, 0.0);
    cf.terms.push_back(std::move(t));
    return cf;
}

void Psi2::eval1(double u, ComplexL& p2, ComplexL& dp2) const {
    if (std::abs(energy + Complex(mass, 0.0)) < 1e-14)
        fail(ErrorKind::MassShellSingularity, "psi2 undefined at E + M = 0");
    geometry::Meridian md = geometry::eval_meridian(profile, u);
    if (md.R == 0.0) fail(ErrorKind::ThroatSingularity, "psi2 undefined where R(u) = 0");
    long double R = md.R;
    long double rho = md.dR / R;
    long double drho = md.ddR / R - rho * rho;
    ComplexL tph(tau.real() + 0.5, tau.imag());
    ComplexL A = tph * rho - m / R;
    ComplexL dA = tph * drho + m * md.dR / (R * R);
    ComplexL f, df, ddf;
    psi1.eval2(u, f, df, ddf);
    ComplexL inv = 1.0L / ComplexL(energy.real() + mass, energy.imag());
    p2 = -(df + A * f) * inv;
    dp2 = -(ddf + A * df + dA * f) * inv;
}

void Psi2::eval1(double u, Complex& p2, Complex& dp2) const {
    ComplexL lp2, ldp2;
    eval1(u, lp2, ldp2);
    p2 = Complex(static_cast<double>(lp2.real()), static_cast<double>(lp2.imag()));
    dp2 = Complex(static_cast<double>(ldp2.real()), static_cast<double>(ldp2.imag()));
}

Complex Psi2::value(double u) const {
    Complex p2, dp2;
    eval1(u, p2, dp2);
    return p2;
}

Psi2 psi2_from_psi1(ClosedForm psi1, const geometry::MeridianProfile& profile, Complex tau,
                    Complex energy, double mass, double m) {
    Psi2 p;
    p.psi1 = std::move(psi1);
    p.profile = profile;
    p.tau = tau;
    p.energy = energy;
    p.mass = mass;
    p.m = m;
    return p;
}

} // namespace spectra
} // namespace wormhole
