#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wormhole/errors.hpp"
#include "wormhole/verify.hpp"

#include <cmath>
#include <complex>

using namespace wormhole;
using namespace wormhole::verify;
namespace sp = wormhole::spectra;
namespace geo = wormhole::geometry;

TEST_CASE("residual report serialization") {
    geo::MeridianProfile prof{geo::Family::Hyperbolic, 1.0, 1.0, 0.0};
    ResidualReport rep = curvature_scan(prof);
    CHECK(rep.verdict);
    CHECK(rep.rms <= rep.max_abs);
    CHECK(rep.sample_count == 100);

    nlohmann::json j = to_json(rep);
    // The document shape is part of the tool contract: exactly these fields.
    CHECK(j.size() == 6);
    for (const char* key : {"max_abs", "rms", "sample_count", "scale", "verdict", "annotations"})
        CHECK(j.contains(key));
    CHECK(j["annotations"].is_array());
}

TEST_CASE("interior grid") {
    geo::MeridianProfile prof{geo::Family::Hyperbolic, 1.0, 1.0, 0.0};
    geo::Interval d = geo::embedding_domain(prof);
    auto g = interior_grid(prof, 50);
    REQUIRE(g.size() == 50);
    double margin = 1e-3 * (d.hi - d.lo);
    CHECK(g.front() == doctest::Approx(d.lo + margin).epsilon(1e-12));
    CHECK(g.back() == doctest::Approx(d.hi - margin).epsilon(1e-12));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    // Beltrami grids truncate the open end like mesh generation does.
    geo::MeridianProfile bel{geo::Family::Beltrami, 1.0, 1.0, 0.0};
    auto gb = interior_grid(bel, 10);
    CHECK(gb.front() > std::log(1e-3) - 1e-9);
    CHECK_THROWS_AS(interior_grid(prof, 0), Error);
}

TEST_CASE("curvature scan across families") {
    for (auto fam : {geo::Family::Hyperbolic, geo::Family::Elliptic, geo::Family::Beltrami,
                     geo::Family::SphericalCosine}) {
        geo::MeridianProfile p{fam, 1.7, 0.8, 0.0};
        ResidualReport rep = curvature_scan(p);
        CHECK(rep.verdict);
        CHECK(rep.max_abs < 1e-10 * std::fabs(geo::gaussian_curvature(p)));
    }
}

TEST_CASE("ode and coupled residuals accept published eigenpairs") {
    double r = 1.0, b2 = 1.0;
    sp::QuantumNumbers qn{1, 0};
    geo::MeridianProfile prof{geo::Family::Hyperbolic, r, b2, 0.0};
    sp::EnergyPair e = sp::energy_hyperbolic(1, sp::TauSector::Minus, qn, 0.0, r, b2);
    REQUIRE(std::abs(e.plus - Complex(0, 1)) < 1e-15);

    auto grid = interior_grid(prof, 60);
    ClosedForm psi1 = sp::psi1_hyperbolic(1, sp::TauSector::Minus, qn, r, b2);
    ResidualReport ode = ode_residual(prof, Complex(-0.5, 0), e.plus, 0.0, qn.m(),
                                      from_closed_form(psi1), grid);
    CHECK(ode.verdict);

    sp::Psi2 p2 = sp::psi2_from_psi1(psi1, prof, Complex(-0.5, 0), e.plus, 0.0, qn.m());
    ResidualReport cr = coupled_residual(prof, Complex(-0.5, 0), e.plus, 0.0, qn.m(),
                                         c1_from_closed_form(psi1), c1_from_psi2(p2), grid);
    CHECK(cr.verdict);

    // Soundness: a 1e-6 relative energy perturbation must flip the verdict.
    Complex bad = e.plus * (1.0 + 1e-6);
    ResidualReport odeb = ode_residual(prof, Complex(-0.5, 0), bad, 0.0, qn.m(),
                                       from_closed_form(psi1), grid);
    CHECK(!odeb.verdict);
}

TEST_CASE("finite-difference fallback") {
    // from_values gives ~1e-8-accurate derivatives for smooth functions; use a
    // generous tolerance on the same hyperbolic eigenpair.
    double r = 1.0, b2 = 1.0;
    sp::QuantumNumbers qn{0, 0};
    geo::MeridianProfile prof{geo::Family::Hyperbolic, r, b2, 0.0};
    sp::EnergyPair e = sp::energy_hyperbolic(2, sp::TauSector::Minus, qn, 0.0, r, b2);
    ClosedForm psi1 = sp::psi1_hyperbolic(2, sp::TauSector::Minus, qn, r, b2);
    auto grid = interior_grid(prof, 30);
    ResidualReport rep = ode_residual(prof, Complex(-0.5, 0), e.plus, 0.0, qn.m(),
                                      from_values([psi1](double u) { return psi1.value(u); }),
                                      grid, 1e-2);
    CHECK(rep.verdict);
}

TEST_CASE("termination oracle: frozen levels") {
    // Hyperbolic class 1 (w = 0): k^2 r^2 = -(n)^2 -> -1 at n = 1.
    auto hyp = sp::ansatz_classes(geo::Family::Hyperbolic, sp::TauSector::Minus, 0.5, 1.0, 1.0);
    Complex z1 = termination_oracle(geo::Family::Hyperbolic, sp::TauSector::Minus,
                                    hyp[0].alpha_bar, hyp[0].beta_bar, 0.5, 1.0, 1.0, 1);
    CHECK(std::abs(z1 - Complex(-1, 0)) < 1e-10);

    // Class 4 has w = 1: -(n + 1)^2 -> -4 at n = 1.
    Complex z4 = termination_oracle(geo::Family::Hyperbolic, sp::TauSector::Minus,
                                    hyp[3].alpha_bar, hyp[3].beta_bar, 0.5, 1.0, 1.0, 1);
    CHECK(std::abs(z4 - Complex(-4, 0)) < 1e-10);

    // The +1/2 sector shifts the ladder by one: class 1 gives -(n + 1)^2.
    auto hp = sp::ansatz_classes(geo::Family::Hyperbolic, sp::TauSector::Plus, 0.5, 1.0, 1.0);
    Complex zp = termination_oracle(geo::Family::Hyperbolic, sp::TauSector::Plus,
                                    hp[0].alpha_bar, hp[0].beta_bar, 0.5, 1.0, 1.0, 1);
    CHECK(std::abs(zp - Complex(-4, 0)) < 1e-10);

    // r scales out as k^2 = z / r^2.
    auto hyp2 = sp::ansatz_classes(geo::Family::Hyperbolic, sp::TauSector::Minus, 0.5, 2.0, 1.0);
    Complex zr = termination_oracle(geo::Family::Hyperbolic, sp::TauSector::Minus,
                                    hyp2[0].alpha_bar, hyp2[0].beta_bar, 0.5, 2.0, 1.0, 1);
    CHECK(std::abs(zr - Complex(-0.25, 0)) < 1e-10);
}

TEST_CASE("termination oracle: coinciding levels stay exact") {
    // Elliptic class 2 at m = 1/2, b1 = 1/2 has w = -1/2, so levels 0 and 1
    // share the truncation value -1/4; both must come back at full precision.
    auto ell = sp::ansatz_classes(geo::Family::Elliptic, sp::TauSector::Minus, 0.5, 1.0, 0.5);
    for (int n : {0, 1}) {
        Complex z = termination_oracle(geo::Family::Elliptic, sp::TauSector::Minus,
                                       ell[1].alpha_bar, ell[1].beta_bar, 0.5, 1.0, 0.5, n);
        CHECK(std::abs(z - Complex(-0.25, 0)) < 1e-10);
    }

    // m = 3/2 pushes w to -5/2; level 4 rejoins level 1 at -9/4.
    auto ell3 = sp::ansatz_classes(geo::Family::Elliptic, sp::TauSector::Minus, 1.5, 1.0, 0.5);
    Complex z4 = termination_oracle(geo::Family::Elliptic, sp::TauSector::Minus,
                                    ell3[1].alpha_bar, ell3[1].beta_bar, 1.5, 1.0, 0.5, 4);
    CHECK(std::abs(z4 - Complex(-2.25, 0)) < 1e-10);
    Complex z1 = termination_oracle(geo::Family::Elliptic, sp::TauSector::Minus,
                                    ell3[1].alpha_bar, ell3[1].beta_bar, 1.5, 1.0, 0.5, 1);
    CHECK(std::abs(z1 - Complex(-2.25, 0)) < 1e-10);
}

TEST_CASE("termination oracle: rejects off-class exponents") {
    try {
        termination_oracle(geo::Family::Hyperbolic, sp::TauSector::Minus, Complex(0.3, 0.1),
                           Complex(-0.2, 0), 0.5, 1.0, 1.0, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoTermination);
    }
    CHECK_THROWS_AS(termination_oracle(geo::Family::Beltrami, sp::TauSector::Minus, Complex(0, 0),
                                       Complex(0, 0), 0.5, 1.0, 1.0, 0),
                    Error);
}

TEST_CASE("oracle agrees with the published ladder across a small grid") {
    // Published z = (E^2 - M^2) r^2 against the recurrence-based oracle, for a
    // slice of classes and levels in both families and sectors.
    for (auto fam : {geo::Family::Hyperbolic, geo::Family::Elliptic}) {
        for (auto sec : {sp::TauSector::Minus, sp::TauSector::Plus}) {
            auto classes = sp::ansatz_classes(fam, sec, 1.5, 2.0, 0.5);
            for (int cls : {1, 3}) {
                for (int n : {0, 2, 5}) {
                    sp::QuantumNumbers qn{n, 1};
                    sp::EnergyPair e =
                        fam == geo::Family::Hyperbolic
                            ? sp::energy_hyperbolic(cls, sec, qn, 1.0, 2.0, 0.5)
                            : sp::energy_elliptic(cls, sec, qn, 1.0, 2.0, 0.5);
                    Complex z_pub = (e.plus * e.plus - 1.0) * 4.0;
                    Complex z = termination_oracle(fam, sec, classes[cls - 1].alpha_bar,
                                                   classes[cls - 1].beta_bar, 1.5, 2.0, 0.5, n) *
                                4.0;
                    CHECK(std::abs(z - z_pub) <= 1e-10 * std::max(1.0, std::abs(z_pub)));
                }
            }
        }
    }
}

TEST_CASE("nu template residual") {
    // Quantized Laguerre-shaped problem (the same numbers as the nu tests):
    // z3 = 1 puts level n = 1 on the condition; the eigenfunction passes.
    nu::NuProblem p;
    p.d1 = Complex(1, 0);
    p.z1 = Complex(0.25, 0);
    p.z2 = Complex(0.5, 0);
    p.z3 = Complex(1, 0);
    std::vector<double> grid;
    for (int i = 1; i <= 40; ++i) grid.push_back(0.1 * i);
    ClosedForm wf = nu::nu_wavefunction_form(p, 1, nu::Sqrt8Branch::Minus);
    ResidualReport rep = nu_equation_residual(p, from_closed_form(wf), grid);
    CHECK(rep.verdict);

    // Detuning z3 breaks termination and the check must say so.
    nu::NuProblem bad = p;
    bad.z3 = Complex(1.05, 0);
    ClosedForm wfb = nu::nu_wavefunction_form(bad, 1, nu::Sqrt8Branch::Minus);
    ResidualReport repb = nu_equation_residual(bad, from_closed_form(wfb), grid);
    CHECK(!repb.verdict);

    CHECK_THROWS_AS(nu_equation_residual(p, from_closed_form(wf), {0.0}), Error);
}

TEST_CASE("aggregate suites") {
    nlohmann::json curv = run_curvature_suite();
    CHECK(suite_passed(curv));
    nlohmann::json hyp = run_family_suite(geo::Family::Hyperbolic);
    CHECK(suite_passed(hyp));
    CHECK(hyp["sector_correspondence_bitwise"].get<bool>());
    CHECK(hyp["level_count"].get<int>() > 0);
}
