#pragma once

#include "wormhole/geometry.hpp"
#include "wormhole/nu.hpp"
#include "wormhole/spectra.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace wormhole {
namespace verify {

// Summary of a pointwise residual check over a sample grid.  The verdict
// compares max_abs against tol * max(scale, tiny) so that functions with
// large dynamic range are judged relative to their own magnitude.
struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    std::size_t sample_count = 0;
    double scale = 0.0;       // max |f| seen on the grid
    double tolerance = 0.0;   // absolute threshold actually applied
    bool verdict = false;
    std::vector<std::string> annotations;
};

nlohmann::json to_json(const ResidualReport& rep);

// Callback returning a function value with its first two derivatives.  The
// extended-precision scalar matters: near a singular endpoint the equation
// terms exceed max |psi| by a factor that eats most of a double's mantissa,
// so the cancellation these checks measure has to be carried wider.
using C2Fn = std::function<void(double u, ComplexL& f, ComplexL& df, ComplexL& ddf)>;
// Same with one derivative only.
using C1Fn = std::function<void(double u, ComplexL& f, ComplexL& df)>;

C2Fn from_closed_form(ClosedForm form);
C1Fn c1_from_closed_form(ClosedForm form);
C1Fn c1_from_psi2(spectra::Psi2 p2);

// Central finite differences for callers that only have plain values.
// Step is 1e-6 * max(1, |u|), good for ~1e-8 relative accuracy on smooth f.
C2Fn from_values(std::function<Complex(double)> f);

// Uniform sample points strictly inside the embedding domain.  Both ends are
// pulled in by margin_frac of the span; the Beltrami domain is truncated on
// the open end the same way mesh generation truncates it.
std::vector<double> interior_grid(const geometry::MeridianProfile& p, std::size_t count,
                                  double margin_frac = 1e-3);

// Residual of the second order radial equation satisfied by the first spinor
// component:
//   psi1'' + (2 tau + 1) (R'/R) psi1'
//     + [E^2 - M^2 - m^2/R^2 + m R'/R^2 + (tau^2 - 1/4)(R'/R)^2
//        + (tau + 1/2) R''/R] psi1 = 0
ResidualReport ode_residual(const geometry::MeridianProfile& p, Complex tau, Complex energy,
                            double mass, double m, const C2Fn& psi1,
                            const std::vector<double>& grid, double tol = 1e-9);

// Residuals of the coupled first order system
//   r1 = (E - M) psi1 - psi2' - ((1/2 + tau) R'/R + m/R) psi2
//   r2 = (E + M) psi2 + psi1' + ((1/2 + tau) R'/R - m/R) psi1
// evaluated together; scale is the larger of the two component maxima.
ResidualReport coupled_residual(const geometry::MeridianProfile& p, Complex tau, Complex energy,
                                double mass, double m, const C1Fn& psi1, const C1Fn& psi2,
                                const std::vector<double>& grid, double tol = 1e-8);

// Checks -R''/R against the constant curvature reported for the family.
ResidualReport curvature_scan(const geometry::MeridianProfile& p, std::size_t samples = 100,
                              double tol = 1e-10);

// Residual of the hypergeometric-type equation
//   psi'' + (d1 - d2 x) / (x (1 - d3 x)) psi'
//         + (-z1 x^2 + z2 x - z3) / (x^2 (1 - d3 x)^2) psi = 0
ResidualReport nu_equation_residual(const nu::NuProblem& prob, const C2Fn& psi,
                                    const std::vector<double>& grid, double tol = 1e-9);

// Recovers the quantized k^2 for level n of a hyperbolic or elliptic solution
// class without using the closed-form energy expression.  The power series of
// the regular solution obeys a three term recurrence in z = k^2 r^2, and
// termination after degree n means the map (c0, c1) -> (c_{n+1}, c_{n+2})
// built from the recurrence becomes singular.  Its determinant F_n(z) has
// degree n + 1 and vanishes at the truncation values of every level up to n,
// so F_n / F_{n-1} is linear in z and its root is the level-n value; two
// probe points pin it down exactly.  Throws NoTermination when the
// (alpha, beta) pair does not solve the class equations.
Complex termination_oracle(geometry::Family family, spectra::TauSector sector,
                           Complex alpha_bar, Complex beta_bar, double m, double r,
                           double scale, int n);

// Aggregate suites used by the command line verifier.  Each returns a JSON
// document with per-case records and an overall "all_pass" flag.  The family
// and Beltrami suites derive their coupled-system tolerance as 10x the ODE
// tolerance; everything else (ansatz system 1e-12, level recovery 1e-10
// relative, quantization condition 1e-10) stays pinned.
nlohmann::json run_curvature_suite(double tol = 1e-10);
nlohmann::json run_family_suite(geometry::Family family, double ode_tol = 1e-9);
nlohmann::json run_beltrami_suite(double ode_tol = 1e-9);
nlohmann::json run_all_suites();

bool suite_passed(const nlohmann::json& doc);

} // namespace verify
} // namespace wormhole
