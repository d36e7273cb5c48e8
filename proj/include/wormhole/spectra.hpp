#pragma once

#include "wormhole/closedform.hpp"
#include "wormhole/geometry.hpp"

#include <array>
#include <string>

namespace wormhole {
namespace spectra {

// Lorentz-violating non-minimal coupling data. The effective parameter
//   tau = -i * lambda * (k_DB)_21 * B0
// controls the first-derivative term of the radial equation; closed-form
// spectra exist at tau = -1/2 and tau = +1/2.
struct LsvCoupling {
    Complex lambda{0.0, 0.0};
    Complex k_db_21{0.0, 0.0};
    Complex b0{0.0, 0.0}; // field magnitude entering B(u) = B0 R'(u)/R(u)
};

Complex tau_from_coupling(const LsvCoupling& c);

enum class TauSector { Minus, Plus }; // tau = -1/2 and tau = +1/2

// Maps tau to a sector; throws UnsupportedCoupling unless |tau -+ 1/2| <= 1e-12.
TauSector sector_from_tau(Complex tau);
Complex sector_tau(TauSector s);

struct QuantumNumbers {
    int n = 0;   // radial level, n >= 0 (n = 0 annotated as an edge case)
    int ell = 0; // orbital index; the half-integer quantum number is m = ell + 1/2
    double m() const { return double(ell) + 0.5; }
};

// Ansatz exponents (alpha_bar, beta_bar) for one solution class (1..4).
struct SolutionClass {
    int index = 1;
    Complex alpha_bar{0.0, 0.0};
    Complex beta_bar{0.0, 0.0};
};

// The four parameter classes solving the quadratic ansatz system for the
// given closed-form family (Hyperbolic or Elliptic) and tau sector.
std::array<SolutionClass, 4> ansatz_classes(geometry::Family family, TauSector sector,
                                            double m, double r, double scale);

// Residuals (first and second equation) of the defining quadratic system at
// arbitrary parameters; zero exactly on the four classes. a = m*r/scale.
std::array<Complex, 2> ansatz_system_residual(geometry::Family family, TauSector sector,
                                              Complex alpha_bar, Complex beta_bar, double a);

// Class index pairing between the two tau sectors (1<->4, 2<->3): energies and
// polynomial parts coincide across the pairing.
int corresponding_class(int solution_class);

struct EnergyPair {
    Complex plus{0.0, 0.0};
    Complex minus{0.0, 0.0}; // exact negation of plus
    bool degenerate = false; // both branches coincide (E = 0)
    std::string note;        // non-fatal annotations (e.g. n = 0)
};

EnergyPair energy_hyperbolic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                             double mass, double r, double b2);
EnergyPair energy_elliptic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                           double mass, double r, double b1);

// Beltrami level energy exactly as published (b-independent by construction).
EnergyPair energy_beltrami_paper(const QuantumNumbers& qn, double mass, double r);

// Beltrami level energy from the template-equation quantization condition,
// solved numerically on the decaying-solution branch (no closed formula used).
EnergyPair energy_beltrami_nu(const QuantumNumbers& qn, double mass, double r, double b);

// Effective magnetic profile B(u) = B0 R'(u)/R(u).
Complex magnetic_profile(const geometry::MeridianProfile& p, Complex b0, double u);

struct WavefunctionOptions {
    Complex c1{1.0, 0.0};
    Complex c2{0.0, 0.0}; // second hypergeometric branch; must terminate
};

// Upper spinor component psi1 as an exactly differentiable closed form.
ClosedForm psi1_hyperbolic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                           double r, double b2, const WavefunctionOptions& opt = {});
ClosedForm psi1_elliptic(int solution_class, TauSector sector, const QuantumNumbers& qn,
                         double r, double b1, const WavefunctionOptions& opt = {});
ClosedForm psi1_beltrami(const QuantumNumbers& qn, double r, double b, Complex tau,
                         Complex energy, double mass);

// Lower spinor component derived from psi1 through the first-order system:
//   psi2 = -[psi1' + ((1/2 + tau) R'/R - m/R) psi1] / (E + M).
struct Psi2 {
    ClosedForm psi1;
    geometry::MeridianProfile profile;
    Complex tau;
    Complex energy;
    double mass = 0.0;
    double m = 0.5;

    void eval1(double u, ComplexL& p2, ComplexL& dp2) const;
    void eval1(double u, Complex& p2, Complex& dp2) const;
    Complex value(double u) const;
};

Psi2 psi2_from_psi1(ClosedForm psi1, const geometry::MeridianProfile& profile, Complex tau,
                    Complex energy, double mass, double m);

} // namespace spectra
} // namespace wormhole
