#pragma once

#include "wormhole/closedform.hpp"
#include "wormhole/specfun.hpp"

#include <functional>
#include <vector>

namespace wormhole {
namespace nu {

// Template second-order equation
//   psi'' + (d1 - d2 x)/(x (1 - d3 x)) psi' + (-z1 x^2 + z2 x - z3)/(x^2 (1 - d3 x)^2) psi = 0
// whose bound solutions are Jacobi (d3 != 0) or Laguerre (d3 == 0) shaped.
struct NuProblem {
    Complex d1{0.0, 0.0}, d2{0.0, 0.0}, d3{0.0, 0.0};
    Complex z1{0.0, 0.0}, z2{0.0, 0.0}, z3{0.0, 0.0};
};

// Which square root of d8 to thread through the derived quantities. The
// printed chain uses the principal branch; the decaying Frobenius solution of
// the Beltrami problem lives on the negative branch.
enum class Sqrt8Branch { Plus, Minus };

struct NuDerived {
    Complex d4, d5, d6, d7, d8, d9, d10, d11, d12, d13;
    Complex sqrt8; // branch-resolved sqrt(d8) used everywhere above
    Complex sqrt9; // principal sqrt(d9)
};

NuDerived nu_derive(const NuProblem& p, Sqrt8Branch branch = Sqrt8Branch::Plus);

// Quantization condition residual for level n:
//   n d2 - (2n+1) d5 + (2n+1)(sqrt(d9) + d3 sqrt(d8)) + n(n-1) d3
//   + d7 + 2 d3 d8 + 2 sqrt(d8) sqrt(d9)
Complex nu_energy_residual(const NuProblem& p, int n, Sqrt8Branch branch = Sqrt8Branch::Plus);

// Bound-state wavefunction in the template variable x:
//   d3 == 0:  x^d12 exp(d13 x) L_n^{d10-1}(d11 x)
//   d3 != 0:  x^d12 (1 - d3 x)^{-d12 - d13/d3} P_n^{(d10-1, d11/d3 - d10 - 1)}(1 - 2 d3 x)
ClosedForm nu_wavefunction_form(const NuProblem& p, int n, Sqrt8Branch branch = Sqrt8Branch::Plus);
Complex nu_wavefunction(const NuProblem& p, int n, Complex x, Sqrt8Branch branch = Sqrt8Branch::Plus);

// Energy scan for root-finding the quantization condition along one axis of
// the complex E plane: E = t (real axis) or E = i t (imaginary_axis = true),
// t in [lo, hi] sampled at `nodes` points. Roots are located by sign changes
// of Re(residual) and by local minima of |residual| (tangential zeros), then
// polished; a root is kept only if |residual| <= accept_tol.
struct EnergyScan {
    double lo = 0.0;
    double hi = 10.0;
    int nodes = 400;
    bool imaginary_axis = false;
    double accept_tol = 1e-10;
};

std::vector<Complex> nu_solve_energy(const std::function<NuProblem(Complex)>& builder, int n,
                                     const EnergyScan& scan, Sqrt8Branch branch = Sqrt8Branch::Plus);

} // namespace nu
} // namespace wormhole
