#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wormhole {
namespace geometry {

// Surfaces of revolution ds^2 = du^2 + R(u)^2 dv^2 with constant Gaussian
// curvature. The meridian families:
//   Hyperbolic       R = scale * cosh(u/r)          K = -1/r^2
//   Elliptic         R = scale * sinh(u/r)          K = -1/r^2  (needs scale < r)
//   Beltrami         R = scale * exp(u/r)           K = -1/r^2
//   SphericalCosine  R = scale * cos(u/r + phase)   K = +1/r^2
enum class Family { Hyperbolic, Elliptic, Beltrami, SphericalCosine };

struct MeridianProfile {
    Family family = Family::Hyperbolic;
    double r = 1.0;     // curvature radius
    double scale = 1.0; // throat/rim scale (b2, b1, b, or d)
    double phase = 0.0; // angular offset, SphericalCosine only
};

struct Meridian {
    double R, dR, ddR;
};

struct Interval {
    double lo, hi; // lo may be -infinity (Beltrami)
};

const char* family_name(Family f);

// Throws InvalidArgument (and EmptyDomain where the profile parameters make
// the embedding region empty, e.g. Elliptic with scale >= r).
void validate_profile(const MeridianProfile& p);

Meridian eval_meridian(const MeridianProfile& p, double u);

// Constant curvature of the family (+-1/r^2); curvature_scan in the verify
// module checks -R''/R against this on sampled grids.
double gaussian_curvature(const MeridianProfile& p);

// Maximal u-interval where the surface embeds in R^3 as a revolution surface:
// R'(u)^2 <= 1 and R(u) >= 0.
Interval embedding_domain(const MeridianProfile& p);

// Meridian slope of the embedding height, z'(u) = sqrt(1 - R'(u)^2) with the
// radicand clamped at 0. Inside the embedding interval z'^2 + R'^2 = 1.
double z_speed(const MeridianProfile& p, double u);

// Height along the symmetry axis, z(u) = integral sqrt(1 - R'^2) du, anchored
// at u = 0 when the domain contains it and at the nearest finite endpoint
// otherwise. Throws OutOfDomain outside the embedding interval.
double z_profile(const MeridianProfile& p, double u, double quad_tol = 1e-10);

// Point on the embedded surface: (R cos v, R sin v, z(u)).
std::array<double, 3> embed(const MeridianProfile& p, double u, double v, double quad_tol = 1e-10);

struct MeshVertex {
    double x, y, z;
    double u, v;
};

struct SurfaceMesh {
    MeridianProfile profile;
    int nu = 0, nv = 0;
    double u_min = 0.0, u_max = 0.0;
    std::vector<MeshVertex> vertices;          // row-major, index = i*nv + j
    std::vector<std::array<int, 4>> quads;     // 0-based vertex indices
};

// Structured quad mesh over the full embedding domain; v runs 0..2pi inclusive
// (the last column duplicates the first within floating-point rounding).
// Half-infinite domains are truncated where R drops below 1e-3 * scale.
// Row work is split across WORMHOLE_DIRAC_THREADS threads when set; output is
// identical regardless of thread count.
SurfaceMesh build_mesh(const MeridianProfile& p, int nu_samples, int nv_samples,
                       double quad_tol = 1e-10);

// Wavefront OBJ (vertices to 17 significant digits + quad faces) and CSV
// (u,v,x,y,z with shortest round-trip formatting). with_meta prepends comment
// lines recording the profile and resolution.
void export_obj(const SurfaceMesh& mesh, std::ostream& os, bool with_meta = true);
void export_csv(const SurfaceMesh& mesh, std::ostream& os, bool with_meta = true);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a partial file. Throws IoError on failure.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace geometry
} // namespace wormhole
