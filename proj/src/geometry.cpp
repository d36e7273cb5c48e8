#include "wormhole/geometry.hpp"
#include "wormhole/errors.hpp"
#include "wormhole/numformat.hpp"
#include "wormhole/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace wormhole {
namespace geometry {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kMeshTruncation = 1e-3; // R/scale cutoff for infinite ends
} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Hyperbolic: return "hyperbolic";
        case Family::Elliptic: return "elliptic";
        case Family::Beltrami: return "beltrami";
        case Family::SphericalCosine: return "spherical_cosine";
    }
    return "unknown";
}

void validate_profile(const MeridianProfile& p) {
    if (!(p.r > 0.0) || !std::isfinite(p.r))
        fail(ErrorKind::InvalidArgument, "profile: r must be positive and finite");
    if (!(p.scale > 0.0) || !std::isfinite(p.scale))
        fail(ErrorKind::InvalidArgument, "profile: scale must be positive and finite");
    if (!std::isfinite(p.phase))
        fail(ErrorKind::InvalidArgument, "profile: phase must be finite");
}

Meridian eval_meridian(const MeridianProfile& p, double u) {
    validate_profile(p);
    Meridian m{};
    double w = u / p.r;
    switch (p.family) {
        case Family::Hyperbolic:
            m.R = p.scale * std::cosh(w);
            m.dR = p.scale * std::sinh(w) / p.r;
            m.ddR = p.scale * std::cosh(w) / (p.r * p.r);
            break;
        case Family::Elliptic:
            m.R = p.scale * std::sinh(w);
            m.dR = p.scale * std::cosh(w) / p.r;
            m.ddR = p.scale * std::sinh(w) / (p.r * p.r);
            break;
        case Family::Beltrami:
            m.R = p.scale * std::exp(w);
            m.dR = p.scale * std::exp(w) / p.r;
            m.ddR = p.scale * std::exp(w) / (p.r * p.r);
            break;
        case Family::SphericalCosine: {
            double th = w + p.phase;
            m.R = p.scale * std::cos(th);
            m.dR = -p.scale * std::sin(th) / p.r;
            m.ddR = -p.scale * std::cos(th) / (p.r * p.r);
            break;
        }
    }
    return m;
}

double gaussian_curvature(const MeridianProfile& p) {
    validate_profile(p);
    double k = 1.0 / (p.r * p.r);
    return p.family == Family::SphericalCosine ? k : -k;
}

Interval embedding_domain(const MeridianProfile& p) {
    validate_profile(p);
    Interval d{};
    switch (p.family) {
        case Family::Hyperbolic: {
            // |R'| <= 1  <=>  |sinh(u/r)| <= r/scale
            double um = p.r * std::asinh(p.r / p.scale);
            d.lo = -um;
            d.hi = um;
            break;
        }
        case Family::Elliptic: {
            // R >= 0 keeps u >= 0; |R'| <= 1 needs cosh(u/r) <= r/scale.
            if (!(p.scale < p.r))
                fail(ErrorKind::EmptyDomain,
                     "elliptic profile: embedding region empty unless scale < r");
            d.lo = 0.0;
            d.hi = p.r * std::acosh(p.r / p.scale);
            break;
        }
        case Family::Beltrami: {
            d.lo = -std::numeric_limits<double>::infinity();
            d.hi = p.r * std::log(p.r / p.scale);
            break;
        }
        case Family::SphericalCosine: {
            // R >= 0 patch around theta = 0, clipped where |R'| <= 1.
            double th_max = kPi / 2.0;
            if (p.scale > p.r) th_max = std::min(th_max, std::asin(p.r / p.scale));
            d.lo = p.r * (-th_max - p.phase);
            d.hi = p.r * (th_max - p.phase);
            break;
        }
    }
    if (!(d.lo < d.hi))
        fail(ErrorKind::EmptyDomain, "embedding region is empty or degenerate");
    return d;
}

namespace {

double z_anchor(const Interval& d) {
    if (d.lo <= 0.0 && 0.0 <= d.hi) return 0.0;
    if (d.hi < 0.0) return d.hi;
    return d.lo;
}

} // namespace

double z_speed(const MeridianProfile& p, double u) {
    double dR = eval_meridian(p, u).dR;
    return std::sqrt(std::max(0.0, 1.0 - dR * dR));
}

double z_profile(const MeridianProfile& p, double u, double quad_tol) {
    Interval d = embedding_domain(p);
    double span = std::isfinite(d.lo) ? (d.hi - d.lo) : std::max(1.0, std::fabs(d.hi));
    double slack = 1e-12 * std::max(1.0, span);
    if (u < d.lo - slack || u > d.hi + slack)
        fail(ErrorKind::OutOfDomain, "z_profile: u outside the embedding interval");
    u = std::clamp(u, d.lo, d.hi);
    double a = z_anchor(d);
    if (u == a) return 0.0;
    return specfun::adaptive_quad([&](double s) { return z_speed(p, s); }, a, u, quad_tol);
}

std::array<double, 3> embed(const MeridianProfile& p, double u, double v, double quad_tol) {
    Meridian m = eval_meridian(p, u);
    double z = z_profile(p, u, quad_tol);
    return {m.R * std::cos(v), m.R * std::sin(v), z};
}

namespace {

int thread_count() {
    const char* env = std::getenv("WORMHOLE_DIRAC_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return std::max(1, n);
}

} // namespace

SurfaceMesh build_mesh(const MeridianProfile& p, int nu_samples, int nv_samples, double quad_tol) {
    if (nu_samples < 2 || nv_samples < 3)
        fail(ErrorKind::InvalidArgument, "build_mesh: need nu >= 2 and nv >= 3");
    Interval d = embedding_domain(p);
    double u_min = d.lo;
    if (!std::isfinite(u_min)) {
        // Truncate the infinite end where R falls below 1e-3 * scale;
        // R/scale = exp(u/r) for the Beltrami family.
        u_min = p.r * std::log(kMeshTruncation);
        u_min = std::min(u_min, d.hi - 1.0 * p.r); // keep a nonempty strip
    }
    double u_max = d.hi;

    SurfaceMesh mesh;
    mesh.profile = p;
    mesh.nu = nu_samples;
    mesh.nv = nv_samples;
    mesh.u_min = u_min;
    mesh.u_max = u_max;
    mesh.vertices.resize(static_cast<size_t>(nu_samples) * nv_samples);

    std::vector<double> us(nu_samples), zs(nu_samples), Rs(nu_samples);
    for (int i = 0; i < nu_samples; ++i) {
        double t = double(i) / double(nu_samples - 1);
        us[i] = u_min + t * (u_max - u_min);
    }
    us[nu_samples - 1] = u_max;
    // z accumulates row to row so the profile is integrated once, not per vertex.
    zs[0] = z_profile(p, us[0], quad_tol);
    Rs[0] = eval_meridian(p, us[0]).R;
    for (int i = 1; i < nu_samples; ++i) {
        zs[i] = zs[i - 1] +
                specfun::adaptive_quad([&](double s) { return z_speed(p, s); }, us[i - 1], us[i], quad_tol);
        Rs[i] = eval_meridian(p, us[i]).R;
    }

    auto fill_rows = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i) {
            for (int j = 0; j < nv_samples; ++j) {
                double v = 2.0 * kPi * double(j) / double(nv_samples - 1);
                MeshVertex& vx = mesh.vertices[static_cast<size_t>(i) * nv_samples + j];
                vx.u = us[i];
                vx.v = v;
                vx.x = Rs[i] * std::cos(v);
                vx.y = Rs[i] * std::sin(v);
                vx.z = zs[i];
            }
        }
    };

    int threads = std::min(thread_count(), nu_samples);
    if (threads <= 1) {
        fill_rows(0, nu_samples);
    } else {
        std::vector<std::thread> pool;
        int chunk = (nu_samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk;
            int hi = std::min(nu_samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(fill_rows, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    mesh.quads.reserve(static_cast<size_t>(nu_samples - 1) * (nv_samples - 1));
    for (int i = 0; i + 1 < nu_samples; ++i)
        for (int j = 0; j + 1 < nv_samples; ++j)
            mesh.quads.push_back({i * nv_samples + j, (i + 1) * nv_samples + j,
                                  (i + 1) * nv_samples + j + 1, i * nv_samples + j + 1});
    return mesh;
}

namespace {

void write_meta(const SurfaceMesh& m, std::ostream& os) {
    os << "# family=" << family_name(m.profile.family) << " r=" << format_shortest(m.profile.r)
       << " scale=" << format_shortest(m.profile.scale) << " phase=" << format_shortest(m.profile.phase)
       << "\n# nu=" << m.nu << " nv=" << m.nv << " u_min=" << format_shortest(m.u_min)
       << " u_max=" << format_shortest(m.u_max) << "\n";
}

} // namespace

void export_obj(const SurfaceMesh& mesh, std::ostream& os, bool with_meta) {
    if (with_meta) write_meta(mesh, os);
    for (const auto& v : mesh.vertices)
        os << "v " << format_sig17(v.x) << ' ' << format_sig17(v.y) << ' ' << format_sig17(v.z) << '\n';
    for (const auto& q : mesh.quads)
        os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
}

void export_csv(const SurfaceMesh& mesh, std::ostream& os, bool with_meta) {
    if (with_meta) write_meta(mesh, os);
    os << "u,v,x,y,z\n";
    for (const auto& v : mesh.vertices)
        os << format_shortest(v.u) << ',' << format_shortest(v.v) << ',' << format_shortest(v.x) << ','
           << format_shortest(v.y) << ',' << format_shortest(v.z) << '\n';
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::IoError, "cannot open temporary file " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) fail(ErrorKind::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        fail(ErrorKind::IoError, "rename failed for " + path + ": " + ec.message());
    }
}

} // namespace geometry
} // namespace wormhole
