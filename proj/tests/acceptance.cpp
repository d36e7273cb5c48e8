// Shipping gate for the analytic results: one line per criterion, nonzero
// exit when anything fails. Run as: acceptance <golden-dir>
#include "wormhole/errors.hpp"
#include "wormhole/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace wormhole;
namespace geo = wormhole::geometry;
namespace sp = wormhole::spectra;
namespace vf = wormhole::verify;

namespace {

int g_failed = 0;

void report(int idx, bool pass, const std::string& label, const std::string& detail) {
    if (!pass) ++g_failed;
    std::printf("[%2d] %s  %s (%s)\n", idx, pass ? "PASS" : "FAIL", label.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::size_t count_checks(const nlohmann::json& suite, const char* name) {
    std::size_t k = 0;
    for (const auto& combo : suite["failures"])
        for (const auto& chk : combo["checks"])
            if (chk.value("check", std::string()) == name) ++k;
    return k;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool bits_equal(Complex a, Complex b) { return std::memcmp(&a, &b, sizeof(a)) == 0; }

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <golden-dir>\n");
        return 2;
    }
    std::string golden = argv[1];

    // 1. Constant curvature reproduced pointwise across the parameter grid.
    {
        nlohmann::json suite = vf::run_curvature_suite();
        report(1, vf::suite_passed(suite), "curvature -R''/R matches K on the (r, scale) grid",
               "worst " + fmt(suite["worst_relative"].get<double>()) + " relative, " +
                   std::to_string(suite["case_count"].get<int>()) + " cases, tol 1e-10");
    }

    // 2. The embedding is unit-speed at every quadrature abscissa, and the
    //    hyperbolic height profile agrees with its elliptic-integral form.
    {
        bool unit_speed = true;
        double worst_us = 0.0;
        std::size_t node_count = 0;
        const geo::MeridianProfile profs[] = {
            {geo::Family::Hyperbolic, 1.0, 1.0, 0.0},
            {geo::Family::Elliptic, 1.0, 0.5, 0.0},
            {geo::Family::Beltrami, 1.0, 1.0, 0.0},
            {geo::Family::SphericalCosine, 1.0, 0.7, 0.0},
        };
        for (const auto& p : profs) {
            auto ends = vf::interior_grid(p, 2);
            std::vector<double> nodes;
            specfun::adaptive_quad([&](double s) { return geo::z_speed(p, s); }, ends[0],
                                   ends[1], 1e-10, &nodes);
            node_count += nodes.size();
            for (double u : nodes) {
                double zp = geo::z_speed(p, u);
                double rp = geo::eval_meridian(p, u).dR;
                double err = std::fabs(zp * zp + rp * rp - 1.0);
                worst_us = std::max(worst_us, err);
                if (err > 1e-10) unit_speed = false;
            }
        }

        // Closed form for R = b cosh(u/r):
        //   z = r [F(theta|m0) - E(theta|m0) + tan(theta) sqrt(1 - m0 sin^2 theta)]
        // with theta = atan(sinh(u/r)), m0 = 1 + b^2/r^2.
        bool carlson_ok = true;
        double worst_z = 0.0;
        double r = 1.0, b = 1.0, m0 = 1.0 + (b * b) / (r * r);
        geo::MeridianProfile hyp{geo::Family::Hyperbolic, r, b, 0.0};
        for (int k = 1; k <= 20; ++k) {
            double u = 0.042 * k;
            double theta = std::atan(std::sinh(u / r));
            double s2 = std::sin(theta) * std::sin(theta);
            double want = r * (specfun::ellip_f_inc(theta, m0) - specfun::ellip_e_inc(theta, m0) +
                               std::tan(theta) * std::sqrt(1.0 - m0 * s2));
            double err = std::fabs(geo::z_profile(hyp, u) - want);
            worst_z = std::max(worst_z, err);
            if (err > 1e-9) carlson_ok = false;
        }
        report(2, unit_speed && carlson_ok, "embedding unit speed + hyperbolic height closed form",
               "z'^2+R'^2 worst " + fmt(worst_us) + " at " + std::to_string(node_count) +
                   " nodes; height worst " + fmt(worst_z) + " on 20 points");
    }

    // 3. The exponent classes solve their defining quadratic systems for
    //    randomly drawn parameters, every class, sector, and family.
    {
        std::mt19937 rng(20260814u);
        std::uniform_int_distribution<int> ell_d(-3, 2);
        std::uniform_real_distribution<double> r_d(0.5, 3.0);
        std::uniform_real_distribution<double> s_d(0.3, 2.5);
        std::uniform_real_distribution<double> frac_d(0.1, 0.9);
        double worst = 0.0;
        std::size_t checks = 0;
        for (int draw = 0; draw < 50; ++draw) {
            double m = double(ell_d(rng)) + 0.5;
            double r = r_d(rng);
            double s_hyp = s_d(rng);
            double s_ell = r * frac_d(rng);
            for (geo::Family fam : {geo::Family::Hyperbolic, geo::Family::Elliptic}) {
                double scale = fam == geo::Family::Hyperbolic ? s_hyp : s_ell;
                for (sp::TauSector sec : {sp::TauSector::Minus, sp::TauSector::Plus}) {
                    auto classes = sp::ansatz_classes(fam, sec, m, r, scale);
                    for (const auto& sc : classes) {
                        auto res = sp::ansatz_system_residual(fam, sec, sc.alpha_bar, sc.beta_bar,
                                                              m * r / scale);
                        worst = std::max(worst, std::max(std::abs(res[0]), std::abs(res[1])));
                        ++checks;
                    }
                }
            }
        }
        report(3, worst < 1e-12, "ansatz exponent classes solve their quadratic systems",
               "worst " + fmt(worst) + " over " + std::to_string(checks) +
                   " class instances, tol 1e-12");
    }

    // Criteria 4-6 share the two closed-form family sweeps.
    nlohmann::json hyp_suite = vf::run_family_suite(geo::Family::Hyperbolic);
    nlohmann::json ell_suite = vf::run_family_suite(geo::Family::Elliptic);

    // 4. Published eigenpairs satisfy the radial second-order equation and the
    //    coupled first-order system on interior grids.
    {
        std::size_t bad = count_checks(hyp_suite, "ode_residual") +
                          count_checks(ell_suite, "ode_residual") +
                          count_checks(hyp_suite, "coupled_residual") +
                          count_checks(ell_suite, "coupled_residual");
        double worst_ode = std::max(hyp_suite["worst_ode_relative"].get<double>(),
                                    ell_suite["worst_ode_relative"].get<double>());
        double worst_cpl = std::max(hyp_suite["worst_coupled_relative"].get<double>(),
                                    ell_suite["worst_coupled_relative"].get<double>());
        std::size_t levels = hyp_suite["level_count"].get<std::size_t>() +
                             ell_suite["level_count"].get<std::size_t>();
        report(4, bad == 0, "closed-form eigenpairs pass both residual checks",
               "ode worst " + fmt(worst_ode) + " (tol 1e-9), coupled worst " + fmt(worst_cpl) +
                   " (tol 1e-8), " + std::to_string(levels) + " levels");
    }

    // 5. The series-termination oracle recovers every tabulated level without
    //    touching the closed-form energy expressions.
    {
        std::size_t bad = count_checks(hyp_suite, "termination_level") +
                          count_checks(ell_suite, "termination_level");
        double worst = std::max(hyp_suite["worst_level_difference"].get<double>(),
                                ell_suite["worst_level_difference"].get<double>());
        report(5, bad == 0, "termination oracle reproduces every quantized k^2",
               "worst " + fmt(worst) + " relative, tol 1e-10");
    }

    // 6. The two coupling sectors correspond bit for bit under the class
    //    pairing: energies, polynomial data, and exponent identities.
    {
        bool ok = hyp_suite["sector_correspondence_bitwise"].get<bool>() &&
                  ell_suite["sector_correspondence_bitwise"].get<bool>();
        report(6, ok, "sector correspondence holds bitwise across the sweep",
               std::string("hyperbolic ") +
                   (hyp_suite["sector_correspondence_bitwise"].get<bool>() ? "exact" : "BROKEN") +
                   ", elliptic " +
                   (ell_suite["sector_correspondence_bitwise"].get<bool>() ? "exact" : "BROKEN"));
    }

    // Criteria 7-8 share the exponential-family sweep.
    nlohmann::json bel_suite = vf::run_beltrami_suite();

    // 7. Template-equation route: the derived-constant chain matches a hand
    //    computation, condition roots are clean, and the eigenpairs pass the
    //    radial residual check.
    {
        nu::NuProblem p;
        p.d1 = Complex(1, 0);
        p.z1 = Complex(0.25, 0);
        p.z2 = Complex(0.5, 0);
        p.z3 = Complex(1, 0);
        nu::NuDerived d = nu::nu_derive(p, nu::Sqrt8Branch::Minus);
        bool chain = d.d4 == Complex(0, 0) && d.d5 == Complex(0, 0) && d.d6 == Complex(0.25, 0) &&
                     d.d7 == Complex(-0.5, 0) && d.d8 == Complex(1, 0) &&
                     d.d9 == Complex(0.25, 0) && d.sqrt8 == Complex(-1, 0) &&
                     d.sqrt9 == Complex(0.5, 0) && d.d10 == Complex(-1, 0) &&
                     d.d11 == Complex(1, 0) && d.d12 == Complex(-1, 0) &&
                     d.d13 == Complex(-0.5, 0);

        bool eigen_ok = true;
        double worst_cond = 0.0;
        for (const auto& pt : bel_suite["points"]) {
            if (!pt["nu_pass"].get<bool>()) eigen_ok = false;
            if (pt.contains("nu_condition_residual"))
                worst_cond = std::max(worst_cond, pt["nu_condition_residual"].get<double>());
        }
        report(7, chain && eigen_ok, "template-equation constants, roots, and eigenpairs",
               std::string("hand chain ") + (chain ? "exact" : "BROKEN") + ", condition worst " +
                   fmt(worst_cond) + " (tol 1e-10), " +
                   std::to_string(bel_suite["point_count"].get<std::size_t>()) + " eigenpairs");
    }

    // 8. Machine-readable record of which exponential-family energy formula
    //    passes at each point; at least one must pass everywhere. The printed
    //    closed form is known not to pass off its validity region, and the
    //    report says so rather than hiding it.
    {
        nlohmann::json rows = nlohmann::json::array();
        std::size_t paper_pass = 0, nu_pass = 0, both = 0;
        bool covered = true;
        for (const auto& pt : bel_suite["points"]) {
            bool pp = pt["paper_pass"].get<bool>();
            bool np = pt["nu_pass"].get<bool>();
            paper_pass += pp;
            nu_pass += np;
            both += pp && np;
            if (!(pp || np)) covered = false;
            nlohmann::json row{{"n", pt["n"]},       {"ell", pt["ell"]}, {"mass", pt["mass"]},
                               {"r", pt["r"]},       {"b", pt["b"]},     {"published_formula_pass", pp},
                               {"template_route_pass", np}};
            if (pt.contains("energy_paper")) row["energy_published"] = pt["energy_paper"];
            if (pt.contains("energy_nu")) row["energy_template"] = pt["energy_nu"];
            rows.push_back(row);
        }
        std::size_t total = bel_suite["points"].size();
        nlohmann::json doc{{"description",
                            "per-point comparison of the published exponential-family energy "
                            "formula against the template-equation route"},
                           {"point_count", total},
                           {"published_formula_pass_count", paper_pass},
                           {"template_route_pass_count", nu_pass},
                           {"both_pass_count", both},
                           {"every_point_covered", covered},
                           {"points", rows}};
        geo::write_text_atomic("beltrami_discrepancy.json", doc.dump(2) + "\n");
        bool complete = total == 96 && covered;
        report(8, complete, "per-point energy discrepancy report written and covered",
               "published formula " + std::to_string(paper_pass) + "/" + std::to_string(total) +
                   ", template route " + std::to_string(nu_pass) + "/" + std::to_string(total) +
                   "; beltrami_discrepancy.json");
    }

    // 9. The published exponential-family energies never see the throat scale:
    //    values are bit-identical across b.
    {
        bool identical = true;
        for (int n = 0; n <= 5 && identical; ++n)
            for (int ell : {0, -1})
                for (double mass : {1.0, 2.0})
                    for (double r : {1.0, 2.0}) {
                        sp::QuantumNumbers qn{n, ell};
                        sp::EnergyPair first{};
                        bool have = false;
                        for (double b : {0.5, 1.0, 2.7}) {
                            (void)b; // the formula takes no throat-scale input
                            sp::EnergyPair e = sp::energy_beltrami_paper(qn, mass, r);
                            if (!have) {
                                first = e;
                                have = true;
                            } else if (!bits_equal(e.plus, first.plus) ||
                                       !bits_equal(e.minus, first.minus)) {
                                identical = false;
                            }
                        }
                    }
        report(9, identical, "published exponential-family energies independent of b",
               identical ? "bit-identical across b in {0.5, 1, 2.7} on the level grid"
                         : "values drifted with b");
    }

    // 10. The four figure meshes regenerate byte-identically.
    {
        struct Fig {
            const char* name;
            geo::MeridianProfile prof;
        };
        const Fig figs[] = {
            {"fig1a.obj", {geo::Family::Hyperbolic, 1.0, 1.0, 0.0}},
            {"fig2a.obj", {geo::Family::Elliptic, 1.0, 0.7071067811865476, 0.0}},
            {"fig3a.obj", {geo::Family::Beltrami, 1.0, 1.0, 0.0}},
            {"fig4a.obj", {geo::Family::SphericalCosine, 1.0, 0.7, 0.0}},
        };
        bool ok = true;
        std::string bad;
        for (const auto& f : figs) {
            geo::SurfaceMesh mesh = geo::build_mesh(f.prof, 17, 33);
            std::ostringstream out;
            geo::export_obj(mesh, out, true);
            if (out.str() != slurp(golden + "/" + f.name)) {
                ok = false;
                bad += std::string(" ") + f.name;
            }
        }
        report(10, ok, "figure meshes reproduce the golden OBJ files byte for byte",
               ok ? "4 meshes, 17x33 each" : "mismatch:" + bad);
    }

    // 11. Soundness of the residual gate itself: a 1e-6 relative energy
    //     perturbation at a nondegenerate point must flip the verdict.
    {
        geo::MeridianProfile prof{geo::Family::Hyperbolic, 1.0, 1.0, 0.0};
        sp::QuantumNumbers qn{2, 0};
        sp::EnergyPair e = sp::energy_hyperbolic(1, sp::TauSector::Minus, qn, 0.0, 1.0, 1.0);
        ClosedForm psi1 = sp::psi1_hyperbolic(1, sp::TauSector::Minus, qn, 1.0, 1.0);
        auto grid = vf::interior_grid(prof, 120);
        auto run = [&](Complex energy) {
            return vf::ode_residual(prof, Complex(-0.5, 0), energy, 0.0, qn.m(),
                                    vf::from_closed_form(psi1), grid);
        };
        bool clean = run(e.plus).verdict;
        bool perturbed = run(e.plus * (1.0 + 1e-6)).verdict;
        report(11, clean && !perturbed, "residual gate flips under a 1e-6 energy perturbation",
               std::string("clean ") + (clean ? "pass" : "FAIL") + ", perturbed " +
                   (perturbed ? "still passes" : "fails as required"));
    }

    if (g_failed == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failed);
    return 1;
}
