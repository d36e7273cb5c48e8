#include "wormhole/errors.hpp"
#include "wormhole/geometry.hpp"
#include "wormhole/nu.hpp"
#include "wormhole/numformat.hpp"
#include "wormhole/spectra.hpp"
#include "wormhole/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using wormhole::Complex;
using wormhole::Error;
using wormhole::ErrorKind;
using wormhole::format_shortest;

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::EmptyDomain:
        case ErrorKind::OutOfDomain:
        case ErrorKind::UnsupportedCoupling:
            return 1;
        default:
            return 2;
    }
}

// Complex values arrive as "re" or "re,im".
Complex parse_complex(const std::string& text, const char* flag) {
    std::size_t pos = 0;
    double re = 0.0, im = 0.0;
    try {
        re = std::stod(text, &pos);
        if (pos < text.size()) {
            if (text[pos] != ',')
                wormhole::fail(ErrorKind::InvalidArgument,
                               std::string(flag) + ": expected 're' or 're,im', got '" + text + "'");
            std::size_t pos2 = 0;
            std::string rest = text.substr(pos + 1);
            im = std::stod(rest, &pos2);
            if (pos2 != rest.size())
                wormhole::fail(ErrorKind::InvalidArgument,
                               std::string(flag) + ": trailing characters in '" + text + "'");
        }
    } catch (const std::logic_error&) {
        wormhole::fail(ErrorKind::InvalidArgument,
                       std::string(flag) + ": cannot parse '" + text + "' as a number");
    }
    return Complex(re, im);
}

std::string format_complex(Complex v) {
    if (v.imag() == 0.0) return format_shortest(v.real());
    return format_shortest(v.real()) + "," + format_shortest(v.imag());
}

wormhole::geometry::Family family_from_name(const std::string& name) {
    using wormhole::geometry::Family;
    if (name == "hyperbolic") return Family::Hyperbolic;
    if (name == "elliptic") return Family::Elliptic;
    if (name == "beltrami") return Family::Beltrami;
    if (name == "spherical_cosine") return Family::SphericalCosine;
    wormhole::fail(ErrorKind::InvalidArgument,
                   "--family: expected hyperbolic|elliptic|beltrami|spherical_cosine, got '" +
                       name + "'");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    wormhole::geometry::write_text_atomic(out_path, content);
}

// Shared coupling flags: either --tau directly or the physical triple.
struct CouplingArgs {
    std::string tau_text;
    std::string lambda_text, kdb_text, b0_text;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tau", tau_text, "coupling parameter tau ('re' or 're,im')");
        cmd->add_option("--lambda", lambda_text, "coupling constant lambda ('re' or 're,im')");
        cmd->add_option("--k-db-21", kdb_text, "background tensor component (k_DB)_21");
        cmd->add_option("--b0", b0_text, "magnetic scale B0");
    }

    Complex resolve() const {
        bool have_tau = !tau_text.empty();
        bool have_triple = !lambda_text.empty() || !kdb_text.empty() || !b0_text.empty();
        if (have_tau && have_triple)
            wormhole::fail(ErrorKind::InvalidArgument,
                           "give either --tau or the --lambda/--k-db-21/--b0 triple, not both");
        if (have_tau) return parse_complex(tau_text, "--tau");
        if (!have_triple)
            wormhole::fail(ErrorKind::InvalidArgument,
                           "coupling required: --tau or the --lambda/--k-db-21/--b0 triple");
        if (lambda_text.empty() || kdb_text.empty() || b0_text.empty())
            wormhole::fail(ErrorKind::InvalidArgument,
                           "the coupling triple needs all of --lambda, --k-db-21, --b0");
        wormhole::spectra::LsvCoupling c;
        c.lambda = parse_complex(lambda_text, "--lambda");
        c.k_db_21 = parse_complex(kdb_text, "--k-db-21");
        c.b0 = parse_complex(b0_text, "--b0");
        return wormhole::spectra::tau_from_coupling(c);
    }
};

std::vector<int> parse_class_list(const std::string& text) {
    if (text == "all") return {1, 2, 3, 4};
    try {
        std::size_t pos = 0;
        int v = std::stoi(text, &pos);
        if (pos == text.size() && v >= 1 && v <= 4) return {v};
    } catch (const std::logic_error&) {
    }
    wormhole::fail(ErrorKind::InvalidArgument, "--class: expected 1..4 or 'all', got '" + text + "'");
}

// ---------------------------------------------------------------- mesh ----

struct MeshArgs {
    std::string family, format = "obj", out;
    double r = 1.0, scale = 1.0, phase = 0.0;
    int nu = 0, nv = 0;
    bool no_meta = false;
};

int run_mesh(const MeshArgs& a) {
    wormhole::geometry::MeridianProfile prof{family_from_name(a.family), a.r, a.scale, a.phase};
    if (a.format != "obj" && a.format != "csv")
        wormhole::fail(ErrorKind::InvalidArgument, "--format: expected obj|csv");
    wormhole::geometry::SurfaceMesh mesh = wormhole::geometry::build_mesh(prof, a.nu, a.nv);
    std::ostringstream os;
    if (a.format == "obj")
        wormhole::geometry::export_obj(mesh, os, !a.no_meta);
    else
        wormhole::geometry::export_csv(mesh, os, !a.no_meta);
    emit(a.out, os.str());
    return 0;
}

// ------------------------------------------------------------ spectrum ----

struct SpectrumArgs {
    std::string family, class_text = "all", formula = "paper", format = "csv", out;
    CouplingArgs coupling;
    int n_max = 0;
    std::vector<int> ells;
    double mass = 0.0, r = 1.0, scale = 1.0;
    bool no_meta = false;
    bool class_given = false;
};

int run_spectrum(const SpectrumArgs& a) {
    using namespace wormhole;
    geometry::Family fam = family_from_name(a.family);
    if (fam == geometry::Family::SphericalCosine)
        fail(ErrorKind::InvalidArgument, "spectrum: the spherical family has no Dirac spectrum here");
    if (a.format != "csv" && a.format != "json")
        fail(ErrorKind::InvalidArgument, "--format: expected csv|json");
    if (a.formula != "paper" && a.formula != "nu")
        fail(ErrorKind::InvalidArgument, "--formula: expected paper|nu");
    if (a.n_max < 0) fail(ErrorKind::InvalidArgument, "--n-max must be >= 0");
    if (a.ells.empty()) fail(ErrorKind::InvalidArgument, "--ell-list must not be empty");

    Complex tau = a.coupling.resolve();
    spectra::TauSector sector = spectra::sector_from_tau(tau);
    double tau_val = spectra::sector_tau(sector).real();

    bool beltrami = fam == geometry::Family::Beltrami;
    std::vector<int> classes;
    if (beltrami) {
        if (a.class_given)
            fail(ErrorKind::InvalidArgument,
                 "spectrum: --class does not apply to the beltrami family (reported as class 0)");
        classes = {0};
    } else {
        classes = parse_class_list(a.class_text);
        geometry::MeridianProfile prof{fam, a.r, a.scale, 0.0};
        geometry::embedding_domain(prof); // validates scale < r for elliptic
    }

    struct Row {
        int cls, n, ell;
        spectra::EnergyPair ep;
    };
    std::vector<Row> rows;
    for (int cls : classes)
        for (int ell : a.ells)
            for (int n = 0; n <= a.n_max; ++n) {
                spectra::QuantumNumbers qn{n, ell};
                spectra::EnergyPair ep;
                if (!beltrami)
                    ep = fam == geometry::Family::Hyperbolic
                             ? spectra::energy_hyperbolic(cls, sector, qn, a.mass, a.r, a.scale)
                             : spectra::energy_elliptic(cls, sector, qn, a.mass, a.r, a.scale);
                else if (a.formula == "paper")
                    ep = spectra::energy_beltrami_paper(qn, a.mass, a.r);
                else
                    ep = spectra::energy_beltrami_nu(qn, a.mass, a.r, a.scale);
                rows.push_back({cls, n, ell, ep});
            }

    std::ostringstream os;
    if (a.format == "csv") {
        if (!a.no_meta) {
            os << "# family=" << a.family << " tau=" << format_shortest(tau_val)
               << " mass=" << format_shortest(a.mass) << " r=" << format_shortest(a.r)
               << " scale=" << format_shortest(a.scale);
            if (beltrami) os << " formula=" << a.formula;
            os << "\n";
        }
        os << "family,tau,class,n,ell,m,Re(E+),Im(E+),Re(E-),Im(E-)\n";
        for (const Row& row : rows) {
            double m = double(row.ell) + 0.5;
            os << a.family << ',' << format_shortest(tau_val) << ',' << row.cls << ',' << row.n
               << ',' << row.ell << ',' << format_shortest(m) << ','
               << format_shortest(row.ep.plus.real()) << ',' << format_shortest(row.ep.plus.imag())
               << ',' << format_shortest(row.ep.minus.real()) << ','
               << format_shortest(row.ep.minus.imag()) << "\n";
        }
    } else {
        nlohmann::json doc;
        if (!a.no_meta)
            doc["meta"] = {{"family", a.family},   {"tau", tau_val},
                           {"mass", a.mass},       {"r", a.r},
                           {"scale", a.scale},     {"formula", beltrami ? a.formula : "closed"}};
        nlohmann::json jrows = nlohmann::json::array();
        for (const Row& row : rows) {
            nlohmann::json jr{{"family", a.family},
                              {"tau", tau_val},
                              {"class", row.cls},
                              {"n", row.n},
                              {"ell", row.ell},
                              {"m", double(row.ell) + 0.5},
                              {"e_plus", {row.ep.plus.real(), row.ep.plus.imag()}},
                              {"e_minus", {row.ep.minus.real(), row.ep.minus.imag()}},
                              {"degenerate", row.ep.degenerate}};
            if (!row.ep.note.empty()) jr["note"] = row.ep.note;
            jrows.push_back(jr);
        }
        doc["rows"] = jrows;
        os << doc.dump(2) << "\n";
    }
    emit(a.out, os.str());
    return 0;
}

// -------------------------------------------------------- wavefunction ----

struct WavefunctionArgs {
    std::string family, formula = "paper", out;
    CouplingArgs coupling;
    int cls = 0, n = 0, ell = 0, samples = 200;
    double mass = 0.0, r = 1.0, scale = 1.0;
    bool no_meta = false;
    bool class_given = false;
};

int run_wavefunction(const WavefunctionArgs& a) {
    using namespace wormhole;
    geometry::Family fam = family_from_name(a.family);
    if (fam == geometry::Family::SphericalCosine)
        fail(ErrorKind::InvalidArgument,
             "wavefunction: the spherical family has no Dirac solutions here");
    if (a.samples < 2) fail(ErrorKind::InvalidArgument, "--samples must be >= 2");
    if (a.n < 0) fail(ErrorKind::InvalidArgument, "--n must be >= 0");
    if (a.formula != "paper" && a.formula != "nu")
        fail(ErrorKind::InvalidArgument, "--formula: expected paper|nu");

    Complex tau = a.coupling.resolve();
    geometry::MeridianProfile prof{fam, a.r, a.scale, 0.0};
    spectra::QuantumNumbers qn{a.n, a.ell};
    double m = qn.m();

    ClosedForm psi1;
    spectra::EnergyPair ep;
    int cls = a.cls;
    if (fam == geometry::Family::Beltrami) {
        if (a.class_given)
            fail(ErrorKind::InvalidArgument, "wavefunction: --class does not apply to beltrami");
        cls = 0;
        ep = a.formula == "paper" ? spectra::energy_beltrami_paper(qn, a.mass, a.r)
                                  : spectra::energy_beltrami_nu(qn, a.mass, a.r, a.scale);
        psi1 = spectra::psi1_beltrami(qn, a.r, a.scale, tau, ep.plus, a.mass);
    } else {
        if (!a.class_given)
            fail(ErrorKind::InvalidArgument, "wavefunction: --class 1..4 required for this family");
        if (cls < 1 || cls > 4) fail(ErrorKind::InvalidArgument, "--class: expected 1..4");
        spectra::TauSector sector = spectra::sector_from_tau(tau);
        tau = spectra::sector_tau(sector);
        ep = fam == geometry::Family::Hyperbolic
                 ? spectra::energy_hyperbolic(cls, sector, qn, a.mass, a.r, a.scale)
                 : spectra::energy_elliptic(cls, sector, qn, a.mass, a.r, a.scale);
        psi1 = fam == geometry::Family::Hyperbolic
                   ? spectra::psi1_hyperbolic(cls, sector, qn, a.r, a.scale)
                   : spectra::psi1_elliptic(cls, sector, qn, a.r, a.scale);
    }

    // psi2 needs E + M != 0; fall back to the mirror branch when possible.
    Complex energy = ep.plus;
    if (std::abs(energy + a.mass) < 1e-12) energy = ep.minus;
    spectra::Psi2 psi2 = spectra::psi2_from_psi1(psi1, prof, tau, energy, a.mass, m);

    std::vector<double> grid = verify::interior_grid(prof, std::size_t(a.samples));
    std::ostringstream os;
    if (!a.no_meta) {
        os << "# family=" << a.family << " tau=" << format_complex(tau) << " class=" << cls
           << " n=" << a.n << " ell=" << a.ell << " mass=" << format_shortest(a.mass)
           << " r=" << format_shortest(a.r) << " scale=" << format_shortest(a.scale);
        if (fam == geometry::Family::Beltrami) os << " formula=" << a.formula;
        os << "\n# energy=" << format_complex(energy) << " samples=" << a.samples << "\n";
    }
    os << "u,Re(psi1),Im(psi1),Re(psi2),Im(psi2)\n";
    for (double u : grid) {
        Complex f1 = psi1.value(u);
        Complex f2 = psi2.value(u);
        os << format_shortest(u) << ',' << format_shortest(f1.real()) << ','
           << format_shortest(f1.imag()) << ',' << format_shortest(f2.real()) << ','
           << format_shortest(f2.imag()) << "\n";
    }
    emit(a.out, os.str());
    return 0;
}

// -------------------------------------------------------------- verify ----

struct VerifyArgs {
    std::string suite = "all";
    double tol = 0.0; // 0 keeps the built-in per-check tolerances
};

int run_verify(const VerifyArgs& a) {
    using namespace wormhole;
    nlohmann::json doc;
    bool custom = a.tol > 0.0;
    if (a.suite == "curvature")
        doc = custom ? verify::run_curvature_suite(a.tol) : verify::run_curvature_suite();
    else if (a.suite == "hyperbolic")
        doc = custom ? verify::run_family_suite(geometry::Family::Hyperbolic, a.tol)
                     : verify::run_family_suite(geometry::Family::Hyperbolic);
    else if (a.suite == "elliptic")
        doc = custom ? verify::run_family_suite(geometry::Family::Elliptic, a.tol)
                     : verify::run_family_suite(geometry::Family::Elliptic);
    else if (a.suite == "beltrami")
        doc = custom ? verify::run_beltrami_suite(a.tol) : verify::run_beltrami_suite();
    else if (a.suite == "all") {
        if (custom) {
            doc["curvature"] = verify::run_curvature_suite(a.tol);
            doc["hyperbolic"] = verify::run_family_suite(geometry::Family::Hyperbolic, a.tol);
            doc["elliptic"] = verify::run_family_suite(geometry::Family::Elliptic, a.tol);
            doc["beltrami"] = verify::run_beltrami_suite(a.tol);
            doc["all_pass"] = doc["curvature"]["all_pass"].get<bool>() &&
                              doc["hyperbolic"]["all_pass"].get<bool>() &&
                              doc["elliptic"]["all_pass"].get<bool>() &&
                              doc["beltrami"]["all_pass"].get<bool>();
        } else {
            doc = verify::run_all_suites();
        }
    } else {
        fail(ErrorKind::InvalidArgument,
             "--suite: expected curvature|hyperbolic|elliptic|beltrami|all");
    }
    std::cout << doc.dump(2) << "\n";
    return verify::suite_passed(doc) ? 0 : 3;
}

// ------------------------------------------------------------------ nu ----

struct NuArgs {
    std::string d1, d2, d3, z1, z2, z3;
    std::string branch = "principal";
    int n = 0;
};

nlohmann::json json_complex(Complex v) { return nlohmann::json::array({v.real(), v.imag()}); }

int run_nu(const NuArgs& a) {
    using namespace wormhole;
    if (a.n < 0) fail(ErrorKind::InvalidArgument, "--n must be >= 0");
    nu::Sqrt8Branch branch;
    if (a.branch == "principal")
        branch = nu::Sqrt8Branch::Plus;
    else if (a.branch == "negative")
        branch = nu::Sqrt8Branch::Minus;
    else
        fail(ErrorKind::InvalidArgument, "--branch: expected principal|negative");

    nu::NuProblem prob;
    prob.d1 = parse_complex(a.d1, "--d1");
    prob.d2 = parse_complex(a.d2, "--d2");
    prob.d3 = parse_complex(a.d3, "--d3");
    prob.z1 = parse_complex(a.z1, "--z1");
    prob.z2 = parse_complex(a.z2, "--z2");
    prob.z3 = parse_complex(a.z3, "--z3");

    nu::NuDerived d = nu_derive(prob, branch);
    Complex res = nu_energy_residual(prob, a.n, branch);

    nlohmann::json doc{{"n", a.n},
                       {"branch", a.branch},
                       {"d4", json_complex(d.d4)},
                       {"d5", json_complex(d.d5)},
                       {"d6", json_complex(d.d6)},
                       {"d7", json_complex(d.d7)},
                       {"d8", json_complex(d.d8)},
                       {"d9", json_complex(d.d9)},
                       {"d10", json_complex(d.d10)},
                       {"d11", json_complex(d.d11)},
                       {"d12", json_complex(d.d12)},
                       {"d13", json_complex(d.d13)},
                       {"sqrt8", json_complex(d.sqrt8)},
                       {"sqrt9", json_complex(d.sqrt9)},
                       {"condition_residual", json_complex(res)},
                       {"condition_abs", std::abs(res)}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac spectra and geometry on constant-curvature wormhole surfaces"};
    app.require_subcommand(1);

    MeshArgs mesh_args;
    CLI::App* mesh = app.add_subcommand("mesh", "generate an embedded surface mesh (OBJ or CSV)");
    mesh->add_option("--family", mesh_args.family, "hyperbolic|elliptic|beltrami|spherical_cosine")
        ->required();
    mesh->add_option("--r", mesh_args.r, "curvature radius")->required();
    mesh->add_option("--scale", mesh_args.scale, "meridian scale (b2, b1, b, or d)")->required();
    mesh->add_option("--phase", mesh_args.phase, "angular offset (spherical_cosine only)");
    mesh->add_option("--nu", mesh_args.nu, "meridian sample count (>= 2)")->required();
    mesh->add_option("--nv", mesh_args.nv, "revolution sample count (>= 3)")->required();
    mesh->add_option("--format", mesh_args.format, "obj|csv (default obj)");
    mesh->add_option("-o,--output", mesh_args.out, "output path (stdout when omitted)");
    mesh->add_flag("--no-meta", mesh_args.no_meta, "omit metadata comment lines");

    SpectrumArgs sp_args;
    CLI::App* spectrum = app.add_subcommand("spectrum", "tabulate energy levels");
    spectrum->add_option("--family", sp_args.family, "hyperbolic|elliptic|beltrami")->required();
    sp_args.coupling.attach(spectrum);
    CLI::Option* sp_class = spectrum->add_option("--class", sp_args.class_text, "1..4 or 'all'");
    spectrum->add_option("--n-max", sp_args.n_max, "largest radial level")->required();
    spectrum->add_option("--ell-list", sp_args.ells, "orbital indices, comma separated")
        ->required()
        ->delimiter(',');
    spectrum->add_option("--M", sp_args.mass, "fermion mass (default 0)");
    spectrum->add_option("--r", sp_args.r, "curvature radius")->required();
    spectrum->add_option("--scale", sp_args.scale, "meridian scale")->required();
    spectrum->add_option("--formula", sp_args.formula,
                         "beltrami energy source: paper|nu (default paper)");
    spectrum->add_option("--format", sp_args.format, "csv|json (default csv)");
    spectrum->add_option("-o,--output", sp_args.out, "output path (stdout when omitted)");
    spectrum->add_flag("--no-meta", sp_args.no_meta, "omit metadata");

    WavefunctionArgs wf_args;
    CLI::App* wavefn = app.add_subcommand("wavefunction", "sample a spinor eigenfunction");
    wavefn->add_option("--family", wf_args.family, "hyperbolic|elliptic|beltrami")->required();
    wf_args.coupling.attach(wavefn);
    CLI::Option* wf_class = wavefn->add_option("--class", wf_args.cls, "solution class 1..4");
    wavefn->add_option("--n", wf_args.n, "radial level")->required();
    wavefn->add_option("--ell", wf_args.ell, "orbital index")->required();
    wavefn->add_option("--M", wf_args.mass, "fermion mass (default 0)");
    wavefn->add_option("--r", wf_args.r, "curvature radius")->required();
    wavefn->add_option("--scale", wf_args.scale, "meridian scale")->required();
    wavefn->add_option("--samples", wf_args.samples, "grid size (default 200)");
    wavefn->add_option("--formula", wf_args.formula,
                       "beltrami energy source: paper|nu (default paper)");
    wavefn->add_option("-o,--output", wf_args.out, "output path (stdout when omitted)");
    wavefn->add_flag("--no-meta", wf_args.no_meta, "omit metadata");

    VerifyArgs vf_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run analytic verification suites");
    verify_cmd->add_option("--suite", vf_args.suite, "curvature|hyperbolic|elliptic|beltrami|all");
    verify_cmd->add_option("--tol", vf_args.tol, "override the residual tolerance");

    NuArgs nu_args;
    CLI::App* nu_cmd = app.add_subcommand("nu", "derive template-equation constants");
    nu_cmd->add_option("--d1", nu_args.d1, "coefficient d1 ('re' or 're,im')")->required();
    nu_cmd->add_option("--d2", nu_args.d2, "coefficient d2")->required();
    nu_cmd->add_option("--d3", nu_args.d3, "coefficient d3")->required();
    nu_cmd->add_option("--z1", nu_args.z1, "coefficient z1")->required();
    nu_cmd->add_option("--z2", nu_args.z2, "coefficient z2")->required();
    nu_cmd->add_option("--z3", nu_args.z3, "coefficient z3")->required();
    nu_cmd->add_option("--n", nu_args.n, "level of the quantization condition")->required();
    nu_cmd->add_option("--branch", nu_args.branch, "sqrt(d8) branch: principal|negative");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // every malformed invocation is a validation failure
    }

    sp_args.class_given = sp_class->count() > 0;
    wf_args.class_given = wf_class->count() > 0;

    try {
        if (mesh->parsed()) return run_mesh(mesh_args);
        if (spectrum->parsed()) return run_spectrum(sp_args);
        if (wavefn->parsed()) return run_wavefunction(wf_args);
        if (verify_cmd->parsed()) return run_verify(vf_args);
        if (nu_cmd->parsed()) return run_nu(nu_args);
    } catch (const Error& e) {
        std::cerr << "error [" << wormhole::error_kind_name(e.kind()) << "] " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
