// adtor: batch front-end for the model-torsion verification library.
//
// Subcommands:
//   spectrum  emit the Lambda_R root table of a scattering family (CSV)
//   zeta      model determinants zeta'_{C,R}(0)
//   mv        Mayer-Vietoris torsion asymptotics sweep
//   gluing    model zeta-gluing check plus the exactly solvable circle
//   verify    the full acceptance suite, exit 0 iff everything passes
//
// Output is deterministic for a fixed seed: CSV cells are written with 17
// significant digits, rows in sorted order, LF newlines.

#include "adtor/config.hpp"
#include "adtor/model_spectra.hpp"
#include "adtor/random_gen.hpp"
#include "adtor/verify_suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace adtor;

std::string default_output_dir() {
    const char* env = std::getenv("ADTOR_OUT_DIR");
    return env ? std::string(env) : std::string(".");
}

std::unique_ptr<std::ofstream> open_output(const std::string& path, std::ostream*& os) {
    if (path.empty() || path == "-") {
        os = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw std::runtime_error("cannot open output file " + path);
    os = file.get();
    return file;
}

/// Families understood by `spectrum` and `zeta`:
///   identity | minus-identity | phase:<alpha> | exp:<a>[:<degree>] | seeded:<dim>
UnitaryFamily parse_family(const std::string& spec, std::uint64_t seed, Index dim) {
    auto starts = [&spec](const char* p) { return spec.rfind(p, 0) == 0; };
    if (spec == "identity") return family_constant(ComplexMatrix::Identity(dim, dim));
    if (spec == "minus-identity") return family_constant(-ComplexMatrix::Identity(dim, dim));
    if (starts("phase:")) {
        double alpha = std::stod(spec.substr(6));
        ComplexMatrix c = ComplexMatrix::Zero(2, 2);
        c(0, 0) = std::exp(Complex(0.0, alpha));
        c(1, 1) = std::exp(Complex(0.0, -alpha));
        return family_constant(c);
    }
    if (starts("exp:")) {
        std::string rest = spec.substr(4);
        auto colon = rest.find(':');
        double a = std::stod(rest.substr(0, colon));
        Index deg = (colon == std::string::npos) ? 1 : std::stol(rest.substr(colon + 1));
        ComplexMatrix c0 = ComplexMatrix::Identity(dim, dim);
        return UnitaryFamily{dim, deg, 1.0, [c0, a, deg](double lam) {
                                 Complex f = 0.0, term = 1.0;
                                 for (Index k = 0; k <= deg; ++k) {
                                     f += term;
                                     term *= Complex(0.0, a * lam) / static_cast<double>(k + 1);
                                 }
                                 return ComplexMatrix(f * c0);
                             }};
    }
    if (starts("seeded:")) {
        Index m = std::stol(spec.substr(7));
        Rng rng(seed);
        return family_constant(verify::detail::random_conjugation_closed_unitary(rng, m));
    }
    throw CLI::ValidationError("family", "unknown family spec '" + spec + "'");
}

std::pair<double, double> parse_window(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("window", "expected lo:hi, got '" + s + "'");
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

int cmd_spectrum(const std::string& family_spec, double r, const std::string& window_str,
                 std::uint64_t seed, Index dim, bool boundary, const std::string& out_path) {
    UnitaryFamily fam = parse_family(family_spec, seed, dim);
    LambdaSet roots = lambda_roots(fam, r, parse_window(window_str),
                                   boundary ? SpectrumMode::Boundary : SpectrumMode::Full);
    std::ostream* os = nullptr;
    auto file = open_output(out_path, os);
    CsvWriter csv(*os);
    csv.header({"R", "branch_index", "k", "lambda", "multiplicity", "residual", "provenance"});
    const double factor = boundary ? 2.0 * r : 4.0 * r;
    for (const LambdaRoot& rt : roots.roots) {
        long k = static_cast<long>(std::llround((factor * rt.lambda) / (2.0 * M_PI)));
        csv.row_strings({format_double17(r), std::to_string(rt.branch), std::to_string(k),
                         format_double17(rt.lambda), std::to_string(rt.multiplicity),
                         format_double17(rt.residual), "lambda_roots"});
    }
    return 0;
}

int cmd_zeta(const std::string& family_spec, double r, std::uint64_t seed, Index dim) {
    UnitaryFamily fam = parse_family(family_spec, seed, dim);
    double z = model_zeta_prime0(fam.at(0.0), r);
    std::cout << "zeta'(0) = " << format_double17(z) << "\n";
    return 0;
}

int cmd_mv(std::uint64_t seed, const std::vector<Index>& h, const std::vector<double>& r_grid,
           double perturb) {
    YModel y(static_cast<Index>(h.size()), h);
    Rng rng(seed);
    auto [l1, l2] = random_limiting_pair(rng, y);
    CsvWriter csv(std::cout);
    csv.header({"R", "torsion_scaled", "asymptotic_rhs", "ratio_error", "provenance"});
    for (double r : r_grid) {
        PerturbationHook hook{perturb, perturb, 0.2, seed};
        ScaledDiagram dgm(l1, l2, r, {}, {}, hook);
        double t = mv_torsion_scaled(dgm);
        double rhs = mv_asymptotic_rhs(l1, l2, r);
        csv.row_strings({format_double17(r), format_double17(t), format_double17(rhs),
                         format_double17(std::abs(t / rhs - 1.0)), "mv_torsion_scaled"});
    }
    return 0;
}

int cmd_gluing(std::uint64_t seed, const std::vector<Index>& h, const std::vector<double>& r_grid,
               double circle_a, double circle_b, double circle_r, const std::string& out_path) {
    YModel y(static_cast<Index>(h.size()), h);
    Rng rng(seed);
    auto [l1, l2] = random_limiting_pair(rng, y);
    GluingScenario scenario(l1, l2, r_grid);
    Report rep = verify::full_report({scenario}, {{CircleGeometry(circle_a, circle_b), circle_r}},
                                     seed);
    std::ostream* os = nullptr;
    auto file = open_output(out_path, os);
    CsvWriter csv(*os);
    csv.header({"R", "lhs", "rhs", "abs_error", "status", "provenance"});
    for (double r : r_grid) {
        GluingTerms t = zeta_gluing_terms(l1, l2, r);
        csv.row_strings({format_double17(r), format_double17(t.lhs), format_double17(t.rhs),
                         format_double17(std::abs(t.lhs - t.rhs)),
                         std::abs(t.lhs - t.rhs) <= scenario.tolerance ? "pass" : "fail",
                         "zeta_gluing_model_check"});
    }
    if (!rep.all_pass()) {
        std::string path = default_output_dir() + "/adtor-report.json";
        std::ofstream report_file(path, std::ios::binary);
        report_file << rep.to_json().dump(2) << "\n";
        std::cerr << "gluing checks failed, report: " << path << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& out_path) {
    Report rep = verify::full_report(seed);
    for (const CheckResult& c : rep.checks)
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (residual "
                  << format_double17(c.residual) << ")\n";
    std::string path = out_path;
    if (path.empty()) path = default_output_dir() + "/adtor-report.json";
    std::ofstream file(path, std::ios::binary);
    file << rep.to_json().dump(2) << "\n";
    std::cout << (rep.all_pass() ? "all checks passed" : "FAILURES present") << ", report: " << path
              << "\n";
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"model analytic-torsion gluing verifier"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    std::string config_path;
    app.add_option("--seed", seed, "64-bit seed for all randomized data");
    app.add_option("--config", config_path, "JSON config file (overrides defaults)");

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "Lambda_R root table for a family");
    std::string family = "identity", window = "0:6.2832", out_path;
    double r = 1.0;
    Index dim = 1;
    bool boundary = false;
    sp->add_option("--family", family, "identity|minus-identity|phase:a|exp:a[:deg]|seeded:dim");
    sp->add_option("--R", r, "half-length R");
    sp->add_option("--window", window, "lambda window lo:hi");
    sp->add_option("--dim", dim, "matrix dimension for scalar families");
    sp->add_flag("--boundary", boundary, "use the boundary phase factor e^{2 i lambda R}");
    sp->add_option("--csv", out_path, "output CSV path (default stdout)");

    // zeta
    auto* ze = app.add_subcommand("zeta", "model determinant zeta'_{C,R}(0)");
    std::string zfamily = "identity";
    double zr = 1.0;
    Index zdim = 1;
    ze->add_option("--C", zfamily, "family spec, evaluated at lambda = 0");
    ze->add_option("--R", zr, "half-length R");
    ze->add_option("--dim", zdim, "matrix dimension for scalar families");

    // mv
    auto* mv = app.add_subcommand("mv", "torsion asymptotics sweep");
    std::vector<Index> h = {2, 1};
    std::vector<double> r_grid = {100.0, 1000.0, 10000.0};
    double perturb = 0.0;
    mv->add_option("--dims", h, "YModel dims h_0..h_{n-1}")->delimiter(',');
    mv->add_option("--R-grid", r_grid, "stretch values")->delimiter(',');
    mv->add_option("--perturb", perturb, "perturbation hook magnitude");

    // gluing
    auto* gl = app.add_subcommand("gluing", "model gluing check + circle check");
    std::vector<Index> gh = {2, 1};
    std::vector<double> gr = {1.0, 10.0, 100.0};
    double ca = 1.0, cb = 1.0, cr = 1.0;
    std::string gout;
    gl->add_option("--dims", gh, "YModel dims")->delimiter(',');
    gl->add_option("--R-grid", gr, "model R grid")->delimiter(',');
    gl->add_option("--circle-a", ca, "first arc length");
    gl->add_option("--circle-b", cb, "second arc length");
    gl->add_option("--circle-R", cr, "circle stretch");
    gl->add_option("--csv", gout, "output CSV path (default stdout)");

    // verify
    auto* ve = app.add_subcommand("verify", "run the full acceptance suite");
    std::string vout;
    ve->add_option("--out", vout, "report path (default $ADTOR_OUT_DIR/adtor-report.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot read config " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            RunConfig cfg = RunConfig::parse(ss.str());
            // config supplies defaults; explicit flags win
            if (!app.count("--seed")) seed = cfg.seed;
            if (!sp->count("--family")) family = cfg.family;
            if (!sp->count("--window"))
                window = format_double17(cfg.window.first) + ":" + format_double17(cfg.window.second);
            if (!ze->count("--C")) zfamily = cfg.family;
            if (!mv->count("--dims")) h = cfg.h;
            if (!mv->count("--R-grid")) r_grid = cfg.r_grid;
            if (!mv->count("--perturb")) perturb = cfg.perturbation;
            if (!gl->count("--dims")) gh = cfg.h;
            if (!gl->count("--R-grid")) gr = cfg.r_grid;
            if (!cfg.output_dir.empty() && vout.empty())
                vout = cfg.output_dir + "/adtor-report.json";
        }
        if (sp->parsed()) return cmd_spectrum(family, r, window, seed, dim, boundary, out_path);
        if (ze->parsed()) return cmd_zeta(zfamily, zr, seed, zdim);
        if (mv->parsed()) return cmd_mv(seed, h, r_grid, perturb);
        if (gl->parsed()) return cmd_gluing(seed, gh, gr, ca, cb, cr, gout);
        if (ve->parsed()) return cmd_verify(seed, vout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
