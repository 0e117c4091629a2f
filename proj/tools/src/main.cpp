// cocyc: solve, verify and analyse central configurations from the shell.

#include "cocyc_cli/commands.hpp"
#include "cocyc_cli/files.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using cocyc::cli::Options;

struct Flags {
    Options opts;
    std::string masses;
    int n = 0, d = 0, starts = 0, maxIterations = 0;
    double alpha = 0.0, tol = 0.0;
    std::uint64_t seed = 0;
    std::string method, input, output;
};

void addCommon(CLI::App* app, Flags& f) {
    app->add_option("--n", f.n, "number of bodies");
    app->add_option("--d", f.d, "dimension of the ambient space");
    app->add_option("--alpha", f.alpha, "homogeneity exponent of the potential (default 1)");
    app->add_option("--masses", f.masses, "comma-separated positive masses");
    app->add_flag("--equal-masses", f.opts.equalMasses, "use equal masses (the default)");
    app->add_option("--starts", f.starts, "random starts for multistart solves");
    app->add_option("--seed", f.seed, "random seed");
    app->add_option("--tol", f.tol, "verification tolerance");
    app->add_flag("--abs-tol", f.opts.absTol, "treat --tol as an absolute residual bound");
    app->add_option("--method", f.method, "fixedPoint, variational, newton or moulton");
    app->add_option("--max-iterations", f.maxIterations, "iteration cap per solve");
    app->add_option("--input", f.input, "problem, solution or cochain file");
    app->add_option("--output", f.output, "output directory (default $COCYC_OUTPUT_DIR or .)");
    app->add_flag("--csv", f.opts.csv, "also write CSV files for plotting");
    app->add_flag("--timing", f.opts.timing, "record wall-clock time in solution files");
}

Options finalize(CLI::App* app, Flags& f) {
    Options o = f.opts;
    auto given = [&](const char* name) { return app->count(name) > 0; };
    if (given("--n")) o.n = f.n;
    if (given("--d")) o.d = f.d;
    if (given("--alpha")) o.alpha = f.alpha;
    if (given("--masses")) o.masses = cocyc::cli::parseList(f.masses, "--masses");
    if (given("--starts")) o.starts = f.starts;
    if (given("--seed")) o.seed = f.seed;
    if (given("--tol")) o.tol = f.tol;
    if (given("--method")) o.method = f.method;
    if (given("--max-iterations")) o.maxIterations = f.maxIterations;
    if (given("--input")) o.input = f.input;
    if (given("--output")) o.output = f.output;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central configurations of the n-body problem via cocycles"};
    app.set_version_flag("--version", cocyc::cli::kToolVersion);
    app.require_subcommand(1);

    Flags flags;
    using Command = int (*)(const Options&, std::ostream&, std::ostream&);
    const std::pair<const char*, Command> table[] = {
        {"solve", cocyc::cli::cmdSolve},       {"verify", cocyc::cli::cmdVerify},
        {"spectrum", cocyc::cli::cmdSpectrum}, {"moulton", cocyc::cli::cmdMoulton},
        {"gallery", cocyc::cli::cmdGallery},   {"project", cocyc::cli::cmdProject},
    };
    const char* help[] = {
        "find central configurations (multistart, or from --input positions)",
        "check a solution or positions file",
        "Hessian spectra, radial and correspondence checks",
        "one collinear configuration per ordering of the bodies",
        "canonical configurations: lagrange, euler, square, ngon, pyramid",
        "apply the mass-weighted projection onto cocycles to a cochain file",
    };
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(table); ++i) {
        CLI::App* sub = app.add_subcommand(table[i].first, help[i]);
        addCommon(sub, flags);
        if (std::string(table[i].first) == "gallery")
            sub->add_option("name", flags.opts.galleryName, "configuration name")->required();
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cocyc::cli::kExitValidation;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            return table[i].second(finalize(subs[i], flags), std::cout, std::cerr);
        } catch (const cocyc::cli::FileError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return cocyc::cli::kExitValidation;
        }
    }
    return cocyc::cli::kExitValidation;
}
