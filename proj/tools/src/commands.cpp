#include "cocyc_cli/commands.hpp"

#include "cocyc/analysis.hpp"
#include "cocyc/errors.hpp"
#include "cocyc/potential.hpp"
#include "cocyc/solvers.hpp"
#include "cocyc_cli/files.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cocyc::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, value);
    return buf;
}

std::string sci(double value) { return fmt("%.3e", value); }

// Maps library and file errors onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CollisionError& e) {
        err << "error: bodies " << e.first() + 1 << " and " << e.second() + 1 << " collide (distance "
            << e.distance() << ")\n";
        return kExitCollision;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (best residual " << sci(e.bestResidual()) << " after " << e.iterations()
            << " iterations)\n";
        return kExitNoConvergence;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

fs::path outputPath(const Options& opts, const std::string& name) {
    const fs::path dir(outputDirectory(opts));
    fs::create_directories(dir);
    return dir / name;
}

void emit(const Options& opts, const std::string& name, const std::string& content, std::ostream& out) {
    const fs::path path = outputPath(opts, name);
    writeFile(path.string(), content);
    out << "wrote " << path.string() << "\n";
}

void maybeNormalize(ProblemFile& problem, std::ostream& err) {
    if (problem.normalizeMasses())
        err << "warning: masses summed to " << problem.massScale << "; normalized to unit total (massScale "
            << problem.massScale << " recorded)\n";
}

std::vector<double> massesFromFlags(const Options& opts, int n) {
    if (opts.masses && opts.equalMasses) throw FileError("--masses", "cannot be combined with --equal-masses");
    if (opts.masses) return *opts.masses;
    return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
}

void applyOverrides(ProblemFile& problem, const Options& opts) {
    if (opts.seed) problem.rngSeed = *opts.seed;
    if (opts.starts) problem.solver.starts = *opts.starts;
    if (opts.method) problem.solver.method = *opts.method;
    if (opts.maxIterations) problem.solver.maxIterations = *opts.maxIterations;
}

// Problem from --input (a problem or a solution file) or from the flags.
ProblemFile problemFromOptions(const Options& opts, std::ostream& err, bool requireN = true) {
    ProblemFile problem;
    if (opts.input) {
        const std::string text = readFile(*opts.input);
        problem = isSolutionText(text) ? parseSolution(text).problem : parseProblem(text);
    } else {
        if (!opts.n) {
            if (requireN) throw FileError("--n", "required when no --input is given");
        } else {
            problem.n = *opts.n;
        }
        if (opts.d) problem.d = *opts.d;
        if (opts.alpha) problem.alpha = *opts.alpha;
        problem.masses = massesFromFlags(opts, problem.n);
    }
    applyOverrides(problem, opts);
    problem.validate();
    maybeNormalize(problem, err);
    return problem;
}

SolveSettings settingsOf(const ProblemFile& problem) {
    SolveSettings s;
    s.maxIterations = problem.solver.maxIterations;
    s.residualTolerance = problem.solver.residualTolerance;
    s.rngSeed = problem.rngSeed;
    s.method = methodFromString(problem.solver.method);
    return s;
}

struct Loaded {
    ProblemFile problem;
    Configuration q;
    std::string stem;
};

// A configuration to check: a solution file, or a problem file with positions.
Loaded loadConfiguration(const Options& opts, std::ostream& err) {
    if (!opts.input) throw FileError("--input", "a solution or positions file is required");
    const std::string text = readFile(*opts.input);
    Loaded l;
    l.stem = fs::path(*opts.input).stem().string();
    if (isSolutionText(text)) {
        SolutionFile s = parseSolution(text);
        l.problem = s.problem;
        l.q = Configuration::fromPoints(s.configuration);
    } else {
        l.problem = parseProblem(text);
        if (!l.problem.positions) throw FileError("positions", "missing field (needed to check a configuration)");
        l.q = Configuration::fromPoints(*l.problem.positions);
    }
    maybeNormalize(l.problem, err);
    return l;
}

struct Verdict {
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    CcResidual residual;
};

Verdict checkResidual(const Configuration& q, const Masses& m, const PotentialParams& p, const Options& opts,
                      double defaultTol) {
    Verdict v;
    v.residual = ccResidual(q, m, p);
    v.measured = opts.absTol ? v.residual.absoluteNorm : v.residual.norm;
    v.tolerance = opts.tol.value_or(defaultTol);
    v.pass = q.n() == 2 || v.measured <= v.tolerance;
    return v;
}

void printReport(const Configuration& q, const Masses& m, const PotentialParams& p, const Verdict& v,
                 std::ostream& out) {
    out << "bodies " << q.n() << "  dimension " << q.d() << "  alpha " << p.alpha() << "\n";
    out << "lambda " << fmt("%.17g", v.residual.lambda) << "\n";
    out << "residualNorm " << sci(v.residual.norm) << "  absolute " << sci(v.residual.absoluteNorm) << "\n";

    const Tangent force = gradU(q, m, p);
    const Tangent body = bodyResidual(q, m, p);
    double forceScale = 0.0, bodyMax = 0.0;
    for (int j = 0; j < q.n(); ++j) {
        forceScale = std::max(forceScale, force.point(j).norm());
        bodyMax = std::max(bodyMax, body.point(j).norm());
    }
    out << "bodyResidual " << sci(forceScale > 0 ? bodyMax / forceScale : bodyMax) << " (relative to largest force)\n";

    if (q.n() >= 3) {
        out << "triples   |Q_ijk|/scale  cross/scale  class\n";
        for (int i = 0; i < q.n(); ++i)
            for (int j = i + 1; j < q.n(); ++j)
                for (int k = j + 1; k < q.n(); ++k) {
                    const TripleReport t = tripleQ(q, i, j, k, p);
                    char line[128];
                    std::snprintf(line, sizeof line, "  %d %d %d   %.3e      %.3e    %s\n", i + 1, j + 1, k + 1,
                                  t.norm / t.scale, t.crossComponent / t.scale, toString(t.classification).c_str());
                    out << line;
                }
    }
    const GeometryReport geo = classifyGeometry(q);
    out << "tags";
    for (const auto& tag : geo.tags) out << " " << tag;
    out << "\n";
    for (const CorollaryCheck& c : corollaryChecks(q)) {
        out << "corollary " << c.name << ": " << (!c.applicable ? "n/a" : c.passed ? "PASS" : "FAIL");
        if (c.applicable && !c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
    }
}

std::string verdictLine(const Verdict& v, int n, bool absTol) {
    if (n == 2) return "verdict: PASS (every two-body configuration is central)";
    return std::string("verdict: ") + (v.pass ? "PASS" : "FAIL") + " residual " + sci(v.measured) +
           (v.pass ? " <= " : " > ") + (absTol ? "absolute " : "") + "tolerance " + sci(v.tolerance);
}

Json spectrumJson(const SpectrumReport& r) {
    Json j;
    j["context"] = toString(r.context);
    j["eigenvalues"] = r.eigenvalues;
    j["morseIndex"] = r.morseIndex;
    j["nullity"] = r.nullity;
    j["positive"] = r.positive;
    j["zeroThreshold"] = r.zeroThreshold;
    return j;
}

void spectrumCsvRows(std::ostringstream& csv, const SpectrumReport& r) {
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
        csv << toString(r.context) << "," << i << "," << r.eigenvalues[i] << "\n";
}

void printSpectrum(const std::string& title, const SpectrumReport& r, std::ostream& out) {
    out << title << " (" << toString(r.context) << "): morse " << r.morseIndex << "  nullity " << r.nullity
        << "  positive " << r.positive << "\n ";
    for (double e : r.eigenvalues) out << " " << fmt("%.10g", e);
    out << "\n";
}

CCSolution exactSolution(const Configuration& q, const Masses& m, const PotentialParams& p, const std::string& label) {
    CCSolution sol;
    sol.configuration = normalizeSphere(q, m);
    sol.masses = m;
    const CcResidual res = ccResidual(sol.configuration, m, p);
    sol.lambda = res.lambda;
    sol.residualNorm = res.norm;
    sol.label = label;
    annotate(sol, p);
    return sol;
}

SolutionFile solutionFileOf(const ProblemFile& problem, const CCSolution& sol, const std::string& method,
                            std::optional<double> timing) {
    SolutionFile file = toSolutionFile(problem, sol);
    if (!method.empty()) file.method = method;
    file.timing = timing;
    return file;
}

Points regularPolygon(int k, double radius, int d) {
    Points pts;
    for (int j = 0; j < k; ++j) {
        std::vector<double> x(static_cast<std::size_t>(d), 0.0);
        const double t = 2.0 * std::numbers::pi * j / k;
        x[0] = radius * std::cos(t);
        if (d > 1) x[1] = radius * std::sin(t);
        pts.push_back(std::move(x));
    }
    return pts;
}

void requireEqual(const std::vector<double>& masses, std::size_t count, const std::string& what) {
    for (std::size_t j = 1; j < count; ++j)
        if (masses[j] != masses[0]) throw FileError("--masses", what + " needs equal masses");
}

}  // namespace

std::string outputDirectory(const Options& opts) {
    if (opts.output) return *opts.output;
    if (const char* env = std::getenv(kOutputDirVariable); env && *env) return env;
    return ".";
}

std::vector<double> parseList(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (item.empty() || used != item.size())
            throw FileError(flag, "entry " + std::to_string(out.size() + 1) + " is not a number: '" + item + "'");
        out.push_back(value);
    }
    if (out.empty()) throw FileError(flag, "empty list");
    return out;
}

int cmdSolve(const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ProblemFile problem = problemFromOptions(opts, err);
        const Masses m(problem.masses);
        const PotentialParams p(problem.alpha);
        const SolveSettings s = settingsOf(problem);

        const auto t0 = std::chrono::steady_clock::now();
        std::vector<CCSolution> found;
        if (problem.positions) {
            const Configuration q0 = Configuration::fromPoints(*problem.positions);
            requireNoCollision(q0);
            found.push_back(s.method == Method::Moulton ? solveMoulton(q0, m, p, s) : solve(q0, m, p, s));
            out << "converged from the given positions\n";
        } else {
            if (s.method == Method::Moulton) throw FileError("--method", "moulton needs positions; use the moulton command");
            MultistartResult r = multistartSolve(problem.n, problem.d, m, p, s, problem.solver.starts);
            for (const auto& line : r.diagnostics) err << "note: " << line << "\n";
            out << "converged " << r.converged << "/" << r.attempted << " starts; " << r.solutions.size()
                << " distinct classes\n";
            found = std::move(r.solutions);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (found.empty()) {
            err << "error: no start converged\n";
            return static_cast<int>(kExitNoConvergence);
        }
        for (std::size_t k = 0; k < found.size(); ++k) {
            const CCSolution& sol = found[k];
            char name[32];
            std::snprintf(name, sizeof name, "solution-%03zu", k + 1);
            const SolutionFile file =
                solutionFileOf(problem, sol, "", opts.timing ? std::optional<double>(seconds) : std::nullopt);
            out << name << ": lambda " << fmt("%.12g", sol.lambda) << "  residual " << sci(sol.residualNorm)
                << "  morse " << (sol.morseIndex ? std::to_string(*sol.morseIndex) : "?") << "  tags";
            for (const auto& tag : sol.classification) out << " " << tag;
            out << "\n";
            emit(opts, std::string(name) + ".json", emitSolution(file), out);
            if (opts.csv) emit(opts, std::string(name) + ".csv", positionsCsv(file.configuration), out);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmdVerify(const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Loaded l = loadConfiguration(opts, err);
        const Masses m(l.problem.masses);
        const PotentialParams p(l.problem.alpha);
        requireNoCollision(l.q);
        const Verdict v = checkResidual(l.q, m, p, opts, 1e-9);
        printReport(l.q, m, p, v, out);
        out << verdictLine(v, l.q.n(), opts.absTol) << "\n";
        return static_cast<int>(v.pass ? kExitOk : kExitGate);
    });
}

int cmdSpectrum(const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Loaded l = loadConfiguration(opts, err);
        const Masses m(l.problem.masses);
        const PotentialParams p(l.problem.alpha);
        requireNoCollision(l.q);
        const Verdict v = checkResidual(l.q, m, p, opts, 1e-9);
        out << verdictLine(v, l.q.n(), opts.absTol) << "\n";
        if (!v.pass) {
            err << "error: refusing to analyse a configuration that fails verification\n";
            return static_cast<int>(kExitGate);
        }

        const Configuration q = projectToX(l.q, m);
        const SpectrumReport sphere = spectrum(sphereRestrictedHessian(q, m, p));
        const Configuration q2 = rescaleToLambda(q, m, -2.0, p);
        const SpectrumReport full = spectrum(hessianF(q2, m, p, -2.0));
        const SpectrumReport composed = spectrum(hessianComposed(coboundary0(q2), m, p));
        printSpectrum("sphere-restricted Hessian", sphere, out);
        printSpectrum("full Hessian at lambda = -2", full, out);
        printSpectrum("composed Hessian at lambda = -2", composed, out);

        CCSolution atScale;
        atScale.configuration = q;
        atScale.masses = m;
        const RadialCheck radial = radialEigencheck(atScale, p);
        const bool radialOk = std::abs(radial.measured - radial.expected) <= 1e-8 * std::abs(radial.expected);
        out << "radial check: expected " << fmt("%.10f", radial.expected) << " measured "
            << fmt("%.10f", radial.measured) << " " << (radialOk ? "PASS" : "FAIL") << "\n";

        const CorrespondenceReport corr = spectraCorrespondence(q2, m, p);
        out << "correspondence check: " << (corr.matched ? "PASS" : "FAIL") << " (" << corr.fromFull.size()
            << " nonzero eigenvalues, max deviation " << sci(corr.maxDeviation) << ")\n";
        if (!corr.matched) out << "  " << corr.diff << "\n";

        Json report;
        report["input"] = fs::path(*opts.input).filename().string();
        report["lambda"] = v.residual.lambda;
        report["residualNorm"] = v.residual.norm;
        report["sphereRestricted"] = spectrumJson(sphere);
        report["full"] = spectrumJson(full);
        report["composed"] = spectrumJson(composed);
        report["radial"] = {{"expected", radial.expected}, {"measured", radial.measured}, {"pass", radialOk}};
        report["correspondence"] = {{"matched", corr.matched},
                                    {"fromFull", corr.fromFull},
                                    {"fromComposed", corr.fromComposed},
                                    {"removedTranslation", corr.removedTranslation},
                                    {"maxDeviation", corr.maxDeviation}};
        report["toolVersion"] = kToolVersion;
        emit(opts, l.stem + "-spectrum.json", report.dump(2) + "\n", out);
        if (opts.csv) {
            std::ostringstream csv;
            csv.precision(17);
            csv << "context,index,eigenvalue\n";
            spectrumCsvRows(csv, sphere);
            spectrumCsvRows(csv, full);
            spectrumCsvRows(csv, composed);
            emit(opts, l.stem + "-spectrum.csv", csv.str(), out);
        }
        return static_cast<int>(radialOk && corr.matched ? kExitOk : kExitGate);
    });
}

int cmdMoulton(const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ProblemFile problem = problemFromOptions(opts, err);
        if (problem.n < 2) throw FileError("--n", "Moulton configurations need at least 2 bodies");
        problem.d = 1;
        problem.positions.reset();
        problem.solver.method = toString(Method::Moulton);
        problem.validate();
        const Masses m(problem.masses);
        const PotentialParams p(problem.alpha);
        const SolveSettings s = settingsOf(problem);

        const auto orderings = moultonOrderings(problem.n);
        int failed = 0;
        for (const auto& ordering : orderings) {
            std::string tag;
            for (std::size_t t = 0; t < ordering.size(); ++t) tag += (t ? "-" : "") + std::to_string(ordering[t] + 1);
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const CCSolution sol = solveMoulton(ordering, m, p, s);
                const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                out << sol.label << ": lambda " << fmt("%.12g", sol.lambda) << "  residual " << sci(sol.residualNorm)
                    << "  morse " << (sol.morseIndex ? std::to_string(*sol.morseIndex) : "?") << "\n";
                const SolutionFile file =
                    solutionFileOf(problem, sol, "", opts.timing ? std::optional<double>(seconds) : std::nullopt);
                emit(opts, "moulton-" + tag + ".json", emitSolution(file), out);
                if (opts.csv) emit(opts, "moulton-" + tag + ".csv", positionsCsv(file.configuration), out);
            } catch (const ConvergenceError& e) {
                ++failed;
                err << "ordering " << tag << ": " << e.what() << "\n";
            }
        }
        out << orderings.size() - static_cast<std::size_t>(failed) << "/" << orderings.size()
            << " chambers solved\n";
        return static_cast<int>(failed == 0 ? kExitOk : kExitNoConvergence);
    });
}

int cmdGallery(const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string& name = opts.galleryName;
        ProblemFile problem;
        problem.alpha = opts.alpha.value_or(1.0);
        if (opts.seed) problem.rngSeed = *opts.seed;
        double defaultTol = 1e-10;

        auto setMasses = [&](int n) {
            if (opts.n && *opts.n != n) throw FileError("--n", name + " has exactly " + std::to_string(n) + " bodies");
            problem.n = n;
            problem.masses = massesFromFlags(opts, n);
        };

        Configuration q;
        if (name == "lagrange") {
            setMasses(3);
            problem.d = std::max(2, opts.d.value_or(2));
            Points pts(3, std::vector<double>(static_cast<std::size_t>(problem.d), 0.0));
            pts[1][0] = 1.0;
            pts[2][0] = 0.5;
            pts[2][1] = std::sqrt(3.0) / 2.0;
            problem.positions = pts;
            defaultTol = 1e-12;
        } else if (name == "square") {
            setMasses(4);
            problem.d = std::max(2, opts.d.value_or(2));
            requireEqual(problem.masses, 4, "the square");
            problem.positions = regularPolygon(4, std::sqrt(0.5), problem.d);
        } else if (name == "ngon") {
            problem.n = opts.n.value_or(6);
            if (problem.n < 2) throw FileError("--n", "a polygon needs at least 2 vertices");
            problem.masses = massesFromFlags(opts, problem.n);
            requireEqual(problem.masses, problem.masses.size(), "the regular polygon");
            problem.d = std::max(2, opts.d.value_or(2));
            problem.positions = regularPolygon(problem.n, 1.0, problem.d);
        } else if (name == "euler" || name == "pyramid") {
            // Found numerically from a symmetric start.
            if (name == "euler") {
                setMasses(3);
                problem.d = std::max(1, opts.d.value_or(2));
            } else {
                problem.n = opts.n.value_or(5);
                if (problem.n < 4) throw FileError("--n", "a pyramid needs at least 4 bodies");
                problem.masses = massesFromFlags(opts, problem.n);
                requireEqual(problem.masses, problem.masses.size() - 1, "the pyramid base");
                problem.d = std::max(3, opts.d.value_or(3));
            }
        } else {
            throw FileError("gallery", "unknown configuration '" + name +
                                           "' (choose lagrange, euler, square, ngon or pyramid)");
        }
        problem.validate();
        maybeNormalize(problem, err);
        const Masses m(problem.masses);
        const PotentialParams p(problem.alpha);

        CCSolution sol;
        std::string method = "exact";
        if (name == "euler") {
            problem.solver.method = toString(Method::Moulton);
            const std::vector<int> order{0, 1, 2};
            const CCSolution line = solveMoulton(order, m, p, settingsOf(problem));
            Points pts(3, std::vector<double>(static_cast<std::size_t>(problem.d), 0.0));
            for (int j = 0; j < 3; ++j) pts[static_cast<std::size_t>(j)][0] = line.configuration.point(j)(0);
            problem.positions = pts;
            method = toString(Method::Moulton);
        } else if (name == "pyramid") {
            Points start = regularPolygon(problem.n - 1, 1.0, problem.d);
            start.push_back(std::vector<double>(static_cast<std::size_t>(problem.d), 0.0));
            start.back()[2] = 1.0;
            const CCSolution solved = solveNewton(Configuration::fromPoints(start), m, p, settingsOf(problem));
            problem.positions = solved.configuration.toPoints();
            method = toString(Method::Newton);
        }
        q = Configuration::fromPoints(*problem.positions);
        sol = exactSolution(q, m, p, name);

        const Verdict v = checkResidual(q, m, p, opts, defaultTol);
        out << verdictLine(v, q.n(), opts.absTol) << "\n";
        if (!v.pass) {
            err << "internal error: the " << name << " generator produced a configuration that fails verification\n";
            return static_cast<int>(kExitGate);
        }
        out << name << ": lambda " << fmt("%.12g", sol.lambda) << "  morse "
            << (sol.morseIndex ? std::to_string(*sol.morseIndex) : "?") << "  tags";
        for (const auto& tag : sol.classification) out << " " << tag;
        out << "\n";
        emit(opts, "gallery-" + name + "-problem.json", emitProblem(problem), out);
        emit(opts, "gallery-" + name + ".json", emitSolution(solutionFileOf(problem, sol, method, std::nullopt)), out);
        if (opts.csv) emit(opts, "gallery-" + name + ".csv", positionsCsv(*problem.positions), out);
        return static_cast<int>(kExitOk);
    });
}

int cmdProject(const Options& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!opts.input) throw FileError("--input", "a cochain file is required");
        const CochainFile in = parseCochain(readFile(*opts.input));
        const Masses m(in.masses);
        Matrix entries(in.d, pairCount(in.n));
        for (int k = 0; k < pairCount(in.n); ++k)
            for (int c = 0; c < in.d; ++c) entries(c, k) = in.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
        const OneCochain Q(in.n, entries);
        const OneCochain PQ = projectPm(Q, m);
        const double cocycleDefect = coboundary1(PQ).maxNorm();
        const double idempotence = massNormC1(projectPm(PQ, m) - PQ, m);
        out << "input cocycle defect  " << sci(in.n >= 3 ? coboundary1(Q).maxNorm() : 0.0) << "\n";
        out << "output cocycle defect " << sci(in.n >= 3 ? cocycleDefect : 0.0) << "\n";
        out << "|P(PQ) - PQ|_M        " << sci(idempotence) << "\n";
        out << "|Q - PQ|_M            " << sci(massNormC1(Q - PQ, m)) << "\n";

        CochainFile result = in;
        for (int k = 0; k < pairCount(in.n); ++k)
            for (int c = 0; c < in.d; ++c)
                result.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = PQ.matrix()(c, k);
        emit(opts, fs::path(*opts.input).stem().string() + "-projected.json", emitCochain(result), out);
        return static_cast<int>(kExitOk);
    });
}

}  // namespace cocyc::cli
