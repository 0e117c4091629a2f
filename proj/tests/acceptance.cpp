// Acceptance gate: one PASS/FAIL line per criterion; exit status 0 only when
// every line passes.

#include "cocyc/analysis.hpp"
#include "cocyc/errors.hpp"
#include "cocyc/potential.hpp"
#include "cocyc/solvers.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace cocyc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Tracks the worst value of a quantity against its bound.
struct Worst {
    std::string name;
    double bound;
    double value = 0.0;
    int failures = 0;
    void add(double v) {
        value = std::max(value, v);
        if (!(v <= bound)) ++failures;
    }
    // for lower bounds: records the smallest value, failing below `bound`
    void addAtLeast(double v) {
        value = (failures == 0 && value == 0.0) ? v : std::min(value, v);
        if (!(v >= bound)) ++failures;
    }
    std::string str() const {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %.2e (bound %.0e)", name.c_str(), value, bound);
        return buf;
    }
};

Outcome combine(std::initializer_list<const Worst*> parts, const std::string& extra = {}) {
    Outcome o;
    for (const Worst* w : parts) {
        o.pass = o.pass && w->failures == 0;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += w->str();
    }
    if (!extra.empty()) o.detail += "; " + extra;
    return o;
}

// ------------------------------------------------------------------ criteria

Outcome projectionAlgebra() {
    std::mt19937_64 rng(2024);
    Worst idem{"idempotence", 1e-12}, adjoint{"self-adjointness", 1e-12}, image{"cocycle defect", 1e-12},
        fixes{"fixes coboundaries", 1e-12}, displayed{"displayed matrices", 1e-15};
    int rankFailures = 0;
    for (int t = 0; t < 100; ++t) {
        const int n = 3 + t % 6, d = 1 + t % 3;
        const Masses m = oracle::randomMasses(n, rng);
        const OneCochain Q = OneCochain::fromFlat(oracle::randomVector(d * pairCount(n), rng), n, d);
        const OneCochain V = OneCochain::fromFlat(oracle::randomVector(d * pairCount(n), rng), n, d);
        const OneCochain PQ = projectPm(Q, m);
        const double nq = massNormC1(Q, m), nv = massNormC1(V, m);
        idem.add(massNormC1(projectPm(PQ, m) - PQ, m) / nq);
        adjoint.add(std::abs(massInnerC1(V, PQ, m) - massInnerC1(projectPm(V, m), Q, m)) / (nq * nv));
        image.add(coboundary1(PQ).maxNorm() / Q.matrix().cwiseAbs().maxCoeff());
        const OneCochain dx = coboundary0(oracle::randomConfiguration(n, d, rng));
        fixes.add(massNormC1(projectPm(dx, m) - dx, m) / massNormC1(dx, m));
        Eigen::JacobiSVD<Matrix> svd(pmMatrix(n, m));
        const auto s = svd.singularValues();
        int rank = 0;
        for (Eigen::Index k = 0; k < s.size(); ++k) rank += s(k) > 1e-12 * s(0);
        rankFailures += rank != n - 1;
    }
    for (int t = 0; t < 20; ++t) {
        const Masses m3 = oracle::randomMasses(3, rng);
        const double a = m3[0], b = m3[1], c = m3[2];
        Matrix e3(3, 3);
        e3 << a + b, c, -c, b, a + c, b, -a, a, b + c;
        displayed.add((pmMatrix(3, m3) - e3).cwiseAbs().maxCoeff());
        const Masses m4 = oracle::randomMasses(4, rng);
        const double m1 = m4[0], m2 = m4[1], w3 = m4[2], w4 = m4[3];
        Matrix e4(6, 6);
        e4 << m1 + m2, w3, w4, -w3, -w4, 0,  //
            m2, m1 + w3, w4, m2, 0, -w4,     //
            m2, w3, m1 + w4, 0, m2, w3,      //
            -m1, m1, 0, m2 + w3, w4, -w4,    //
            -m1, 0, m1, w3, m2 + w4, w3,     //
            0, -m1, m1, -m2, m2, w3 + w4;
        displayed.add((pmMatrix(4, m4) - e4).cwiseAbs().maxCoeff());
    }
    Outcome o = combine({&idem, &adjoint, &image, &fixes, &displayed},
                        "rank n-1 in " + std::to_string(100 - rankFailures) + "/100");
    o.pass = o.pass && rankFailures == 0;
    return o;
}

Outcome isometry() {
    std::mt19937_64 rng(7);
    Worst w{"relative gap", 1e-13};
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 7, d = 1 + t % 3;
        const Masses m = oracle::randomMasses(n, rng);
        const Configuration q = projectToX(oracle::randomConfiguration(n, d, rng), m);
        const double c0 = massNormC0(q, m);
        w.add(std::abs(massNormC1(coboundary0(q), m) - c0) / c0);
    }
    return combine({&w});
}

// Converged solutions across exponents, shared by two criteria.
struct Solved {
    CCSolution sol;
    double alpha;
};

std::vector<Solved> solvedSet() {
    std::vector<Solved> out;
    std::mt19937_64 rng(31);
    SolveSettings s;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const PotentialParams p(alpha);
        for (int n : {3, 4, 5}) {
            for (int d : {2, 3}) {
                s.rngSeed = rng();
                const Masses m = oracle::randomMasses(n, rng);
                for (Method method : {Method::Newton, Method::Variational}) {
                    s.method = method;
                    for (auto& sol : multistartSolve(n, d, m, p, s, 6).solutions) out.push_back({std::move(sol), alpha});
                }
            }
        }
        const Masses m = oracle::randomMasses(4, rng);
        for (const auto& o : moultonOrderings(4)) out.push_back({solveMoulton(o, m, p, s), alpha});
    }
    return out;
}

Outcome cocycleEquation(const std::vector<Solved>& set) {
    Worst cochain{"|r|_M/|dq|_M", 1e-10}, body{"per-body/scale", 1e-9};
    for (const auto& [sol, alpha] : set) {
        const PotentialParams p(alpha);
        const CcResidual r = ccResidual(sol.configuration, sol.masses, p);
        cochain.add(r.absoluteNorm / massNormC1(coboundary0(sol.configuration), sol.masses));
        const Tangent res = bodyResidual(sol.configuration, sol.masses, p);
        const Tangent force = gradU(sol.configuration, sol.masses, p);
        double worst = 0.0, scale = 0.0;
        for (int j = 0; j < sol.configuration.n(); ++j) {
            worst = std::max(worst, res.point(j).norm());
            scale = std::max(scale, force.point(j).norm());
        }
        body.add(worst / scale);
    }
    return combine({&cochain, &body}, std::to_string(set.size()) + " solutions, alpha in {0.5, 1, 2}");
}

Outcome threeBodyEquilateral() {
    std::mt19937_64 rng(43);
    SolveSettings s;
    s.method = Method::Variational;
    const PotentialParams p(1.0);
    Worst spread{"side spread", 1e-8};
    int converged = 0;
    for (int t = 0; t < 20; ++t) {
        const Masses m = oracle::randomMasses(3, rng);
        Configuration q0;
        for (;;) {  // keep the start clearly off a line
            q0 = oracle::randomConfiguration(3, 2, rng, 0.2);
            const Vector a = q0.point(1) - q0.point(0), b = q0.point(2) - q0.point(0);
            if (std::abs(a(0) * b(1) - a(1) * b(0)) > 0.05) break;
        }
        try {
            const CCSolution sol = solve(q0, m, p, s);
            ++converged;
            const Configuration& q = sol.configuration;
            const double l[3] = {(q.point(0) - q.point(1)).norm(), (q.point(0) - q.point(2)).norm(),
                                 (q.point(1) - q.point(2)).norm()};
            spread.add((*std::max_element(l, l + 3) - *std::min_element(l, l + 3)) / *std::max_element(l, l + 3));
        } catch (const Error& e) {
            spread.add(INFINITY);
        }
    }
    return combine({&spread}, std::to_string(converged) + "/20 converged");
}

Outcome moultonChambers() {
    std::mt19937_64 rng(59);
    SolveSettings s;
    const PotentialParams p(1.0);
    Worst restart{"restart deviation", 1e-9}, separation{"min distance between chambers", 1e-6};
    separation.value = INFINITY;
    int chambers = 0, failures = 0;
    for (int n : {3, 4}) {
        for (int k = 0; k < 5; ++k) {
            const Masses m = oracle::randomMasses(n, rng);
            std::vector<Configuration> found;
            for (const auto& order : moultonOrderings(n)) {
                ++chambers;
                try {
                    const CCSolution sol = solveMoulton(order, m, p, s);
                    for (std::size_t t = 1; t < order.size(); ++t)
                        if (!(sol.configuration.point(order[t - 1])(0) < sol.configuration.point(order[t])(0))) ++failures;
                    for (const auto& other : found)
                        separation.addAtLeast(orbitDistance(sol.configuration, other, m, false));
                    found.push_back(sol.configuration);
                    std::uniform_real_distribution<double> u(-1.0, 1.0);
                    for (int r = 0; r < 3; ++r) {
                        std::vector<double> xs(order.size());
                        for (double& x : xs) x = u(rng);
                        std::sort(xs.begin(), xs.end());
                        Configuration start(n, 1);
                        for (std::size_t t = 0; t < order.size(); ++t) start.point(order[t])(0) = xs[t];
                        const CCSolution again = solveMoulton(start, m, p, s);
                        restart.add((again.configuration.matrix() - sol.configuration.matrix()).cwiseAbs().maxCoeff());
                    }
                } catch (const Error&) {
                    ++failures;
                }
            }
        }
    }
    Outcome o = combine({&restart, &separation}, std::to_string(chambers - failures) + "/" +
                                                     std::to_string(chambers) + " chambers solved in order");
    o.pass = o.pass && failures == 0;
    return o;
}

Outcome radialEigenvalue(const std::vector<Solved>& set) {
    Worst w{"relative gap", 1e-8};
    for (const auto& [sol, alpha] : set) {
        const RadialCheck r = radialEigencheck(sol, PotentialParams(alpha));
        w.add(std::abs(r.measured - r.expected) / std::abs(r.expected));
    }
    return combine({&w}, std::to_string(set.size()) + " solutions");
}

Outcome spectraMatch() {
    const PotentialParams p(1.0);
    SolveSettings s;
    std::vector<std::pair<std::string, std::pair<Configuration, Masses>>> cases;
    cases.push_back({"equilateral", {oracle::equilateral(1.0), Masses::equal(3)}});
    const std::vector<int> order{0, 1, 2};
    cases.push_back({"collinear", {solveMoulton(order, Masses::equal(3), p, s).configuration, Masses::equal(3)}});
    cases.push_back({"square", {oracle::regularPolygon(4, 1.0), Masses::equal(4)}});
    Outcome o;
    double worst = 0.0;
    for (const auto& [name, data] : cases) {
        const auto& [q, m] = data;
        const CorrespondenceReport r = spectraCorrespondence(rescaleToLambda(q, m, -2.0, p), m, p, 1e-7);
        worst = std::max(worst, r.maxDeviation);
        if (!r.matched) {
            o.pass = false;
            o.detail += name + " mismatch: " + r.diff + "; ";
        } else {
            o.detail += name + " " + std::to_string(r.fromFull.size()) + " eigenvalues; ";
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.2e (bound 1e-07)", worst);
    o.detail += buf;
    return o;
}

Outcome tripleTerms() {
    std::mt19937_64 rng(71);
    const PotentialParams p(1.0);
    std::uniform_real_distribution<double> logSide(-1.0, 1.0);
    auto side = [&] { return std::pow(10.0, logSide(rng)); };
    auto far = [](double a, double b) { return std::abs(a / b - 1.0) > 1e-3; };
    Worst eq{"equilateral |Q|/scale", 1e-12}, scalene{"scalene |Q|/scale", 1e-4}, iso{"isosceles cross/scale", 1e-11};
    for (int t = 0; t < 1000; ++t) {
        const int d = 2 + t % 2;
        const double a = side();
        const TripleReport r = tripleQ(oracle::triangle(a, a, a, d, rng), 0, 1, 2, p);
        eq.add(r.norm / r.scale);

        double b, c;
        do {
            b = a * std::pow(10.0, 0.3 * logSide(rng));
            c = a * std::pow(10.0, 0.3 * logSide(rng));
        } while (!(far(a, b) && far(b, c) && far(a, c) && a < 0.99 * (b + c) && b < 0.99 * (a + c) &&
                   c < 0.99 * (a + b)));
        const TripleReport g = tripleQ(oracle::triangle(a, b, c, d, rng), 0, 1, 2, p);
        scalene.addAtLeast(g.norm / g.scale);

        do b = a * std::pow(10.0, 0.25 * logSide(rng));
        while (!(b < 1.98 * a));
        // |q1 q3| = |q2 q3| = a, base b: isosceles at the third body
        const TripleReport i = tripleQ(oracle::triangle(a, a, b, d, rng), 0, 1, 2, p);
        iso.add(i.crossComponent / i.scale);
    }
    return combine({&eq, &scalene, &iso}, "1000 triples each");
}

Outcome pyramid() {
    SolveSettings s;
    const PotentialParams p(1.0);
    Worst apex{"apex spread", 1e-8}, base{"base cocircularity", 1e-8};
    int solved = 0;
    for (double apexMass : {1.0, 0.5, 3.0}) {
        for (Method method : {Method::Newton, Method::Variational}) {
            s.method = method;
            const Masses m{1.0, 1.0, 1.0, 1.0, apexMass};
            Matrix start(3, 5);
            start << 1, 0, -1, 0, 0,  //
                0, 1, 0, -1, 0,       //
                0, 0, 0, 0, 1;
            try {
                const CCSolution sol = solve(Configuration(start), m, p, s);
                const GeometryReport g = classifyGeometry(sol.configuration);
                if (g.measurement("apexBody") != 4.0) throw Error("apex not detected");
                apex.add(g.measurement("apexSpread"));
                base.add(g.measurement("baseCocircularity"));
                ++solved;
            } catch (const Error&) {
                apex.add(INFINITY);
            }
        }
    }
    return combine({&apex, &base}, std::to_string(solved) + "/6 solves");
}

Outcome derivatives() {
    std::mt19937_64 rng(83);
    Worst grad{"gradU", 1e-5}, full{"hessianF", 1e-5}, composed{"hessianComposed", 1e-5};
    for (int t = 0; t < 20; ++t) {
        const PotentialParams p(0.5 + 0.5 * (t % 4));
        const int n = 3 + t % 2, d = 1 + t % 3;
        const Masses m = oracle::randomMasses(n, rng);
        const Configuration q = oracle::randomConfiguration(n, d, rng, 0.3);
        const auto U = [&](const Vector& x) { return potentialU(Configuration::fromFlat(x, n, d), m, p); };
        const Vector g = gradU(q, m, p).flat();
        grad.add((oracle::centralGradient(U, q.flat(), 1e-6) - g).norm() / g.norm());

        const double lambda = lambdaOf(q, m, p).value;
        const auto F = [&](const Vector& x) {
            const Configuration c = Configuration::fromFlat(x, n, d);
            return potentialU(c, m, p) - 0.5 * lambda * massInnerC0(c, c, m);
        };
        full.add(oracle::relativeDeviation(hessianF(q, m, p, lambda).form, oracle::richardsonHessian(F, q.flat(), 1e-3)));

        const OneCochain z = coboundary0(q);
        const auto G = [&](const Vector& x) { return fTilde(projectPm(OneCochain::fromFlat(x, n, d), m), m, p); };
        composed.add(
            oracle::relativeDeviation(hessianComposed(z, m, p).form, oracle::richardsonHessian(G, z.flat(), 1e-3)));
    }
    return combine({&grad, &full, &composed}, "20 inputs");
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome cliDeterminism(const std::string& tool) {
    Outcome o;
    if (tool.empty()) return {false, "tool path not configured"};
    const fs::path root = fs::temp_directory_path() / ("cocyc-accept-" + std::to_string(::getpid()));
    fs::remove_all(root);
    int files = 0, differing = 0;
    for (const std::string args : {"solve --n 4 --d 2 --starts 12 --seed 42", "solve --n 5 --d 3 --starts 6 --seed 7 --method variational",
                                   "moulton --n 4 --masses 1,2,3,4"}) {
        std::vector<fs::path> dirs;
        for (int run = 0; run < 2; ++run) {
            const fs::path dir = root / (std::to_string(files) + "-" + std::to_string(run));
            const std::string cmd = "\"" + tool + "\" " + args + " --output \"" + dir.string() + "\" >/dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                fs::remove_all(root);
                return {false, "command failed: " + args};
            }
            dirs.push_back(dir);
        }
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            ++files;
            const fs::path twin = dirs[1] / entry.path().filename();
            if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) ++differing;
        }
        for (const auto& entry : fs::directory_iterator(dirs[1]))
            if (!fs::exists(dirs[0] / entry.path().filename())) ++differing;
    }
    fs::remove_all(root);
    o.pass = differing == 0 && files > 0;
    o.detail = std::to_string(files - differing) + "/" + std::to_string(files) + " files byte-identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string tool = argc > 1 ? argv[1] : "";
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Solved> set = solvedSet();

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"projection algebra", projectionAlgebra},
        {"cocycle isometry", isometry},
        {"cocycle equation consistency", [&] { return cocycleEquation(set); }},
        {"three-body non-collinear solutions are equilateral", threeBodyEquilateral},
        {"one collinear solution per chamber", moultonChambers},
        {"radial eigenvalue", [&] { return radialEigenvalue(set); }},
        {"full and composed spectra agree", spectraMatch},
        {"triple terms", tripleTerms},
        {"pyramidal configurations", pyramid},
        {"derivative oracles", derivatives},
        {"CLI determinism", [&] { return cliDeterminism(tool); }},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS  " : "FAIL  ") << name << ": " << o.detail << "\n";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed in "
              << seconds << " s\n";
    return failed == 0 ? 0 : 1;
}
