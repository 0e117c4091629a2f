#include "cocyc/analysis.hpp"
#include "cocyc/errors.hpp"
#include "cocyc/solvers.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace cocyc;

namespace {

double sideSpread(const Configuration& q) {
    const double a = (q.point(0) - q.point(1)).norm(), b = (q.point(0) - q.point(2)).norm(),
                 c = (q.point(1) - q.point(2)).norm();
    return (std::max({a, b, c}) - std::min({a, b, c})) / std::max({a, b, c});
}

void checkSolutionInvariants(const CCSolution& sol, const PotentialParams& p, double tol) {
    CHECK(centerOfMass(sol.configuration, sol.masses).norm() <= 1e-13);
    CHECK(std::abs(massNormC0(sol.configuration, sol.masses) - 1.0) <= 1e-13);
    CHECK(sol.residualNorm <= tol);
    CHECK(ccResidual(sol.configuration, sol.masses, p).norm <= tol);
}

}  // namespace

TEST_CASE("settings validation") {
    SolveSettings s;
    CHECK_NOTHROW(s.validate());
    s.residualTolerance = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.residualTolerance = 1e-10;
    s.maxIterations = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    CHECK(methodFromString("fixedPoint") == Method::FixedPoint);
    CHECK(methodFromString(toString(Method::Variational)) == Method::Variational);
    CHECK_THROWS_AS(methodFromString("simplex"), DomainError);
}

TEST_CASE("normalizeSphere") {
    const Masses half = Masses::equal(2);
    const Configuration q = normalizeSphere(Configuration::fromPoints({{0.0}, {2.0}}), half);
    CHECK(q.point(0)(0) == doctest::Approx(-1.0));
    CHECK(q.point(1)(0) == doctest::Approx(1.0));

    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const Masses m = oracle::randomMasses(2 + t % 5, rng);
        const Configuration x = normalizeSphere(oracle::randomConfiguration(m.size(), 1 + t % 3, rng), m);
        CHECK(std::abs(massNormC0(x, m) - 1.0) <= 1e-14);
        CHECK((normalizeSphere(x, m).matrix() - x.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
    }
    CHECK_THROWS_AS(normalizeSphere(Configuration::fromPoints({{1.0, 1.0}}), Masses::equal(1)), DegenerateError);
}

TEST_CASE("fixed-point map") {
    const PotentialParams p(1.0);
    const Masses m = Masses::equal(3);
    const Configuration tri = normalizeSphere(oracle::equilateral(0.7), m);
    CHECK((fixedPointStep(tri, m, p).matrix() - tri.matrix()).cwiseAbs().maxCoeff() <= 1e-11);

    std::mt19937_64 rng(67);
    for (int t = 0; t < 10; ++t) {
        const Masses r = oracle::randomMasses(4, rng);
        const int d = 1 + t % 3;
        const Configuration q = normalizeSphere(oracle::randomConfiguration(4, d, rng), r);
        const Configuration f = fixedPointStep(q, r, p);
        CHECK(std::abs(massNormC0(f, r) - 1.0) <= 1e-14);
        const Matrix g = oracle::randomOrthogonal(d, rng);
        const Configuration gf = fixedPointStep(Configuration(g * q.matrix()), r, p);
        CHECK((gf.matrix() - g * f.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("fixed-point solver") {
    const PotentialParams p(1.0);
    SolveSettings s;
    std::mt19937_64 rng(71);

    SUBCASE("three equal masses reach the equilateral triangle") {
        const Masses m = Masses::equal(3);
        for (int t = 0; t < 5; ++t) {
            const CCSolution sol = solveFixedPoint(oracle::randomConfiguration(3, 2, rng, 0.3), m, p, s);
            checkSolutionInvariants(sol, p, s.residualTolerance);
            CHECK(sideSpread(sol.configuration) <= 1e-8);
            CHECK(sol.method == Method::FixedPoint);
        }
    }
    SUBCASE("two bodies converge at once") {
        for (int t = 0; t < 5; ++t) {
            const Masses m = oracle::randomMasses(2, rng);
            const CCSolution sol = solveFixedPoint(oracle::randomConfiguration(2, 1 + t % 3, rng), m, p, s);
            CHECK(sol.iterations <= 2);
        }
    }
    SUBCASE("the square is kept") {
        const Masses m = Masses::equal(4);
        const CCSolution sol = solveFixedPoint(oracle::regularPolygon(4, 1.0), m, p, s);
        CHECK(sol.residualNorm <= 1e-10);
        CHECK(orbitDistance(sol.configuration, normalizeSphere(oracle::regularPolygon(4, 1.0), m), m, false) <= 1e-9);
    }
    SUBCASE("failure carries the best iterate") {
        SolveSettings tight;
        tight.maxIterations = 1;
        tight.residualTolerance = 1e-14;
        try {
            solveFixedPoint(oracle::randomConfiguration(5, 2, rng), Masses::equal(5), p, tight);
            FAIL("expected non-convergence");
        } catch (const ConvergenceError& e) {
            CHECK(e.best().n() == 5);
            CHECK(e.bestResidual() > 0.0);
            CHECK(e.iterations() == 1);
        }
    }
}

TEST_CASE("variational solver") {
    SolveSettings s;
    std::mt19937_64 rng(73);

    SUBCASE("collinear start stays in its chamber") {
        const PotentialParams p(1.0);
        const Masses m = Masses::equal(3);
        const CCSolution sol = solveVariational(Configuration::fromPoints({{-1.0}, {0.2}, {1.3}}), m, p, s);
        checkSolutionInvariants(sol, p, s.residualTolerance);
        CHECK(sol.configuration.point(0)(0) < sol.configuration.point(1)(0));
        CHECK(sol.configuration.point(1)(0) < sol.configuration.point(2)(0));
        CHECK(std::abs(sol.configuration.point(1)(0)) <= 1e-12);
    }
    SUBCASE("objective never increases and the critical point sits at lambda = -2") {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const PotentialParams p(alpha);
            const Masses m = oracle::randomMasses(4, rng);
            const Configuration q0 = oracle::randomConfiguration(4, 2, rng);
            std::vector<double> values;
            SolveSettings traced = s;
            traced.onStep = [&](int, double v) { values.push_back(v); };
            const CCSolution sol = solveVariational(q0, m, p, traced);
            REQUIRE(!values.empty());
            const double start = variationalObjective(rescaleToLambda(normalizeSphere(q0, m), m, -2.0, p), m, p);
            CHECK(values.front() <= start);
            for (std::size_t k = 1; k < values.size(); ++k)
                CHECK(values[k] <= values[k - 1] * (1.0 + 1e-14));

            const Configuration critical = rescaleToLambda(sol, -2.0, p);
            CHECK(lambdaOf(critical, m, p).value == doctest::Approx(-2.0).epsilon(1e-8));
            // first-order condition 2 m_j q_j + dU/dq_j = 0
            const Tangent g = gradU(critical, m, p);
            double worst = 0.0, scale = 0.0;
            for (int j = 0; j < 4; ++j) {
                worst = std::max(worst, (2.0 * m[j] * critical.point(j) + g.point(j)).norm());
                scale = std::max(scale, g.point(j).norm());
            }
            CHECK(worst <= 1e-10 * scale);
            CHECK(variationalObjective(critical, m, p) == doctest::Approx(values.back()).epsilon(1e-12));
        }
    }
    SUBCASE("fixed-point and variational agree from a shared basin") {
        const PotentialParams p(1.0);
        for (int t = 0; t < 5; ++t) {
            const Masses m = oracle::randomMasses(3, rng);
            const Configuration q0 = oracle::triangle(1.0, 1.1 + 0.05 * t, 0.95, 2, rng);
            const CCSolution a = solveFixedPoint(q0, m, p, s);
            const CCSolution b = solveVariational(q0, m, p, s);
            CHECK(orbitDistance(a.configuration, b.configuration, m, false) <= 1e-7);
        }
    }
}

TEST_CASE("Newton solver is equivariant and reaches saddles") {
    const PotentialParams p(1.0);
    SolveSettings s;
    std::mt19937_64 rng(79);
    for (int t = 0; t < 5; ++t) {
        const Masses m = oracle::randomMasses(4, rng);
        const Configuration q0 = oracle::randomConfiguration(4, 2, rng);
        const CCSolution a = solveNewton(q0, m, p, s);
        checkSolutionInvariants(a, p, s.residualTolerance);
        const Matrix g = oracle::randomOrthogonal(2, rng);
        const CCSolution b = solveNewton(Configuration(g * q0.matrix()), m, p, s);
        CHECK((b.configuration.matrix() - g * a.configuration.matrix()).cwiseAbs().maxCoeff() <= 1e-7);
    }
    // a collinear start for three bodies in the plane lands on the Euler saddle
    const Masses m = Masses::equal(3);
    const CCSolution euler = solveNewton(Configuration::fromPoints({{-1.0, 0.0}, {0.1, 0.0}, {1.0, 0.0}}), m, p, s);
    REQUIRE(euler.morseIndex);
    CHECK(*euler.morseIndex == 1);
    CHECK(std::find(euler.classification.begin(), euler.classification.end(), "collinear") != euler.classification.end());
}

TEST_CASE("Moulton chambers") {
    SolveSettings s;
    const PotentialParams p(1.0);

    SUBCASE("equal masses, three bodies") {
        const Masses m = Masses::equal(3);
        const auto orderings = moultonOrderings(3);
        CHECK(orderings.size() == 3);
        for (const auto& o : orderings) {
            const CCSolution sol = solveMoulton(o, m, p, s);
            CHECK(sol.configuration.point(o[1])(0) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(sol.label.rfind("ordering ", 0) == 0);
        }
        const std::vector<int> forward{0, 1, 2}, backward{2, 1, 0};
        const CCSolution a = solveMoulton(forward, m, p, s), b = solveMoulton(backward, m, p, s);
        CHECK((a.configuration.matrix() + b.configuration.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("chamber counts") {
        CHECK(moultonOrderings(2).size() == 1);
        CHECK(moultonOrderings(4).size() == 12);
        CHECK(moultonOrderings(5).size() == 60);
        std::set<std::vector<int>> unique;
        for (const auto& o : moultonOrderings(5)) {
            CHECK(o.front() < o.back());
            unique.insert(o);
        }
        CHECK(unique.size() == 60);
    }
    SUBCASE("bad input") {
        const std::vector<int> repeated{0, 0, 1};
        CHECK_THROWS_AS(solveMoulton(repeated, Masses::equal(3), p, s), DomainError);
        CHECK_THROWS_AS(solveMoulton(Configuration(3, 2), Masses::equal(3), p, s), DimensionError);
    }
}

TEST_CASE("orbit distance") {
    std::mt19937_64 rng(83);
    const Masses m = Masses::equal(4);
    const Configuration q = normalizeSphere(oracle::randomConfiguration(4, 3, rng), m);
    const Matrix g = oracle::randomOrthogonal(3, rng);
    Matrix permuted(3, 4);
    permuted << (g * q.matrix()).col(2), (g * q.matrix()).col(0), (g * q.matrix()).col(3), (g * q.matrix()).col(1);
    CHECK(orbitDistance(q, Configuration(g * q.matrix()), m, false) <= 1e-13);
    CHECK(orbitDistance(q, Configuration(permuted), m, true) <= 1e-13);
    CHECK(orbitDistance(q, Configuration(permuted), m, false) > 1e-3);

    const Masses unequal{1.0, 2.0, 3.0, 4.0};
    CHECK(orbitDistance(q, Configuration(permuted), unequal, true) > 1e-3);
}

TEST_CASE("multistart") {
    const PotentialParams p(1.0);
    SolveSettings s;

    SUBCASE("three equal masses give two classes") {
        const MultistartResult r = multistartSolve(3, 2, Masses::equal(3), p, s, 50);
        CHECK(r.attempted == 50);
        REQUIRE(r.solutions.size() == 2);
        std::set<std::string> kinds;
        for (const auto& sol : r.solutions) {
            const GeometryReport g = classifyGeometry(sol.configuration);
            kinds.insert(g.has("collinear") ? "collinear" : g.has("equilateral") ? "equilateral" : "other");
        }
        CHECK(kinds == std::set<std::string>{"collinear", "equilateral"});
    }
    SUBCASE("four equal masses") {
        const Masses m = Masses::equal(4);
        const MultistartResult r = multistartSolve(4, 2, m, p, s, 60);
        bool square = false, collinear = false;
        for (const auto& sol : r.solutions) {
            CHECK(ccResidual(sol.configuration, m, p).norm <= 1e-10);
            const GeometryReport g = classifyGeometry(sol.configuration);
            square = square || g.has("cocircular");
            collinear = collinear || g.has("collinear");
            for (const CorollaryCheck& c : corollaryChecks(sol.configuration)) CHECK(c.passed);
            for (const auto& other : r.solutions)
                if (&other != &sol) CHECK(orbitDistance(sol.configuration, other.configuration, m, true) >= kOrbitThreshold);
        }
        CHECK(square);
        CHECK(collinear);
        CHECK(r.solutions.size() >= 3);
    }
    SUBCASE("seeded runs repeat exactly") {
        s.rngSeed = 99;
        const MultistartResult a = multistartSolve(4, 2, Masses::equal(4), p, s, 10);
        const MultistartResult b = multistartSolve(4, 2, Masses::equal(4), p, s, 10);
        REQUIRE(a.solutions.size() == b.solutions.size());
        for (std::size_t k = 0; k < a.solutions.size(); ++k)
            CHECK(a.solutions[k].configuration == b.solutions[k].configuration);
    }
    SUBCASE("random starts respect the separation rule") {
        std::mt19937_64 rng(5);
        const Masses m = Masses::equal(6);
        for (int t = 0; t < 20; ++t) {
            const Configuration q = randomStart(6, 2, m, rng);
            CHECK(q.closestPair().distance >= 0.05 * q.diameter());
            CHECK(std::abs(massNormC0(q, m) - 1.0) <= 1e-14);
            CHECK(centerOfMass(q, m).norm() <= 1e-14);
        }
    }
}

TEST_CASE("rescaleToLambda") {
    const PotentialParams p(1.0);
    const Masses m = Masses::equal(3);
    const Configuration q = normalizeSphere(oracle::equilateral(1.0), m);
    const double l = lambdaOf(q, m, p).value;
    CHECK((rescaleToLambda(q, m, l, p).matrix() - q.matrix()).cwiseAbs().maxCoeff() <= 1e-15);

    const Configuration q2 = rescaleToLambda(q, m, -2.0, p);
    CHECK(std::abs(lambdaOf(q2, m, p).value + 2.0) <= 2e-11);
    CHECK(massInnerC0(q2, q2, m) == doctest::Approx(0.5 * potentialU(q2, m, p)).epsilon(1e-12));

    const Configuration a = rescaleToLambda(q, m, -1.0, p), b = rescaleToLambda(q, m, -2.0, p);
    CHECK(b.diameter() / a.diameter() == doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-13));
    CHECK_THROWS_AS(rescaleToLambda(q, m, 0.5, p), DomainError);
}
