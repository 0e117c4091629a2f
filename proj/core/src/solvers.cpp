#include "cocyc/solvers.hpp"

#include "cocyc/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace cocyc {

std::string toString(Method method) {
    switch (method) {
        case Method::FixedPoint: return "fixedPoint";
        case Method::Variational: return "variational";
        case Method::Newton: return "newton";
        case Method::Moulton: return "moulton";
    }
    return "unknown";
}

Method methodFromString(const std::string& name) {
    if (name == "fixedPoint") return Method::FixedPoint;
    if (name == "variational") return Method::Variational;
    if (name == "newton") return Method::Newton;
    if (name == "moulton") return Method::Moulton;
    throw DomainError("unknown solver method '" + name + "'");
}

void SolveSettings::validate() const {
    if (!(residualTolerance > 0.0)) throw DomainError("residualTolerance must be positive");
    if (maxIterations < 1) throw DomainError("maxIterations must be at least 1");
    if (!(step.shrink > 0.0 && step.shrink < 1.0)) throw DomainError("step shrink factor must lie in (0, 1)");
    if (!(step.minStep > 0.0 && step.minStep <= step.initialStep && step.initialStep <= step.maxStep))
        throw DomainError("step bounds must satisfy 0 < minStep <= initialStep <= maxStep");
}

ConvergenceError::ConvergenceError(const std::string& what, Configuration best, double bestResidual, int iterations)
    : Error(what), best_(std::move(best)), bestResidual_(bestResidual), iterations_(iterations) {}

Configuration normalizeSphere(const Configuration& q, const Masses& m) {
    Configuration out = projectToX(q, m);
    const double norm = massNormC0(out, m);
    if (!(norm > 0.0)) throw DegenerateError("all bodies coincide; cannot normalise to the unit sphere");
    out *= 1.0 / norm;
    return out;
}

Configuration fixedPointStep(const Configuration& q, const Masses& m, const PotentialParams& p) {
    Tangent g = gradU(q, m, p);
    for (int j = 0; j < q.n(); ++j) g.point(j) /= m[j];
    const double norm = massNormC0(g, m);
    if (!(norm > 0.0)) throw DegenerateError("mass-metric gradient of U vanishes");
    g *= -1.0 / norm;
    return g;
}

double variationalObjective(const Configuration& x, const Masses& m, const PotentialParams& p) {
    return fTilde(coboundary0(x), m, p) + centerOfMass(x, m).squaredNorm();
}

Configuration rescaleToLambda(const Configuration& q, const Masses& m, double targetLambda, const PotentialParams& p) {
    if (!(targetLambda < 0.0)) throw DomainError("target λ must be negative");
    const double current = lambdaOf(q, m, p).value;
    const double r = std::pow(current / targetLambda, 1.0 / (p.alpha() + 2.0));
    return r * q;
}

Configuration rescaleToLambda(const CCSolution& sol, double targetLambda, const PotentialParams& p) {
    return rescaleToLambda(sol.configuration, sol.masses, targetLambda, p);
}

namespace {

// Recomputes the residual on the unit-sphere representative and packages the
// solution; throws ConvergenceError if the independent check fails.
CCSolution finish(const Configuration& q, const Masses& m, const PotentialParams& p, const SolveSettings& s,
                  int iterations, Method method) {
    CCSolution sol;
    sol.configuration = normalizeSphere(q, m);
    sol.masses = m;
    const CcResidual res = ccResidual(sol.configuration, m, p);
    if (!(res.norm <= s.residualTolerance)) {
        std::ostringstream msg;
        msg << toString(method) << " solve stopped at residual " << res.norm << " above tolerance "
            << s.residualTolerance;
        throw ConvergenceError(msg.str(), sol.configuration, res.norm, iterations);
    }
    sol.lambda = res.lambda;
    sol.residualNorm = res.norm;
    sol.iterations = iterations;
    sol.method = method;
    annotate(sol, p);
    return sol;
}

Vector massVector(const Masses& m, int d) {
    Vector w(static_cast<Eigen::Index>(m.size()) * d);
    for (int j = 0; j < m.size(); ++j) w.segment(j * d, d).setConstant(m[j]);
    return w;
}

// Euclidean gradient of U + |.|^2_M, flat.
Vector variationalGradient(const Configuration& x, const Masses& m, const PotentialParams& p, const Vector& w) {
    Vector g = gradU(x, m, p).flat();
    g += 2.0 * w.cwiseProduct(x.flat());
    return g;
}

bool collides(const Configuration& x) {
    try {
        requireNoCollision(x);
        return false;
    } catch (const CollisionError&) {
        return true;
    }
}

// Armijo test; once the objective change drops to rounding level a step is
// accepted if it still reduces the gradient.
template <class GradientDecreases>
bool acceptDescent(double value, double current, double armijoTerm, GradientDecreases&& gradientDecreases) {
    if (value <= current + armijoTerm) return true;
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(current);
    return value <= current + noise && gradientDecreases();
}

Configuration startAtCriticalScale(const Configuration& q0, const Masses& m, const PotentialParams& p) {
    requireNoCollision(q0);
    const Configuration unit = normalizeSphere(q0, m);
    return rescaleToLambda(unit, m, -2.0, p);
}

}  // namespace

CCSolution solveFixedPoint(const Configuration& q0, const Masses& m, const PotentialParams& p,
                           const SolveSettings& s) {
    s.validate();
    requireNoCollision(q0);
    Configuration q = normalizeSphere(q0, m);
    double energy = potentialU(q, m, p);
    double residual = ccResidual(q, m, p).norm;
    double t = s.step.initialStep;
    int it = 0;
    for (; it < s.maxIterations && residual > s.residualTolerance; ++it) {
        const Configuration target = fixedPointStep(q, m, p);
        for (;;) {
            if (t < s.step.minStep) {
                std::ostringstream msg;
                msg << "fixed-point damping fell below " << s.step.minStep << " after " << it << " iterations";
                throw ConvergenceError(msg.str(), q, residual, it);
            }
            Configuration candidate = normalizeSphere((1.0 - t) * q + t * target, m);
            if (collides(candidate)) {
                t *= s.step.shrink;
                continue;
            }
            const double e = potentialU(candidate, m, p);
            // inside the rounding band the energy cannot arbitrate; ask the residual
            const double r = e < energy - 1e-14 * std::abs(energy) ? 0.0 : ccResidual(candidate, m, p).norm;
            if (e > energy + 1e-14 * std::abs(energy) || (r > 0.0 && r >= residual)) {
                t *= s.step.shrink;
                continue;
            }
            q = std::move(candidate);
            energy = e;
            break;
        }
        residual = ccResidual(q, m, p).norm;
        t = std::min(s.step.maxStep, t * s.step.grow);
    }
    if (residual > s.residualTolerance) {
        std::ostringstream msg;
        msg << "fixed-point iteration hit " << s.maxIterations << " iterations at residual " << residual;
        throw ConvergenceError(msg.str(), q, residual, it);
    }
    return finish(q, m, p, s, it, Method::FixedPoint);
}

CCSolution solveVariational(const Configuration& q0, const Masses& m, const PotentialParams& p,
                            const SolveSettings& s) {
    s.validate();
    const int d = q0.d();
    const int n = q0.n();
    const Vector w = massVector(m, d);
    const Vector wInvSqrt = w.cwiseSqrt().cwiseInverse();
    Configuration x = startAtCriticalScale(q0, m, p);
    double objective = variationalObjective(x, m, p);
    Vector g = variationalGradient(x, m, p, w);
    auto gradNorm = [&](const Vector& grad) { return std::sqrt(grad.dot(grad.cwiseQuotient(w))); };

    int it = 0;
    for (; it < s.maxIterations; ++it) {
        if (gradNorm(g) <= 1e-3 * s.residualTolerance) break;
        Matrix K = hessianU(x, m, p);
        K.diagonal() += 2.0 * w;
        const Matrix S = wInvSqrt.asDiagonal() * K * wInvSqrt.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
        Vector e = eig.eigenvalues().cwiseAbs();
        const double floor = 1e-8 * e.maxCoeff();
        for (Eigen::Index t = 0; t < e.size(); ++t) e(t) = std::max(e(t), floor);
        const Vector gy = wInvSqrt.cwiseProduct(g);
        const Vector dy = -(eig.eigenvectors() * (eig.eigenvectors().transpose() * gy).cwiseQuotient(e));
        const Vector dx = wInvSqrt.cwiseProduct(dy);
        const double slope = g.dot(dx);

        double a = 1.0;
        bool accepted = false;
        while (a >= s.step.minStep) {
            Configuration candidate = Configuration::fromFlat(x.flat() + a * dx, n, d);
            if (!collides(candidate)) {
                const double value = variationalObjective(candidate, m, p);
                if (acceptDescent(value, objective, s.step.armijo * a * slope,
                                  [&] { return gradNorm(variationalGradient(candidate, m, p, w)) < gradNorm(g); })) {
                    x = std::move(candidate);
                    objective = value;
                    accepted = true;
                    if (s.onStep) s.onStep(it, objective);
                    break;
                }
            }
            a *= s.step.shrink;
        }
        if (!accepted) break;  // no further decrease representable
        g = variationalGradient(x, m, p, w);
    }
    if (gradNorm(g) > s.residualTolerance) {
        std::ostringstream msg;
        msg << "variational solve stalled with gradient norm " << gradNorm(g);
        throw ConvergenceError(msg.str(), normalizeSphere(x, m), ccResidual(x, m, p).norm, it);
    }
    return finish(x, m, p, s, it, Method::Variational);
}

CCSolution solveNewton(const Configuration& q0, const Masses& m, const PotentialParams& p, const SolveSettings& s) {
    s.validate();
    const int d = q0.d();
    const int n = q0.n();
    const Vector w = massVector(m, d);
    const Vector wInvSqrt = w.cwiseSqrt().cwiseInverse();
    Configuration x = startAtCriticalScale(q0, m, p);
    // residual of the critical-point equation in metric-orthonormal coordinates
    auto field = [&](const Configuration& c) { return Vector(wInvSqrt.cwiseProduct(variationalGradient(c, m, p, w))); };
    Vector gy = field(x);
    double mu = -1.0;

    int it = 0;
    for (; it < s.maxIterations; ++it) {
        if (gy.norm() <= 1e-3 * s.residualTolerance) break;
        Matrix K = hessianU(x, m, p);
        K.diagonal() += 2.0 * w;
        const Matrix S = wInvSqrt.asDiagonal() * K * wInvSqrt.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
        const Vector& e = eig.eigenvalues();
        const double big = e.cwiseAbs2().maxCoeff();
        const double muFloor = 1e-16 * big;
        if (mu < 0.0) mu = 1e-6 * big;
        const Vector coeff = eig.eigenvectors().transpose() * gy;

        bool accepted = false;
        while (mu <= 1e12 * big) {
            const Vector filter = e.cwiseQuotient((e.cwiseAbs2().array() + mu).matrix());
            const Vector dy = -(eig.eigenvectors() * coeff.cwiseProduct(filter));
            Configuration candidate = Configuration::fromFlat(x.flat() + wInvSqrt.cwiseProduct(dy), n, d);
            if (!collides(candidate)) {
                Vector gNew = field(candidate);
                if (gNew.norm() < gy.norm()) {
                    x = std::move(candidate);
                    gy = std::move(gNew);
                    mu = std::max(mu / 3.0, muFloor);
                    accepted = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if (!accepted) break;
    }
    if (gy.norm() > s.residualTolerance) {
        std::ostringstream msg;
        msg << "Newton iteration stopped with gradient norm " << gy.norm() << " after " << it << " iterations";
        throw ConvergenceError(msg.str(), normalizeSphere(x, m), ccResidual(x, m, p).norm, it);
    }
    return finish(x, m, p, s, it, Method::Newton);
}

CCSolution solve(const Configuration& q0, const Masses& m, const PotentialParams& p, const SolveSettings& s) {
    switch (s.method) {
        case Method::FixedPoint: return solveFixedPoint(q0, m, p, s);
        case Method::Variational: return solveVariational(q0, m, p, s);
        case Method::Newton: return solveNewton(q0, m, p, s);
        case Method::Moulton: return solveMoulton(q0, m, p, s);
    }
    throw DomainError("unknown method");
}

// ------------------------------------------------------------ Moulton

namespace {

std::vector<int> orderOf(const Configuration& x) {
    std::vector<int> order(static_cast<std::size_t>(x.n()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return x.point(a)(0) < x.point(b)(0); });
    return order;
}

bool inChamber(const Configuration& x, const std::vector<int>& order) {
    for (std::size_t t = 1; t < order.size(); ++t)
        if (!(x.point(order[t - 1])(0) < x.point(order[t])(0))) return false;
    return !collides(x);
}

std::string orderingLabel(const std::vector<int>& order) {
    std::string label = "ordering ";
    for (std::size_t t = 0; t < order.size(); ++t) {
        if (t) label += "-";
        label += std::to_string(order[t] + 1);
    }
    return label;
}

}  // namespace

CCSolution solveMoulton(const Configuration& start, const Masses& m, const PotentialParams& p,
                        const SolveSettings& s) {
    s.validate();
    if (start.d() != 1) throw DimensionError("Moulton solve needs d = 1");
    const int n = start.n();
    const std::vector<int> order = orderOf(start);
    const Vector w = massVector(m, 1);
    Configuration x = startAtCriticalScale(start, m, p);
    double objective = variationalObjective(x, m, p);
    Vector g = variationalGradient(x, m, p, w);
    auto gradNorm = [&](const Vector& grad) { return std::sqrt(grad.dot(grad.cwiseQuotient(w))); };

    int it = 0;
    for (; it < s.maxIterations; ++it) {
        if (gradNorm(g) <= 1e-3 * s.residualTolerance) break;
        Matrix K = hessianU(x, m, p);
        K.diagonal() += 2.0 * w;
        // positive definite inside a chamber
        const Vector dx = -K.ldlt().solve(g);
        const double slope = g.dot(dx);
        double a = 1.0;
        bool accepted = false;
        while (a >= s.step.minStep) {
            Configuration candidate = Configuration::fromFlat(x.flat() + a * dx, n, 1);
            if (inChamber(candidate, order)) {
                const double value = variationalObjective(candidate, m, p);
                if (acceptDescent(value, objective, s.step.armijo * a * slope,
                                  [&] { return gradNorm(variationalGradient(candidate, m, p, w)) < gradNorm(g); })) {
                    x = std::move(candidate);
                    objective = value;
                    accepted = true;
                    if (s.onStep) s.onStep(it, objective);
                    break;
                }
            }
            a *= s.step.shrink;
        }
        if (!accepted) break;
        g = variationalGradient(x, m, p, w);
    }
    if (gradNorm(g) > s.residualTolerance) {
        std::ostringstream msg;
        msg << "Moulton solve for " << orderingLabel(order) << " stalled with gradient norm " << gradNorm(g);
        throw ConvergenceError(msg.str(), normalizeSphere(x, m), ccResidual(x, m, p).norm, it);
    }
    CCSolution sol = finish(x, m, p, s, it, Method::Moulton);
    sol.label = orderingLabel(order);
    return sol;
}

CCSolution solveMoulton(std::span<const int> ordering, const Masses& m, const PotentialParams& p,
                        const SolveSettings& s) {
    const int n = static_cast<int>(ordering.size());
    if (n != m.size()) throw DimensionError("ordering length does not match body count");
    std::vector<int> seen(ordering.begin(), ordering.end());
    std::sort(seen.begin(), seen.end());
    for (int t = 0; t < n; ++t)
        if (seen[static_cast<std::size_t>(t)] != t) throw DomainError("ordering is not a permutation of the bodies");
    Configuration start(n, 1);
    for (int t = 0; t < n; ++t) start.point(ordering[static_cast<std::size_t>(t)])(0) = t - 0.5 * (n - 1);
    return solveMoulton(start, m, p, s);
}

std::vector<std::vector<int>> moultonOrderings(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (perm.front() < perm.back()) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// ------------------------------------------------------------ multistart

Configuration randomStart(int n, int d, const Masses& m, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        Configuration q(n, d);
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < d; ++c) q.point(j)(c) = normal(rng);
        q = normalizeSphere(q, m);
        if (n < 2 || q.closestPair().distance >= 0.05 * q.diameter()) return q;
    }
}

double orbitDistance(const Configuration& a, const Configuration& b, const Masses& m, bool relabel) {
    if (a.n() != b.n() || a.d() != b.d()) throw DimensionError("configuration shapes differ");
    const Configuration ca = projectToX(a, m);
    const Configuration cb = projectToX(b, m);
    const int n = a.n();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const bool permute = relabel && n <= 8;
    double best = std::numeric_limits<double>::infinity();
    do {
        bool massPreserving = true;
        for (int j = 0; j < n && massPreserving; ++j) massPreserving = m[j] == m[perm[static_cast<std::size_t>(j)]];
        if (!massPreserving) continue;
        Matrix B(b.d(), n);
        for (int j = 0; j < n; ++j) B.col(j) = cb.point(perm[static_cast<std::size_t>(j)]);
        Matrix C = Matrix::Zero(a.d(), a.d());
        for (int j = 0; j < n; ++j) C += m[j] * ca.point(j) * B.col(j).transpose();
        Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Matrix R = svd.matrixU() * svd.matrixV().transpose();
        const Configuration diff(ca.matrix() - R * B);
        best = std::min(best, massNormC0(diff, m));
    } while (permute && std::next_permutation(perm.begin(), perm.end()));
    return best;
}

MultistartResult multistartSolve(int n, int d, const Masses& m, const PotentialParams& p, const SolveSettings& s,
                                 int starts) {
    if (starts < 1) throw DomainError("starts must be at least 1");
    if (m.size() != n) throw DimensionError("mass count does not match body count");
    std::mt19937_64 rng(s.rngSeed);
    MultistartResult result;
    for (int k = 0; k < starts; ++k) {
        const Configuration q0 = randomStart(n, d, m, rng);
        ++result.attempted;
        try {
            CCSolution sol = solve(q0, m, p, s);
            ++result.converged;
            const bool duplicate = std::any_of(result.solutions.begin(), result.solutions.end(), [&](const CCSolution& rep) {
                return orbitDistance(sol.configuration, rep.configuration, m, true) < kOrbitThreshold;
            });
            if (!duplicate) result.solutions.push_back(std::move(sol));
        } catch (const Error& e) {
            result.diagnostics.push_back("start " + std::to_string(k) + ": " + e.what());
        }
    }
    return result;
}

}  // namespace cocyc
