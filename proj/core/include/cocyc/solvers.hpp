#pragma once

// Central-configuration solvers: damped fixed-point iteration of
// F(q) = -∇_M U / |∇_M U|_M on the unit inertia sphere, descent on
// U + |.|^2_M through cocycle coordinates, a saddle-capable Newton iteration,
// and convex solves for collinear (Moulton) configurations.

#include "cocyc/cochain.hpp"
#include "cocyc/errors.hpp"
#include "cocyc/potential.hpp"
#include "cocyc/solution.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace cocyc {

struct StepControl {
    double initialStep = 1.0;  ///< damping t for the fixed-point average
    double shrink = 0.5;
    double grow = 1.5;
    double maxStep = 2.0;      ///< t may over-relax up to here while steps keep succeeding
    double minStep = 1e-12;    ///< damping floor; reaching it is a failure
    double armijo = 1e-4;      ///< sufficient-decrease constant for line searches
};

struct SolveSettings {
    int maxIterations = 5000;
    double residualTolerance = 1e-11;
    StepControl step;
    std::uint64_t rngSeed = 1;
    Method method = Method::Newton;
    /// Called with (iteration, objective) after every accepted step of the
    /// variational and Moulton solves; may be empty.
    std::function<void(int, double)> onStep;

    /// Throws DomainError unless residualTolerance > 0 and maxIterations >= 1.
    void validate() const;
};

/// Raised when a solve does not reach its tolerance; carries the best iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, Configuration best, double bestResidual, int iterations);

    const Configuration& best() const noexcept { return best_; }
    double bestResidual() const noexcept { return bestResidual_; }
    int iterations() const noexcept { return iterations_; }

private:
    Configuration best_;
    double bestResidual_;
    int iterations_;
};

/// Centres q and rescales it to unit mass-norm. Throws DegenerateError.
Configuration normalizeSphere(const Configuration& q, const Masses& m);

/// F(q) = -∇_M U(q) / |∇_M U(q)|_M; fixed points are central configurations.
Configuration fixedPointStep(const Configuration& q, const Masses& m, const PotentialParams& p);

/// U(x) + |x|^2_M evaluated as fTilde(δ^0 x) + |centre of mass|^2.
double variationalObjective(const Configuration& x, const Masses& m, const PotentialParams& p);

/// Damped iteration q <- normalizeSphere((1-t) q + t F(q)) with backtracking on
/// collisions and increases of U.
CCSolution solveFixedPoint(const Configuration& q0, const Masses& m, const PotentialParams& p,
                           const SolveSettings& s);

/// Descent on U + |.|^2_M (Newton with eigenvalue shifting, Armijo backtracking);
/// converges to local minima. The objective never increases across accepted steps.
CCSolution solveVariational(const Configuration& q0, const Masses& m, const PotentialParams& p,
                            const SolveSettings& s);

/// Levenberg-Marquardt on ∇_M (U + |.|^2_M) = 0; converges to critical points
/// of any Morse index.
CCSolution solveNewton(const Configuration& q0, const Masses& m, const PotentialParams& p, const SolveSettings& s);

/// Dispatches on s.method.
CCSolution solve(const Configuration& q0, const Masses& m, const PotentialParams& p, const SolveSettings& s);

/// Unique collinear central configuration with bodies ordered left to right as
/// `ordering` (0-based body indices); d = 1.
CCSolution solveMoulton(std::span<const int> ordering, const Masses& m, const PotentialParams& p,
                        const SolveSettings& s);

/// Same, started from a given collision-free d = 1 configuration whose order
/// fixes the chamber.
CCSolution solveMoulton(const Configuration& start, const Masses& m, const PotentialParams& p,
                        const SolveSettings& s);

/// One ordering per chamber modulo reversal (first body index < last), n!/2 of them.
std::vector<std::vector<int>> moultonOrderings(int n);

/// Random start on the unit mass-sphere in X, rejecting near-collisions
/// (min distance < 0.05 diameter).
Configuration randomStart(int n, int d, const Masses& m, std::mt19937_64& rng);

/// Minimal mass-distance between two centred configurations over the diagonal
/// O(d) action (Procrustes) and, when `relabel` is set, over mass-preserving
/// permutations of the bodies (n <= 8).
double orbitDistance(const Configuration& a, const Configuration& b, const Masses& m, bool relabel);

inline constexpr double kOrbitThreshold = 1e-6;

struct MultistartResult {
    std::vector<CCSolution> solutions;  ///< one representative per orbit class, in start order
    std::vector<std::string> diagnostics;
    int converged = 0;
    int attempted = 0;
};

/// Solves from `starts` seeded random configurations and deduplicates orbits.
MultistartResult multistartSolve(int n, int d, const Masses& m, const PotentialParams& p, const SolveSettings& s,
                                 int starts);

/// r q with r chosen so that lambdaOf(r q) = targetLambda (< 0).
Configuration rescaleToLambda(const CCSolution& sol, double targetLambda, const PotentialParams& p);
Configuration rescaleToLambda(const Configuration& q, const Masses& m, double targetLambda, const PotentialParams& p);

}  // namespace cocyc
