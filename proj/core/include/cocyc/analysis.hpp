#pragma once

// Hessians, spectra and Morse indices at central configurations, and the
// geometric verifiers built on the triple terms Q_ijk = Q_ij + Q_jk + Q_ki.

#include "cocyc/cochain.hpp"
#include "cocyc/potential.hpp"
#include "cocyc/solution.hpp"

#include <string>
#include <vector>

namespace cocyc {

enum class MetricContext { C0Full, C1Composed, SphereRestricted };

std::string toString(MetricContext context);

/// Self-adjoint operator w.r.t. a diagonal metric: v ↦ metric^{-1} form v.
/// `form` is the symmetric bilinear form in Euclidean coordinates.
struct SelfAdjointOperator {
    Matrix form;
    Vector metric;
    MetricContext context = MetricContext::C0Full;
};

struct SpectrumReport {
    std::vector<double> eigenvalues;  ///< ascending
    int morseIndex = 0;
    int nullity = 0;
    int positive = 0;
    double zeroThreshold = 0.0;
    MetricContext context = MetricContext::C0Full;
};

/// Default relative null-space threshold (times the largest |eigenvalue|).
inline constexpr double kRelativeZeroThreshold = 1e-8;

/// D^2 (U - (λ/2)|.|^2_M) at q on C^0. With λ = -2 this is the Hessian of U + |.|^2_M.
SelfAdjointOperator hessianF(const Configuration& q, const Masses& m, const PotentialParams& p, double lambda);

/// Hessian of fTilde ∘ P_m at a cocycle z, w.r.t. the C^1 mass-metric.
/// Throws DomainError if δ^1 z exceeds cocycleTol times the largest entry.
SelfAdjointOperator hessianComposed(const OneCochain& z, const Masses& m, const PotentialParams& p,
                                    double cocycleTol = 1e-10);

/// Hessian of U restricted to the inertia ellipsoid through q, represented on an
/// orthonormal basis of the tangent space (radial direction removed).
SelfAdjointOperator sphereRestrictedHessian(const Configuration& q, const Masses& m, const PotentialParams& p);

/// Eigenvalues of the operator via the metric-orthonormalised symmetric problem.
/// Throws DomainError if the form is asymmetric beyond 1e-10 (relative).
SpectrumReport spectrum(const SelfAdjointOperator& op, double relativeZero = kRelativeZeroThreshold);

struct RadialCheck {
    double expected;  ///< -λ(α+2)
    double measured;  ///< mass-metric Rayleigh quotient of hessianF along q - O
};

/// Compares the radial eigenvalue of hessianF(q, λ(q)) with -λ(α+2).
/// Works at whatever scale the configuration carries.
RadialCheck radialEigencheck(const CCSolution& sol, const PotentialParams& p);

struct CorrespondenceReport {
    bool matched = false;
    std::vector<double> fromFull;      ///< nonzero eigenvalues of H minus the translation block
    std::vector<double> fromComposed;  ///< nonzero eigenvalues of H̃
    std::vector<double> removedTranslation;
    double maxDeviation = 0.0;
    std::string diff;  ///< human-readable mismatch description, empty on success
};

/// Nonzero spectra of H = hessianF(q, -2) and H̃ = hessianComposed(δ^0 q) after
/// removing the d eigenvalues of H closest to 2. `q` must sit at the λ = -2
/// scale (throws DomainError otherwise; use rescaleToLambda first).
CorrespondenceReport spectraCorrespondence(const Configuration& q, const Masses& m, const PotentialParams& p,
                                           double relativeTol = 1e-7);

enum class TripleClass { ZeroEquilateral, ParallelToEdge, General };

std::string toString(TripleClass c);

struct TripleReport {
    int i = 0, j = 1, k = 2;
    Vector Qijk;
    double scale = 0.0;           ///< max(|Q_ij|, |Q_jk|, |Q_ki|)
    double norm = 0.0;            ///< |Q_ijk|
    double crossComponent = 0.0;  ///< part of Q_ijk orthogonal to q_ij
    TripleClass classification = TripleClass::General;
};

/// Q_ijk with Q_ab = Ψ_{α+2}(q_a - q_b). Collinear triples always classify as
/// ParallelToEdge; the equilateral test is meaningful for non-collinear ones.
TripleReport tripleQ(const Configuration& q, int i, int j, int k, const PotentialParams& p,
                     double tolerance = 1e-9);

struct GeometryTolerances {
    double rank = 1e-8;      ///< singular-value ratio for collinear / coplanar
    double spread = 1e-8;    ///< relative spread of distances or radii
    double offPlane = 1e-6;  ///< apex distance to the base plane, relative to diameter
};

struct Measurement {
    std::string name;
    double value;
};

struct GeometryReport {
    std::vector<std::string> tags;
    std::vector<Measurement> measurements;
    bool has(const std::string& tag) const;
    double measurement(const std::string& name) const;  ///< NaN when absent
};

/// Tags: collinear, planar, equilateral (all mutual distances equal),
/// cocircular (planar, n >= 4), apexEquidistant and cocircularBase (n - 1
/// coplanar bodies plus one apex off their plane).
GeometryReport classifyGeometry(const Configuration& q, const GeometryTolerances& tol = {});

struct CorollaryCheck {
    std::string name;
    bool applicable = false;
    bool passed = true;
    std::string detail;
};

/// Implications that every central configuration must satisfy:
///  - n = 3, non-collinear  =>  equilateral
///  - n >= 4, d >= 2, n - 1 bodies collinear  =>  all collinear
///  - n >= 4, d >= 3, n - 1 coplanar bodies and an apex  =>  apex equidistant, base cocircular
std::vector<CorollaryCheck> corollaryChecks(const Configuration& q, const GeometryTolerances& tol = {});

/// Fills classification tags, sphere-restricted spectrum and Morse index.
void annotate(CCSolution& sol, const PotentialParams& p);

}  // namespace cocyc
