#pragma once

// Homogeneous potential U(q) = Σ_{i<j} m_i m_j / |q_i - q_j|^α, its cochain
// counterpart and the central-configuration residual in cocycle form.

#include "cocyc/cochain.hpp"

namespace cocyc {

/// Homogeneity exponent α > 0 together with γ = α + 2 and γ̂ = γ / (γ - 1).
class PotentialParams {
public:
    explicit PotentialParams(double alpha);

    double alpha() const noexcept { return alpha_; }
    double gamma() const noexcept { return alpha_ + 2.0; }
    double gammaHat() const noexcept { return gamma() / (gamma() - 1.0); }

private:
    double alpha_;
};

/// Proportionality constant of a central configuration; negative off collisions.
struct Lambda {
    double value;
};

/// Default collision threshold, relative to the configuration diameter.
inline constexpr double kCollisionTolerance = 1e-9;

/// Throws CollisionError when two bodies are closer than tol * diameter
/// (or coincide exactly).
void requireNoCollision(const Configuration& q, double tol = kCollisionTolerance);

/// Ψ_γ(x) = x / |x|^γ. Throws DomainError on the zero vector.
Vector psiGamma(const Vector& x, double gamma);

/// Ψ_γ applied to every entry of a 1-cochain. Throws CollisionError on a zero entry.
OneCochain psiGamma(const OneCochain& z, double gamma);

double potentialU(const Configuration& q, const Masses& m, const PotentialParams& p,
                  double collisionTol = kCollisionTolerance);

/// Σ_{i<j} m_i m_j (|Q_ij|^{-α} + |Q_ij|^2).
double fTilde(const OneCochain& Q, const Masses& m, const PotentialParams& p);

/// Euclidean gradient ∂U/∂q_j (divide body j by m_j for the mass-metric gradient).
Tangent gradU(const Configuration& q, const Masses& m, const PotentialParams& p,
              double collisionTol = kCollisionTolerance);

/// Euclidean Hessian of U, (n d) x (n d) in the flat body-major ordering.
Matrix hessianU(const Configuration& q, const Masses& m, const PotentialParams& p,
                double collisionTol = kCollisionTolerance);

/// Euclidean gradient of fTilde on C^1 (flat pair-major ordering).
Vector gradFTilde(const OneCochain& Q, const Masses& m, const PotentialParams& p);

/// Euclidean Hessian of fTilde on C^1; block diagonal over pairs.
Matrix hessianFTilde(const OneCochain& Q, const Masses& m, const PotentialParams& p);

/// λ = -α U(q) / |q|^2_M after moving the mass-centre to the origin.
/// Throws DegenerateError when the centred configuration has zero norm.
Lambda lambdaOf(const Configuration& q, const Masses& m, const PotentialParams& p,
                double collisionTol = kCollisionTolerance);

struct CcResidual {
    OneCochain residual;  ///< P_m Ψ_{α+2}(δ^0 q) + (λ/α) δ^0 q
    double norm;          ///< |residual|_M / |(λ/α) δ^0 q|_M, scale free
    double absoluteNorm;  ///< |residual|_M
    double lambda;
};

/// Residual of -(λ/α) δ^0 q = P_m Ψ_{α+2}(δ^0 q); vanishes exactly at central
/// configurations.
CcResidual ccResidual(const Configuration& q, const Masses& m, const PotentialParams& p,
                      double collisionTol = kCollisionTolerance);

/// Per-body residual λ m_j q_j - ∂U/∂q_j of the classical equations, evaluated
/// on the centred configuration with λ = lambdaOf(q).
///
/// With r the cocycle residual above and ρ the centred 0-cochain with
/// δ^0 ρ = r, body_j = α m_j ρ_j, hence |body_j| <= α sqrt(m_j) |r|_M.
Tangent bodyResidual(const Configuration& q, const Masses& m, const PotentialParams& p,
                     double collisionTol = kCollisionTolerance);

}  // namespace cocyc
