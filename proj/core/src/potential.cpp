#include "cocyc/potential.hpp"

#include "cocyc/errors.hpp"

#include <cmath>
#include <sstream>

namespace cocyc {

PotentialParams::PotentialParams(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        std::ostringstream msg;
        msg << "homogeneity exponent must be positive, got " << alpha;
        throw DomainError(msg.str());
    }
}

void requireNoCollision(const Configuration& q, double tol) {
    if (q.n() < 2) return;
    const auto closest = q.closestPair();
    const double threshold = tol * q.diameter();
    if (closest.distance == 0.0 || closest.distance <= threshold)
        throw CollisionError(closest.i, closest.j, closest.distance);
}

Vector psiGamma(const Vector& x, double gamma) {
    const double r = x.norm();
    if (r == 0.0) throw DomainError("Ψ_γ is undefined at the zero vector");
    return x / std::pow(r, gamma);
}

OneCochain psiGamma(const OneCochain& z, double gamma) {
    OneCochain out(z.n(), z.d());
    const int n = z.n();
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++p) {
            const double r = z.entry(p).norm();
            if (r == 0.0) throw CollisionError(i, j, 0.0);
            out.entry(p) = z.entry(p) / std::pow(r, gamma);
        }
    return out;
}

double potentialU(const Configuration& q, const Masses& m, const PotentialParams& p, double collisionTol) {
    if (m.size() != q.n()) throw DimensionError("mass count does not match body count");
    requireNoCollision(q, collisionTol);
    double sum = 0.0;
    for (int i = 0; i < q.n(); ++i)
        for (int j = i + 1; j < q.n(); ++j)
            sum += m[i] * m[j] / std::pow((q.point(i) - q.point(j)).norm(), p.alpha());
    return sum;
}

double fTilde(const OneCochain& Q, const Masses& m, const PotentialParams& p) {
    if (m.size() != Q.n()) throw DimensionError("mass count does not match body count");
    const int n = Q.n();
    double sum = 0.0;
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            const double r = Q.entry(idx).norm();
            if (r == 0.0) throw CollisionError(i, j, 0.0);
            sum += m[i] * m[j] * (std::pow(r, -p.alpha()) + r * r);
        }
    return sum;
}

Tangent gradU(const Configuration& q, const Masses& m, const PotentialParams& p, double collisionTol) {
    if (m.size() != q.n()) throw DimensionError("mass count does not match body count");
    requireNoCollision(q, collisionTol);
    const double a = p.alpha();
    Tangent g(q.n(), q.d());
    for (int i = 0; i < q.n(); ++i)
        for (int j = i + 1; j < q.n(); ++j) {
            const Vector x = q.point(i) - q.point(j);
            const Vector f = (-a * m[i] * m[j] / std::pow(x.norm(), a + 2.0)) * x;
            g.point(i) += f;
            g.point(j) -= f;
        }
    return g;
}

namespace {

// Euclidean Hessian of x ↦ |x|^{-α} on E.
Matrix pairHessian(const Vector& x, double a) {
    const double r = x.norm();
    const auto d = x.size();
    return -a * std::pow(r, -a - 2.0) * Matrix::Identity(d, d) +
           a * (a + 2.0) * std::pow(r, -a - 4.0) * (x * x.transpose());
}

}  // namespace

Matrix hessianU(const Configuration& q, const Masses& m, const PotentialParams& p, double collisionTol) {
    if (m.size() != q.n()) throw DimensionError("mass count does not match body count");
    requireNoCollision(q, collisionTol);
    const int n = q.n();
    const int d = q.d();
    Matrix H = Matrix::Zero(n * d, n * d);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Matrix B = m[i] * m[j] * pairHessian(q.point(i) - q.point(j), p.alpha());
            H.block(i * d, i * d, d, d) += B;
            H.block(j * d, j * d, d, d) += B;
            H.block(i * d, j * d, d, d) -= B;
            H.block(j * d, i * d, d, d) -= B;
        }
    return H;
}

Vector gradFTilde(const OneCochain& Q, const Masses& m, const PotentialParams& p) {
    if (m.size() != Q.n()) throw DimensionError("mass count does not match body count");
    const int n = Q.n();
    const int d = Q.d();
    const double a = p.alpha();
    Vector g(static_cast<Eigen::Index>(pairCount(n)) * d);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            const auto x = Q.entry(idx);
            const double r = x.norm();
            if (r == 0.0) throw CollisionError(i, j, 0.0);
            g.segment(idx * d, d) = m[i] * m[j] * (-a * std::pow(r, -a - 2.0) + 2.0) * x;
        }
    return g;
}

Matrix hessianFTilde(const OneCochain& Q, const Masses& m, const PotentialParams& p) {
    if (m.size() != Q.n()) throw DimensionError("mass count does not match body count");
    const int n = Q.n();
    const int d = Q.d();
    const int dim = pairCount(n) * d;
    Matrix H = Matrix::Zero(dim, dim);
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx) {
            const Vector x = Q.entry(idx);
            if (x.norm() == 0.0) throw CollisionError(i, j, 0.0);
            H.block(idx * d, idx * d, d, d) =
                m[i] * m[j] * (pairHessian(x, p.alpha()) + 2.0 * Matrix::Identity(d, d));
        }
    return H;
}

Lambda lambdaOf(const Configuration& q, const Masses& m, const PotentialParams& p, double collisionTol) {
    const Configuration centred = projectToX(q, m);
    const double u = potentialU(centred, m, p, collisionTol);
    const double norm2 = massInnerC0(centred, centred, m);
    if (!(norm2 > 0.0)) throw DegenerateError("configuration has zero mass-norm after centring");
    return {-p.alpha() * u / norm2};
}

CcResidual ccResidual(const Configuration& q, const Masses& m, const PotentialParams& p, double collisionTol) {
    const double lambda = lambdaOf(q, m, p, collisionTol).value;
    const OneCochain dq = coboundary0(q);
    const OneCochain scaled = (lambda / p.alpha()) * dq;
    OneCochain r = projectPm(psiGamma(dq, p.gamma()), m) + scaled;
    const double abs = massNormC1(r, m);
    const double ref = massNormC1(scaled, m);
    return {std::move(r), abs / ref, abs, lambda};
}

Tangent bodyResidual(const Configuration& q, const Masses& m, const PotentialParams& p, double collisionTol) {
    const Configuration centred = projectToX(q, m);
    const double lambda = lambdaOf(centred, m, p, collisionTol).value;
    Tangent r = gradU(centred, m, p, collisionTol);
    r *= -1.0;
    for (int j = 0; j < q.n(); ++j) r.point(j) += lambda * m[j] * centred.point(j);
    return r;
}

}  // namespace cocyc
