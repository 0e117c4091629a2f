#include "cocyc/analysis.hpp"

#include "cocyc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cocyc {

std::string toString(MetricContext context) {
    switch (context) {
        case MetricContext::C0Full: return "C0Full";
        case MetricContext::C1Composed: return "C1Composed";
        case MetricContext::SphereRestricted: return "SphereRestricted";
    }
    return "unknown";
}

std::string toString(TripleClass c) {
    switch (c) {
        case TripleClass::ZeroEquilateral: return "zeroEquilateral";
        case TripleClass::ParallelToEdge: return "parallelToEdge";
        case TripleClass::General: return "general";
    }
    return "unknown";
}

namespace {

Vector flatMassMetric(const Masses& m, int d) {
    Vector w(static_cast<Eigen::Index>(m.size()) * d);
    for (int j = 0; j < m.size(); ++j) w.segment(j * d, d).setConstant(m[j]);
    return w;
}

Vector flatPairMetric(const Masses& m, int d) {
    const int n = m.size();
    Vector w(static_cast<Eigen::Index>(pairCount(n)) * d);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++p) w.segment(p * d, d).setConstant(m[i] * m[j]);
    return w;
}

// W^{-1/2} K W^{-1/2}: same eigenvalues as W^{-1} K, symmetric.
Matrix symmetrised(const SelfAdjointOperator& op) {
    const Vector s = op.metric.cwiseSqrt().cwiseInverse();
    return s.asDiagonal() * op.form * s.asDiagonal();
}

}  // namespace

SelfAdjointOperator hessianF(const Configuration& q, const Masses& m, const PotentialParams& p, double lambda) {
    const Vector metric = flatMassMetric(m, q.d());
    Matrix form = hessianU(q, m, p);
    form.diagonal() -= lambda * metric;
    return {std::move(form), metric, MetricContext::C0Full};
}

SelfAdjointOperator hessianComposed(const OneCochain& z, const Masses& m, const PotentialParams& p,
                                    double cocycleTol) {
    const int n = z.n();
    const int d = z.d();
    double scale = 0.0;
    for (int c = 0; c < pairCount(n); ++c) scale = std::max(scale, z.entry(c).norm());
    const double defect = coboundary1(z).maxNorm();
    if (defect > cocycleTol * scale) {
        std::ostringstream msg;
        msg << "hessianComposed needs a cocycle; |δ¹z| = " << defect << " (entry scale " << scale << ")";
        throw DomainError(msg.str());
    }
    const Matrix P = pmMatrix(n, m);
    Matrix Pfull = Matrix::Zero(P.rows() * d, P.cols() * d);
    for (Eigen::Index r = 0; r < P.rows(); ++r)
        for (Eigen::Index c = 0; c < P.cols(); ++c)
            if (P(r, c) != 0.0) Pfull.block(r * d, c * d, d, d).diagonal().setConstant(P(r, c));
    Matrix form = Pfull.transpose() * hessianFTilde(z, m, p) * Pfull;
    form = 0.5 * (form + form.transpose()).eval();
    return {std::move(form), flatPairMetric(m, d), MetricContext::C1Composed};
}

SelfAdjointOperator sphereRestrictedHessian(const Configuration& q, const Masses& m, const PotentialParams& p) {
    const Configuration centred = projectToX(q, m);
    const double lambda = lambdaOf(centred, m, p).value;
    const SelfAdjointOperator full = hessianF(centred, m, p, lambda);
    const Matrix S = symmetrised(full);
    // In metric-orthonormal coordinates the normal direction is M^{1/2} q.
    const Vector normal = (full.metric.cwiseSqrt().array() * centred.flat().array()).matrix().normalized();
    const auto dim = normal.size();
    Matrix basis(dim, dim);
    basis.col(0) = normal;
    basis.rightCols(dim - 1) = Matrix::Identity(dim, dim).leftCols(dim - 1);
    Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix Qfull = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix T = Qfull.rightCols(dim - 1);
    Matrix form = T.transpose() * S * T;
    form = 0.5 * (form + form.transpose()).eval();
    return {std::move(form), Vector::Ones(dim - 1), MetricContext::SphereRestricted};
}

SpectrumReport spectrum(const SelfAdjointOperator& op, double relativeZero) {
    const auto dim = op.form.rows();
    if (op.form.cols() != dim || op.metric.size() != dim) throw DimensionError("operator shape mismatch");
    if ((op.metric.array() <= 0.0).any()) throw DomainError("metric must be positive definite");
    const double scale = std::max(op.form.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const double asym = (op.form - op.form.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "operator is not symmetric: max asymmetry " << asym;
        throw DomainError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrised(op), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("eigenvalue solver failed");
    SpectrumReport report;
    report.context = op.context;
    report.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    double largest = 0.0;
    for (double ev : report.eigenvalues) largest = std::max(largest, std::abs(ev));
    report.zeroThreshold = relativeZero * largest;
    for (double ev : report.eigenvalues) {
        if (ev < -report.zeroThreshold)
            ++report.morseIndex;
        else if (ev > report.zeroThreshold)
            ++report.positive;
        else
            ++report.nullity;
    }
    return report;
}

RadialCheck radialEigencheck(const CCSolution& sol, const PotentialParams& p) {
    const Configuration q = projectToX(sol.configuration, sol.masses);
    const double lambda = lambdaOf(q, sol.masses, p).value;
    const SelfAdjointOperator H = hessianF(q, sol.masses, p, lambda);
    const Vector v = q.flat();
    const double num = v.dot(H.form * v);
    const double den = v.dot(H.metric.cwiseProduct(v));
    return {-lambda * (p.alpha() + 2.0), num / den};
}

CorrespondenceReport spectraCorrespondence(const Configuration& q, const Masses& m, const PotentialParams& p,
                                           double relativeTol) {
    const Configuration centred = projectToX(q, m);
    const double lambda = lambdaOf(centred, m, p).value;
    if (std::abs(lambda + 2.0) > 1e-8) {
        std::ostringstream msg;
        msg << "spectra correspondence is stated at the λ = -2 scale, got λ = " << lambda;
        throw DomainError(msg.str());
    }
    const SpectrumReport full = spectrum(hessianF(centred, m, p, -2.0));
    const SpectrumReport composed = spectrum(hessianComposed(coboundary0(centred), m, p));

    CorrespondenceReport report;
    std::vector<double> rest = full.eigenvalues;
    for (int t = 0; t < centred.d(); ++t) {
        auto it = std::min_element(rest.begin(), rest.end(),
                                   [](double a, double b) { return std::abs(a - 2.0) < std::abs(b - 2.0); });
        report.removedTranslation.push_back(*it);
        rest.erase(it);
    }
    // a single threshold for both sides so near-zero modes are treated alike
    const double zero = std::max(full.zeroThreshold, composed.zeroThreshold);
    for (double ev : rest)
        if (std::abs(ev) > zero) report.fromFull.push_back(ev);
    for (double ev : composed.eigenvalues)
        if (std::abs(ev) > zero) report.fromComposed.push_back(ev);

    std::ostringstream diff;
    if (report.fromFull.size() != report.fromComposed.size()) {
        diff << "nonzero counts differ: H has " << report.fromFull.size() << ", H~ has "
             << report.fromComposed.size();
    } else {
        for (std::size_t t = 0; t < report.fromFull.size(); ++t) {
            const double a = report.fromFull[t];
            const double b = report.fromComposed[t];
            const double dev = std::abs(a - b) / std::max(1.0, std::abs(a));
            report.maxDeviation = std::max(report.maxDeviation, dev);
            if (dev > relativeTol) diff << "eigenvalue " << t << ": H " << a << " vs H~ " << b << "; ";
        }
    }
    report.diff = diff.str();
    report.matched = report.diff.empty();
    return report;
}

TripleReport tripleQ(const Configuration& q, int i, int j, int k, const PotentialParams& p, double tolerance) {
    const int n = q.n();
    for (int b : {i, j, k})
        if (b < 0 || b >= n) throw IndexError("triple index out of range");
    if (i == j || j == k || i == k) throw IndexError("triple indices must be distinct");
    const Vector qij = q.point(i) - q.point(j);
    const Vector qjk = q.point(j) - q.point(k);
    const Vector qki = q.point(k) - q.point(i);
    if (qij.norm() == 0.0) throw CollisionError(i, j, 0.0);
    if (qjk.norm() == 0.0) throw CollisionError(j, k, 0.0);
    if (qki.norm() == 0.0) throw CollisionError(k, i, 0.0);
    const Vector Qij = psiGamma(qij, p.gamma());
    const Vector Qjk = psiGamma(qjk, p.gamma());
    const Vector Qki = psiGamma(qki, p.gamma());

    TripleReport report;
    report.i = i;
    report.j = j;
    report.k = k;
    report.Qijk = Qij + Qjk + Qki;
    report.scale = std::max({Qij.norm(), Qjk.norm(), Qki.norm()});
    report.norm = report.Qijk.norm();
    const Vector u = qij.normalized();
    report.crossComponent = (report.Qijk - report.Qijk.dot(u) * u).norm();
    if (report.norm <= tolerance * report.scale)
        report.classification = TripleClass::ZeroEquilateral;
    else if (report.crossComponent <= tolerance * report.scale)
        report.classification = TripleClass::ParallelToEdge;
    else
        report.classification = TripleClass::General;
    return report;
}

// ------------------------------------------------------------ geometry

bool GeometryReport::has(const std::string& tag) const {
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

double GeometryReport::measurement(const std::string& name) const {
    for (const auto& m : measurements)
        if (m.name == name) return m.value;
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Singular values of the mean-centred point matrix of the selected bodies,
// padded with zeros up to d.
Vector centredSingularValues(const Configuration& q, const std::vector<int>& bodies) {
    Matrix pts(q.d(), static_cast<Eigen::Index>(bodies.size()));
    for (std::size_t t = 0; t < bodies.size(); ++t) pts.col(static_cast<Eigen::Index>(t)) = q.point(bodies[t]);
    pts.colwise() -= pts.rowwise().mean();
    Eigen::JacobiSVD<Matrix> svd(pts);
    Vector s = Vector::Zero(q.d());
    s.head(svd.singularValues().size()) = svd.singularValues();
    return s;
}

int numericalRank(const Vector& singular, double tol) {
    if (singular.size() == 0 || singular(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index t = 0; t < singular.size(); ++t)
        if (singular(t) > tol * singular(0)) ++rank;
    return rank;
}

double relativeSpread(const std::vector<double>& values) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    return (*hi - *lo) / mean;
}

// Least-squares circle through coplanar points; relative spread of the radii.
double cocircularityDeviation(const Configuration& q, const std::vector<int>& bodies) {
    Matrix pts(q.d(), static_cast<Eigen::Index>(bodies.size()));
    for (std::size_t t = 0; t < bodies.size(); ++t) pts.col(static_cast<Eigen::Index>(t)) = q.point(bodies[t]);
    const Vector mean = pts.rowwise().mean();
    pts.colwise() -= mean;
    Matrix plane;
    if (q.d() == 1) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<Matrix> svd(pts, Eigen::ComputeThinU);
    plane = svd.matrixU().leftCols(2);
    const Matrix xy = plane.transpose() * pts;  // 2 x k
    const auto k = xy.cols();
    Matrix A(k, 3);
    Vector rhs(k);
    for (Eigen::Index t = 0; t < k; ++t) {
        A(t, 0) = 2.0 * xy(0, t);
        A(t, 1) = 2.0 * xy(1, t);
        A(t, 2) = 1.0;
        rhs(t) = xy.col(t).squaredNorm();
    }
    const Vector sol = A.colPivHouseholderQr().solve(rhs);
    const Eigen::Vector2d centre(sol(0), sol(1));
    std::vector<double> radii;
    for (Eigen::Index t = 0; t < k; ++t) radii.push_back((xy.col(t) - centre).norm());
    return relativeSpread(radii);
}

std::vector<double> pairwiseDistances(const Configuration& q) {
    std::vector<double> out;
    for (int i = 0; i < q.n(); ++i)
        for (int j = i + 1; j < q.n(); ++j) out.push_back((q.point(i) - q.point(j)).norm());
    return out;
}

struct Apex {
    int body = -1;
    double apexSpread = 0.0;
    double baseCocircularity = 0.0;
};

// Body k such that the others are coplanar and k is off their plane.
Apex findApex(const Configuration& q, const GeometryTolerances& tol) {
    Apex best;
    if (q.n() < 4 || q.d() < 3) return best;
    const double diam = q.diameter();
    for (int k = 0; k < q.n(); ++k) {
        std::vector<int> base;
        for (int j = 0; j < q.n(); ++j)
            if (j != k) base.push_back(j);
        const Vector s = centredSingularValues(q, base);
        if (numericalRank(s, tol.rank) != 2) continue;
        Matrix pts(q.d(), static_cast<Eigen::Index>(base.size()));
        for (std::size_t t = 0; t < base.size(); ++t) pts.col(static_cast<Eigen::Index>(t)) = q.point(base[t]);
        const Vector mean = pts.rowwise().mean();
        pts.colwise() -= mean;
        Eigen::JacobiSVD<Matrix> svd(pts, Eigen::ComputeFullU);
        const Vector normal = svd.matrixU().col(2);
        const double height = std::abs((q.point(k) - mean).dot(normal));
        if (height <= tol.offPlane * diam) continue;
        std::vector<double> dist;
        for (int j : base) dist.push_back((q.point(k) - q.point(j)).norm());
        best.body = k;
        best.apexSpread = relativeSpread(dist);
        best.baseCocircularity = cocircularityDeviation(q, base);
        return best;
    }
    return best;
}

}  // namespace

GeometryReport classifyGeometry(const Configuration& q, const GeometryTolerances& tol) {
    GeometryReport report;
    std::vector<int> all(static_cast<std::size_t>(q.n()));
    for (int j = 0; j < q.n(); ++j) all[static_cast<std::size_t>(j)] = j;
    const Vector s = centredSingularValues(q, all);
    const int rank = numericalRank(s, tol.rank);
    report.measurements.push_back({"rank", static_cast<double>(rank)});
    if (s.size() > 1) report.measurements.push_back({"collinearity", s(0) > 0 ? s(1) / s(0) : 0.0});
    if (s.size() > 2) report.measurements.push_back({"coplanarity", s(0) > 0 ? s(2) / s(0) : 0.0});
    if (rank <= 1) report.tags.push_back("collinear");
    if (rank <= 2) report.tags.push_back("planar");

    if (q.n() >= 3) {
        const double spread = relativeSpread(pairwiseDistances(q));
        report.measurements.push_back({"distanceSpread", spread});
        if (spread <= tol.spread && rank >= 2) report.tags.push_back("equilateral");
    }
    if (q.n() >= 4 && rank == 2) {
        const double dev = cocircularityDeviation(q, all);
        report.measurements.push_back({"cocircularity", dev});
        if (dev <= tol.spread) report.tags.push_back("cocircular");
    }
    const Apex apex = findApex(q, tol);
    if (apex.body >= 0) {
        report.measurements.push_back({"apexBody", static_cast<double>(apex.body)});
        report.measurements.push_back({"apexSpread", apex.apexSpread});
        report.measurements.push_back({"baseCocircularity", apex.baseCocircularity});
        if (apex.apexSpread <= tol.spread) report.tags.push_back("apexEquidistant");
        if (apex.baseCocircularity <= tol.spread) report.tags.push_back("cocircularBase");
    }
    return report;
}

std::vector<CorollaryCheck> corollaryChecks(const Configuration& q, const GeometryTolerances& tol) {
    std::vector<CorollaryCheck> out;
    const GeometryReport geo = classifyGeometry(q, tol);
    const bool collinear = geo.has("collinear");

    {
        CorollaryCheck c;
        c.name = "three bodies: non-collinear implies equilateral";
        c.applicable = q.n() == 3 && q.d() >= 2 && !collinear;
        if (c.applicable) {
            c.passed = geo.has("equilateral");
            std::ostringstream msg;
            msg << "distance spread " << geo.measurement("distanceSpread");
            c.detail = msg.str();
        }
        out.push_back(c);
    }
    {
        CorollaryCheck c;
        c.name = "n-1 collinear bodies imply a collinear configuration";
        if (q.n() >= 4 && q.d() >= 2) {
            for (int k = 0; k < q.n() && !c.applicable; ++k) {
                std::vector<int> rest;
                for (int j = 0; j < q.n(); ++j)
                    if (j != k) rest.push_back(j);
                if (numericalRank(centredSingularValues(q, rest), tol.rank) <= 1) {
                    c.applicable = true;
                    c.detail = "bodies other than " + std::to_string(k + 1) + " are collinear";
                }
            }
            if (c.applicable) c.passed = collinear;
        }
        out.push_back(c);
    }
    {
        CorollaryCheck c;
        c.name = "n-1 coplanar bodies and an apex: apex equidistant, base cocircular";
        const Apex apex = findApex(q, tol);
        c.applicable = apex.body >= 0;
        if (c.applicable) {
            c.passed = apex.apexSpread <= tol.spread && apex.baseCocircularity <= tol.spread;
            std::ostringstream msg;
            msg << "apex " << apex.body + 1 << ", distance spread " << apex.apexSpread << ", base cocircularity "
                << apex.baseCocircularity;
            c.detail = msg.str();
        }
        out.push_back(c);
    }
    return out;
}

void annotate(CCSolution& sol, const PotentialParams& p) {
    sol.classification = classifyGeometry(sol.configuration).tags;
    const SpectrumReport report = spectrum(sphereRestrictedHessian(sol.configuration, sol.masses, p));
    sol.spectrum = report.eigenvalues;
    sol.morseIndex = report.morseIndex;
}

}  // namespace cocyc
