#include "cocyc/cochain.hpp"

#include "cocyc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace cocyc {

CollisionError::CollisionError(int i, int j, double distance)
    : Error("collision between bodies " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
            " (distance " + std::to_string(distance) + ")"),
      first_(i),
      second_(j),
      distance_(distance) {}

int pairIndex(int i, int j, int n) {
    if (i < 0 || j >= n || i >= j) {
        std::ostringstream msg;
        msg << "invalid pair (" << i << ", " << j << ") for n = " << n;
        throw IndexError(msg.str());
    }
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

int tripleIndex(int i, int j, int k, int n) {
    if (i < 0 || k >= n || i >= j || j >= k) {
        std::ostringstream msg;
        msg << "invalid triple (" << i << ", " << j << ", " << k << ") for n = " << n;
        throw IndexError(msg.str());
    }
    int index = 0;
    for (int a = 0; a < i; ++a) {
        const int rest = n - 1 - a;
        index += rest * (rest - 1) / 2;
    }
    for (int b = i + 1; b < j; ++b) index += n - 1 - b;
    return index + (k - j - 1);
}

// ---------------------------------------------------------------- Masses

Masses::Masses(std::span<const double> raw) {
    if (raw.empty()) throw DomainError("mass list is empty");
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (!std::isfinite(raw[j]) || raw[j] <= 0.0) {
            std::ostringstream msg;
            msg << "mass " << j + 1 << " must be positive and finite, got " << raw[j];
            throw DomainError(msg.str());
        }
    }
    scale_ = std::accumulate(raw.begin(), raw.end(), 0.0);
    values_.reserve(raw.size());
    for (double v : raw) values_.push_back(v / scale_);
}

Masses::Masses(std::initializer_list<double> raw)
    : Masses(std::span<const double>(raw.begin(), raw.size())) {}

Masses Masses::equal(int n) {
    if (n < 1) throw DomainError("body count must be positive");
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    return Masses(ones);
}

bool Masses::allEqual() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == values_.front(); });
}

// --------------------------------------------------------- Configuration

Configuration::Configuration(int n, int d) : points_(Matrix::Zero(d, n)) {
    if (n < 1 || d < 1) throw DimensionError("configuration needs n >= 1 and d >= 1");
}

Configuration::Configuration(Matrix points) : points_(std::move(points)) {}

Configuration Configuration::fromPoints(const std::vector<std::vector<double>>& points) {
    if (points.empty() || points.front().empty())
        throw DimensionError("configuration needs at least one body with d >= 1");
    const auto d = points.front().size();
    Configuration q(static_cast<int>(points.size()), static_cast<int>(d));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != d) {
            std::ostringstream msg;
            msg << "body " << j + 1 << " has " << points[j].size() << " coordinates, expected " << d;
            throw DimensionError(msg.str());
        }
        for (std::size_t c = 0; c < d; ++c) q.points_(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) = points[j][c];
    }
    return q;
}

Configuration Configuration::fromFlat(const Vector& flat, int n, int d) {
    if (flat.size() != static_cast<Eigen::Index>(n) * d) throw DimensionError("flat vector has wrong length");
    return Configuration(Eigen::Map<const Matrix>(flat.data(), d, n));
}

std::vector<std::vector<double>> Configuration::toPoints() const {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(n()));
    for (int j = 0; j < n(); ++j) out[static_cast<std::size_t>(j)].assign(points_.col(j).data(), points_.col(j).data() + d());
    return out;
}

double Configuration::diameter() const {
    double best = 0.0;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j) best = std::max(best, (points_.col(i) - points_.col(j)).norm());
    return best;
}

Configuration::ClosestPair Configuration::closestPair() const {
    ClosestPair best{0, 1, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j) {
            const double dist = (points_.col(i) - points_.col(j)).norm();
            if (dist < best.distance) best = {i, j, dist};
        }
    return best;
}

Configuration& Configuration::operator+=(const Configuration& other) {
    if (other.n() != n() || other.d() != d()) throw DimensionError("configuration shapes differ");
    points_ += other.points_;
    return *this;
}

Configuration& Configuration::operator-=(const Configuration& other) {
    if (other.n() != n() || other.d() != d()) throw DimensionError("configuration shapes differ");
    points_ -= other.points_;
    return *this;
}

Configuration& Configuration::operator*=(double s) {
    points_ *= s;
    return *this;
}

bool Configuration::operator==(const Configuration& other) const {
    return n() == other.n() && d() == other.d() && points_ == other.points_;
}

// ------------------------------------------------------------ OneCochain

OneCochain::OneCochain(int n, int d) : n_(n), entries_(Matrix::Zero(d, pairCount(n))) {
    if (n < 2 || d < 1) throw DimensionError("1-cochain needs n >= 2 and d >= 1");
}

OneCochain::OneCochain(int n, Matrix entries) : n_(n), entries_(std::move(entries)) {
    if (n < 2 || entries_.cols() != pairCount(n)) throw DimensionError("1-cochain entry count must be C(n,2)");
}

Vector OneCochain::at(int i, int j) const {
    if (i == j) {
        if (i < 0 || i >= n_) throw IndexError("body index out of range");
        return Vector::Zero(d());
    }
    if (i < j) return entries_.col(pairIndex(i, j, n_));
    return -entries_.col(pairIndex(j, i, n_));
}

void OneCochain::set(int i, int j, const Vector& value) {
    if (value.size() != d()) throw DimensionError("entry has wrong dimension");
    if (i < j)
        entries_.col(pairIndex(i, j, n_)) = value;
    else
        entries_.col(pairIndex(j, i, n_)) = -value;
}

OneCochain OneCochain::fromFlat(const Vector& flat, int n, int d) {
    if (flat.size() != static_cast<Eigen::Index>(pairCount(n)) * d) throw DimensionError("flat vector has wrong length");
    return OneCochain(n, Matrix(Eigen::Map<const Matrix>(flat.data(), d, pairCount(n))));
}

OneCochain& OneCochain::operator+=(const OneCochain& other) {
    if (other.n_ != n_ || other.d() != d()) throw DimensionError("cochain shapes differ");
    entries_ += other.entries_;
    return *this;
}

OneCochain& OneCochain::operator-=(const OneCochain& other) {
    if (other.n_ != n_ || other.d() != d()) throw DimensionError("cochain shapes differ");
    entries_ -= other.entries_;
    return *this;
}

OneCochain& OneCochain::operator*=(double s) {
    entries_ *= s;
    return *this;
}

// ------------------------------------------------------------ TwoCochain

TwoCochain::TwoCochain(int n, int d) : n_(n), entries_(Matrix::Zero(d, tripleCount(n))) {
    if (n < 2 || d < 1) throw DimensionError("2-cochain needs n >= 2 and d >= 1");
}

Vector TwoCochain::at(int i, int j, int k) const {
    if (i == j || j == k || i == k) return Vector::Zero(d());
    int idx[3] = {i, j, k};
    int sign = 1;
    // bubble sort of three entries, tracking the permutation sign
    for (int pass = 0; pass < 2; ++pass)
        for (int a = 0; a < 2 - pass; ++a)
            if (idx[a] > idx[a + 1]) {
                std::swap(idx[a], idx[a + 1]);
                sign = -sign;
            }
    return sign * entries_.col(tripleIndex(idx[0], idx[1], idx[2], n_));
}

double TwoCochain::maxNorm() const {
    double best = 0.0;
    for (Eigen::Index t = 0; t < entries_.cols(); ++t) best = std::max(best, entries_.col(t).norm());
    return best;
}

// ------------------------------------------------------------ operators

OneCochain coboundary0(const Configuration& q) {
    const int n = q.n();
    OneCochain z(n, q.d());
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) z.entry(p++) = q.point(i) - q.point(j);
    return z;
}

TwoCochain coboundary1(const OneCochain& z) {
    const int n = z.n();
    TwoCochain out(n, z.d());
    int t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                out.entry(t++) = z.entry(pairIndex(i, j, n)) + z.entry(pairIndex(j, k, n)) - z.entry(pairIndex(i, k, n));
    return out;
}

namespace {

void requireShape(const Masses& m, int n, int da, int db) {
    if (m.size() != n) throw DimensionError("mass count does not match body count");
    if (da != db) throw DimensionError("ambient dimensions differ");
}

}  // namespace

double massInnerC0(const Tangent& v, const Tangent& w, const Masses& m) {
    if (v.n() != w.n()) throw DimensionError("body counts differ");
    requireShape(m, v.n(), v.d(), w.d());
    double sum = 0.0;
    for (int j = 0; j < v.n(); ++j) sum += m[j] * v.point(j).dot(w.point(j));
    return sum;
}

double massNormC0(const Tangent& v, const Masses& m) { return std::sqrt(massInnerC0(v, v, m)); }

double massInnerC1(const OneCochain& v, const OneCochain& w, const Masses& m) {
    if (v.n() != w.n()) throw DimensionError("body counts differ");
    requireShape(m, v.n(), v.d(), w.d());
    const int n = v.n();
    double sum = 0.0;
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++p) sum += m[i] * m[j] * v.entry(p).dot(w.entry(p));
    return sum;
}

double massNormC1(const OneCochain& v, const Masses& m) { return std::sqrt(massInnerC1(v, v, m)); }

OneCochain projectPm(const OneCochain& Q, const Masses& m) {
    const int n = Q.n();
    if (m.size() != n) throw DimensionError("mass count does not match body count");
    // With Σ m_k = 1 the triple-sum collapses to a coboundary:
    // (P_m Q)_ij = y_i - y_j where y_i = Σ_k m_k Q_ik.
    Matrix y = Matrix::Zero(Q.d(), n);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k, ++p) {
            y.col(i) += m[k] * Q.entry(p);
            y.col(k) -= m[i] * Q.entry(p);
        }
    return coboundary0(Configuration(std::move(y)));
}

Matrix pmMatrix(int n, const Masses& m) {
    if (n < 2) throw DimensionError("P_m needs n >= 2");
    if (m.size() != n) throw DimensionError("mass count does not match body count");
    const int dim = pairCount(n);
    Matrix P = Matrix::Zero(dim, dim);
    // coefficient of the ordered access Q_ab in row r
    auto add = [&](int row, int a, int b, double c) {
        if (a < b)
            P(row, pairIndex(a, b, n)) += c;
        else
            P(row, pairIndex(b, a, n)) -= c;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int row = pairIndex(i, j, n);
            // 1 - Σ_{k∉{i,j}} m_k, written as m_i + m_j under unit total mass
            P(row, row) += m[i] + m[j];
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                add(row, i, k, m[k]);
                add(row, k, j, m[k]);
            }
        }
    return P;
}

Vector centerOfMass(const Configuration& q, const Masses& m) {
    if (m.size() != q.n()) throw DimensionError("mass count does not match body count");
    Vector c = Vector::Zero(q.d());
    for (int j = 0; j < q.n(); ++j) c += m[j] * q.point(j);
    return c;
}

Configuration projectToX(const Configuration& q, const Masses& m) {
    Configuration out = q;
    out.matrix().colwise() -= centerOfMass(q, m);
    return out;
}

}  // namespace cocyc
