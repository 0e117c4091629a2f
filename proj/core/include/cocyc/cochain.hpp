#pragma once

// Simplicial cochains on the full simplex with n vertices and coefficients in
// E = R^d, the coboundaries between them, mass-metrics and the projection P_m
// of C^1 onto the 1-cocycles.
//
// Body indices are 0-based throughout the library. Pairs (i, j) with i < j and
// triples (i, j, k) with i < j < k are stored in lexicographic order.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace cocyc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Number of unordered pairs, C(n, 2).
constexpr int pairCount(int n) noexcept { return n * (n - 1) / 2; }

/// Number of unordered triples, C(n, 3).
constexpr int tripleCount(int n) noexcept { return n * (n - 1) * (n - 2) / 6; }

/// Lexicographic position of the pair (i, j), 0 <= i < j < n.
/// Throws IndexError otherwise.
int pairIndex(int i, int j, int n);

/// Lexicographic position of the triple (i, j, k), 0 <= i < j < k < n.
int tripleIndex(int i, int j, int k, int n);

/// Positive body masses, normalised to unit total on construction.
class Masses {
public:
    /// Normalises `raw`; throws DomainError on an empty list or a
    /// non-positive / non-finite entry (the message names the entry).
    explicit Masses(std::span<const double> raw);
    Masses(std::initializer_list<double> raw);

    static Masses equal(int n);

    int size() const noexcept { return static_cast<int>(values_.size()); }
    double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Sum of the masses before normalisation.
    double scale() const noexcept { return scale_; }

    /// True when every mass equals the first one exactly.
    bool allEqual() const noexcept;

    bool operator==(const Masses&) const = default;

private:
    std::vector<double> values_;
    double scale_ = 1.0;
};

/// An element of C^0: one point of E per body. Also used for tangent vectors
/// (gradients, displacements). Stored as a d x n matrix, one column per body,
/// so the flat coordinate of (body j, component c) is j * d + c.
class Configuration {
public:
    Configuration() = default;
    Configuration(int n, int d);
    explicit Configuration(Matrix points);

    /// Builds from per-body coordinate lists; throws DimensionError on ragged input.
    static Configuration fromPoints(const std::vector<std::vector<double>>& points);

    int n() const noexcept { return static_cast<int>(points_.cols()); }
    int d() const noexcept { return static_cast<int>(points_.rows()); }

    auto point(int j) { return points_.col(j); }
    auto point(int j) const { return points_.col(j); }

    Matrix& matrix() noexcept { return points_; }
    const Matrix& matrix() const noexcept { return points_; }

    Eigen::Map<Vector> flat() { return {points_.data(), points_.size()}; }
    Eigen::Map<const Vector> flat() const { return {points_.data(), points_.size()}; }

    static Configuration fromFlat(const Vector& flat, int n, int d);

    std::vector<std::vector<double>> toPoints() const;

    /// Largest pairwise Euclidean distance.
    double diameter() const;
    /// Smallest pairwise distance together with the pair realising it.
    struct ClosestPair {
        int i = 0;
        int j = 1;
        double distance = 0.0;
    };
    ClosestPair closestPair() const;

    Configuration& operator+=(const Configuration& other);
    Configuration& operator-=(const Configuration& other);
    Configuration& operator*=(double s);
    friend Configuration operator+(Configuration a, const Configuration& b) { return a += b; }
    friend Configuration operator-(Configuration a, const Configuration& b) { return a -= b; }
    friend Configuration operator*(double s, Configuration a) { return a *= s; }

    bool operator==(const Configuration& other) const;

private:
    Matrix points_;
};

using Tangent = Configuration;

/// An element of C^1 stored at i < j; entries for i > j are read as the
/// negation and diagonal reads are zero.
class OneCochain {
public:
    OneCochain() = default;
    OneCochain(int n, int d);
    OneCochain(int n, Matrix entries);

    int n() const noexcept { return n_; }
    int d() const noexcept { return static_cast<int>(entries_.rows()); }

    /// Skew-symmetric read for any ordered pair.
    Vector at(int i, int j) const;

    /// Stored column for the lexicographic pair index p.
    auto entry(int p) { return entries_.col(p); }
    auto entry(int p) const { return entries_.col(p); }

    /// Writes the i < j entry (or its negation when i > j).
    void set(int i, int j, const Vector& value);

    Matrix& matrix() noexcept { return entries_; }
    const Matrix& matrix() const noexcept { return entries_; }

    Eigen::Map<Vector> flat() { return {entries_.data(), entries_.size()}; }
    Eigen::Map<const Vector> flat() const { return {entries_.data(), entries_.size()}; }

    static OneCochain fromFlat(const Vector& flat, int n, int d);

    OneCochain& operator+=(const OneCochain& other);
    OneCochain& operator-=(const OneCochain& other);
    OneCochain& operator*=(double s);
    friend OneCochain operator+(OneCochain a, const OneCochain& b) { return a += b; }
    friend OneCochain operator-(OneCochain a, const OneCochain& b) { return a -= b; }
    friend OneCochain operator*(double s, OneCochain a) { return a *= s; }

private:
    int n_ = 0;
    Matrix entries_;
};

/// An element of C^2 stored at i < j < k; reads at other orderings carry the
/// sign of the sorting permutation, and reads with a repeated index are zero.
class TwoCochain {
public:
    TwoCochain() = default;
    TwoCochain(int n, int d);

    int n() const noexcept { return n_; }
    int d() const noexcept { return static_cast<int>(entries_.rows()); }

    Vector at(int i, int j, int k) const;
    auto entry(int t) { return entries_.col(t); }
    auto entry(int t) const { return entries_.col(t); }

    const Matrix& matrix() const noexcept { return entries_; }

    /// Largest Euclidean norm over the stored entries.
    double maxNorm() const;

private:
    int n_ = 0;
    Matrix entries_;
};

/// (δ^0 q)_ij = q_i - q_j.
OneCochain coboundary0(const Configuration& q);

/// (δ^1 z)_ijk = z_ij + z_jk + z_ki.
TwoCochain coboundary1(const OneCochain& z);

/// Σ_j m_j v_j · w_j.
double massInnerC0(const Tangent& v, const Tangent& w, const Masses& m);
double massNormC0(const Tangent& v, const Masses& m);

/// Σ_{i<j} m_i m_j v_ij · w_ij.
double massInnerC1(const OneCochain& v, const OneCochain& w, const Masses& m);
double massNormC1(const OneCochain& v, const Masses& m);

/// Orthogonal (in the C^1 mass-metric) projection of C^1 onto Z^1:
/// (P_m Q)_ij = Σ_{k∉{i,j}} m_k (Q_ik + Q_kj + Q_ji) + Q_ij.
OneCochain projectPm(const OneCochain& Q, const Masses& m);

/// Matrix of P_m acting on one coordinate of E, rows and columns in
/// lexicographic pair order. Built entry by entry from the triple-sum formula.
Matrix pmMatrix(int n, const Masses& m);

/// Σ_j m_j q_j (masses are normalised).
Vector centerOfMass(const Configuration& q, const Masses& m);

/// Translates q so that its mass-centre is the origin.
Configuration projectToX(const Configuration& q, const Masses& m);

}  // namespace cocyc
